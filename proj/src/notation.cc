// Copyright 2026 The IPIS Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipis/notation.h"

#include <algorithm>

#include "ipis/errors.h"
#include "ipis/unicode.h"

namespace ipis {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

RawToken Unparseable(std::string_view token, const char* reason) {
  return RawToken{std::string(token), reason};
}

SegmentNode ParseStar(std::string_view token, std::size_t star) {
  if (star + 1 == token.size()) {
    return Unparseable(token, "asterisk in final position");
  }
  if (star == 0) return Unparseable(token, "empty root before asterisk");
  const std::string_view root = token.substr(0, star);
  if (root.find('/') != std::string_view::npos) {
    return Unparseable(token, "slash before asterisk");
  }
  const std::string_view rest = token.substr(star + 1);
  const std::size_t slash = rest.find('/');
  if (slash == std::string_view::npos) {
    return StarForm{std::string(root), "", std::string(rest)};
  }
  if (rest.find('/', slash + 1) != std::string_view::npos) {
    return Unparseable(token, "more than one slash after asterisk");
  }
  const std::string_view masc = rest.substr(0, slash);
  const std::string_view fem = rest.substr(slash + 1);
  if (masc.empty()) return Unparseable(token, "empty masculine suffix before slash");
  if (fem.empty()) return Unparseable(token, "empty feminine suffix");
  return StarForm{std::string(root), std::string(masc), std::string(fem)};
}

}  // namespace

SegmentNode ParseToken(std::string_view token) {
  const auto stars = std::count(token.begin(), token.end(), '*');
  if (stars > 1) return Unparseable(token, "more than one asterisk");
  if (stars == 1) return ParseStar(token, token.find('*'));

  const std::size_t slash = token.find('/');
  if (slash == std::string_view::npos) return PlainWord{std::string(token)};

  // Dates, paths and fractions stay plain words.
  const std::string_view left = token.substr(0, slash);
  const std::string_view right = token.substr(slash + 1);
  if (right.find('/') != std::string_view::npos ||
      !unicode::IsAlphabetic(left) || !unicode::IsAlphabetic(right)) {
    return PlainWord{std::string(token)};
  }
  return SlashPair{std::string(left), std::string(right)};
}

std::vector<std::string> Expand(const SegmentNode& node) {
  return std::visit(
      Overloaded{
          [](const PlainWord& n) { return std::vector<std::string>{n.word}; },
          [](const StarForm& n) {
            return std::vector<std::string>{n.root + n.masc_suffix,
                                            n.root + n.fem_suffix};
          },
          [](const SlashPair& n) {
            return std::vector<std::string>{n.left, n.right};
          },
          [](const RawToken& n) { return std::vector<std::string>{n.text}; },
      },
      node);
}

std::string Render(const SegmentNode& node) {
  return std::visit(
      Overloaded{
          [](const PlainWord& n) { return n.word; },
          [](const StarForm& n) {
            if (n.masc_suffix.empty()) return n.root + "*" + n.fem_suffix;
            return n.root + "*" + n.masc_suffix + "/" + n.fem_suffix;
          },
          [](const SlashPair& n) { return n.left + "/" + n.right; },
          [](const RawToken& n) -> std::string {
            throw ValidationError("cannot render '" + n.text + "': " + n.reason);
          },
      },
      node);
}

bool ExpandPair(const SegmentNode& node, ExpansionResult* out) {
  if (!IsInclusive(node)) return false;
  std::vector<std::string> words = Expand(node);
  out->masculine = std::move(words[0]);
  out->feminine = std::move(words[1]);
  out->origin = node;
  return true;
}

bool IsInclusive(const SegmentNode& node) {
  return std::holds_alternative<StarForm>(node) ||
         std::holds_alternative<SlashPair>(node);
}

std::string_view KindName(const SegmentNode& node) {
  static constexpr std::string_view kNames[] = {"plain", "star", "slash", "raw"};
  return kNames[node.index()];
}

}  // namespace ipis
