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

// Parsing and expansion of Polish gender-inclusive notation inside a single
// token:
//
//   pracowni*ków/czek   star form: root, masculine suffix, feminine suffix
//   Student*ka          star form with a null masculine suffix
//   student/studentka   slash pair of two complete words
//
// Everything here is total. Tokens that look like notation but cannot be read
// as such come back as RawToken so that an evaluator can still score them.

#ifndef IPIS_NOTATION_H_
#define IPIS_NOTATION_H_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ipis {

struct PlainWord {
  std::string word;
  bool operator==(const PlainWord&) const = default;
};

struct StarForm {
  std::string root;
  std::string masc_suffix;  // may be empty
  std::string fem_suffix;   // never empty
  bool operator==(const StarForm&) const = default;
};

struct SlashPair {
  std::string left;
  std::string right;
  bool operator==(const SlashPair&) const = default;
};

struct RawToken {
  std::string text;
  std::string reason;
  bool operator==(const RawToken&) const = default;
};

using SegmentNode = std::variant<PlainWord, StarForm, SlashPair, RawToken>;

// Masculine and feminine surface words for a two-form node.
struct ExpansionResult {
  std::string masculine;
  std::string feminine;
  SegmentNode origin;
};

SegmentNode ParseToken(std::string_view token);

// One word for PlainWord and RawToken, two (masculine first) otherwise. Case
// is preserved.
std::vector<std::string> Expand(const SegmentNode& node);

// Throws ipis::ValidationError carrying the unparseable reason for RawToken.
std::string Render(const SegmentNode& node);

// Convenience wrapper; returns false for nodes with a single expansion.
bool ExpandPair(const SegmentNode& node, ExpansionResult* out);

bool IsInclusive(const SegmentNode& node);

// "plain", "star", "slash" or "raw".
std::string_view KindName(const SegmentNode& node);

}  // namespace ipis

#endif  // IPIS_NOTATION_H_
