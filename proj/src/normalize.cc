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

#include "ipis/normalize.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <variant>

#include "ipis/errors.h"
#include "ipis/notation.h"
#include "ipis/unicode.h"

namespace ipis {
namespace {

enum class CharClass { kSpace, kWord, kPunct };

CharClass Classify(char32_t c) {
  if (unicode::IsSpace(c)) return CharClass::kSpace;
  if (unicode::IsLetter(c) || unicode::IsDigit(c) || unicode::IsMark(c)) {
    return CharClass::kWord;
  }
  switch (c) {
    case U'*':
    case U'/':
    case U'-':
    case U'\'':
      return CharClass::kWord;
    default:
      return CharClass::kPunct;
  }
}

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kWs = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(kWs);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWs);
  return s.substr(first, last - first + 1);
}

// Pieces of an unparseable token between notation characters.
std::vector<std::string> SplitNotation(std::string_view text) {
  std::vector<std::string> pieces;
  std::string current;
  for (char ch : text) {
    if (ch == '*' || ch == '/') {
      if (!current.empty()) pieces.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) pieces.push_back(std::move(current));
  return pieces;
}

}  // namespace

std::vector<Token> TokenizeWithSpans(std::string_view text) {
  std::vector<Token> tokens;
  const std::vector<unicode::CodePoint> cps = unicode::Decode(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    const CharClass cls = Classify(cps[i].value);
    if (cls == CharClass::kSpace) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < cps.size() && Classify(cps[j].value) == cls) ++j;
    Token token;
    token.begin = cps[i].begin;
    token.end = cps[j - 1].end;
    token.text = std::string(text.substr(token.begin, token.end - token.begin));
    token.is_punct = !unicode::HasAlnum(token.text);
    tokens.push_back(std::move(token));
    i = j;
  }
  return tokens;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (Token& t : TokenizeWithSpans(text)) out.push_back(std::move(t.text));
  return out;
}

Stoplist::Stoplist(const std::vector<std::string>& words, bool strip_punctuation)
    : strip_punctuation_(strip_punctuation) {
  for (const std::string& w : words) {
    const std::string_view trimmed = Trim(w);
    if (!trimmed.empty()) words_.insert(unicode::FoldCase(trimmed));
  }
}

Stoplist Stoplist::Polish() {
  // Coordinating and subordinating conjunctions.
  return Stoplist({"i",      "oraz",  "lub",      "albo",    "ani",
                   "czy",    "a",     "że",       "iż",      "aby",
                   "żeby",   "gdy",   "jeśli",    "jeżeli",  "ponieważ",
                   "bo",     "choć",  "chociaż",  "zanim",   "aż"});
}

Stoplist Stoplist::Parse(std::string_view contents) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (!line.empty()) words.emplace_back(line);
    pos = nl + 1;
  }
  return Stoplist(words);
}

Stoplist Stoplist::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open stoplist " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

bool Stoplist::Contains(std::string_view folded_word) const {
  return words_.find(folded_word) != words_.end();
}

NormalizedBag::NormalizedBag(std::vector<std::string> tokens,
                             std::size_t source_len)
    : tokens_(std::move(tokens)), source_len_(source_len) {}

std::map<std::string, std::size_t> NormalizedBag::Counts() const {
  std::map<std::string, std::size_t> counts;
  for (const std::string& t : tokens_) ++counts[t];
  return counts;
}

std::vector<std::string> NormalizedBag::Sorted() const {
  std::vector<std::string> sorted = tokens_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

NormalizedBag Normalize(std::string_view text, const Stoplist& stoplist) {
  std::vector<std::string> kept;
  std::size_t source_len = 0;
  for (const Token& token : TokenizeWithSpans(text)) {
    const SegmentNode node = ParseToken(token.text);
    std::vector<std::string> words = std::holds_alternative<RawToken>(node)
                                         ? SplitNotation(token.text)
                                         : Expand(node);
    for (const std::string& word : words) {
      ++source_len;
      if (stoplist.strip_punctuation() && !unicode::HasAlnum(word)) continue;
      std::string folded = unicode::FoldCase(word);
      if (stoplist.Contains(folded)) continue;
      kept.push_back(std::move(folded));
    }
  }
  return NormalizedBag(std::move(kept), source_len);
}

}  // namespace ipis
