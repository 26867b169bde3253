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

// Tokenization and the bag-of-tokens normalization used to compare proofread
// texts: expand inclusive notation, case-fold, drop punctuation and stop
// tokens. Word order is discarded; duplicates are kept.

#ifndef IPIS_NORMALIZE_H_
#define IPIS_NORMALIZE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ipis {

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the tokenized text
  std::size_t end = 0;
  bool is_punct = false;  // no letter or digit inside
};

// Word tokens are maximal runs of letters, digits, combining marks and the
// notation characters * / - '. Every other non-space run becomes a separate
// punctuation token. Offsets are byte offsets and ordering is preserved.
std::vector<Token> TokenizeWithSpans(std::string_view text);

std::vector<std::string> Tokenize(std::string_view text);

class Stoplist {
 public:
  // Empty list with punctuation stripping on.
  Stoplist() = default;
  explicit Stoplist(const std::vector<std::string>& words,
                    bool strip_punctuation = true);

  // Default Polish conjunction list.
  static Stoplist Polish();

  // UTF-8, one entry per line, '#' starts a comment. Entries are case-folded.
  static Stoplist Load(const std::filesystem::path& path);
  static Stoplist Parse(std::string_view contents);

  bool Contains(std::string_view folded_word) const;
  bool strip_punctuation() const { return strip_punctuation_; }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
  bool strip_punctuation_ = true;
};

class NormalizedBag {
 public:
  NormalizedBag() = default;
  NormalizedBag(std::vector<std::string> tokens, std::size_t source_len);

  // Tokens in text order.
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  // Number of expanded words before punctuation and stoplist filtering.
  std::size_t source_len() const { return source_len_; }

  std::map<std::string, std::size_t> Counts() const;
  std::vector<std::string> Sorted() const;

  // Multiset equality; order and source_len are ignored.
  friend bool operator==(const NormalizedBag& a, const NormalizedBag& b) {
    return a.Sorted() == b.Sorted();
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t source_len_ = 0;
};

// tokenize -> parse/expand each token -> case-fold -> drop punctuation and
// stop tokens. Unparseable notation is split on '*' and '/' so that no output
// token carries notation characters.
NormalizedBag Normalize(std::string_view text, const Stoplist& stoplist);

}  // namespace ipis

#endif  // IPIS_NORMALIZE_H_
