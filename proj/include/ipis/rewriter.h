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

// Lexicon-driven baseline proofreader. It finds generic-masculine surface
// forms listed in a lexicon, replaces them with an inclusive form chosen by
// the genre's strategy, and leaves every other byte of the input untouched.
//
// There is no morphology here: agreement is handled by listing dependent
// adjectives, verbs, pronouns and numerals as lexicon entries of their own.

#ifndef IPIS_REWRITER_H_
#define IPIS_REWRITER_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ipis {

enum class Strategy { kCoordination, kSlash, kStar, kOsoba, kNeutral };
std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);

enum class Category { kNoun, kAdjective, kVerb, kPronoun, kNumeral };
std::string_view CategoryName(Category c);
std::optional<Category> ParseCategory(std::string_view name);

// kPair rows map a masculine form to its feminine counterpart. kOsoba and
// kNeutral rows map a (possibly multi-word) masculine phrase to a whole
// replacement phrase stored in fem_form.
enum class EntryKind { kPair, kOsoba, kNeutral };
std::string_view EntryKindName(EntryKind k);

struct LexiconEntry {
  std::string masc_form;
  std::string fem_form;
  std::string star_form;  // "-" for osoba/neutral rows
  Category category = Category::kNoun;
  std::string case_tag;
  EntryKind kind = EntryKind::kPair;

  bool operator==(const LexiconEntry&) const = default;
};

class Lexicon {
 public:
  Lexicon() = default;
  // Validates every entry; throws ValidationError.
  explicit Lexicon(std::vector<LexiconEntry> entries);

  // TSV: masc_form fem_form star_form category case_tag [kind]. '#' starts a
  // comment line. Throws ParseError for malformed rows.
  static Lexicon Parse(std::string_view contents,
                       const std::string& source_name = "<lexicon>");
  static Lexicon Load(const std::filesystem::path& path);

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<LexiconEntry> entries_;
};

// Checks one entry against the notation rules; empty string when valid.
std::string ValidateEntry(const LexiconEntry& entry);

struct GenreProfile {
  std::string genre;
  std::vector<Strategy> allowed;  // ordered by preference

  bool Allows(Strategy s) const;
};

class GenreProfiles {
 public:
  // default, press, scientific, narrative: coordination, slash, star
  // speech: coordination, slash; address: coordination
  // forms, documents, legal: slash, star, osoba, neutral
  static GenreProfiles Builtin();

  // JSON object mapping genre name to an array of strategy names.
  static GenreProfiles Parse(std::string_view json_text);
  static GenreProfiles Load(const std::filesystem::path& path);

  void Add(GenreProfile profile);
  const GenreProfile* Find(std::string_view genre) const;
  std::vector<std::string> Names() const;

 private:
  std::map<std::string, GenreProfile, std::less<>> profiles_;
};

struct Match {
  std::size_t begin = 0;  // byte span in the source text
  std::size_t end = 0;
  std::size_t first_token = 0;  // indices into TokenizeWithSpans(text)
  std::size_t last_token = 0;
  const LexiconEntry* entry = nullptr;
};

struct DetectOptions {
  // Word tokens on either side searched for the feminine counterpart.
  int window = 3;
  bool use_pair = true;
  bool use_osoba = true;
  bool use_neutral = true;
};

// Left-to-right, longest-match scan over whole words, case-insensitive.
// Matches whose feminine form already appears within the window (measured
// from the edge of the run of adjacent matches, stopping at . ! ?) are
// dropped, as are words already written in star or slash notation.
std::vector<Match> Detect(std::string_view text, const Lexicon& lexicon,
                          const DetectOptions& options = {});

struct PlanItem {
  std::size_t begin = 0;  // source span
  std::size_t end = 0;
  std::string replacement;
  // One entry per replaced word; coordination groups carry several.
  std::vector<LexiconEntry> entries;
  Strategy strategy = Strategy::kStar;
};

struct RewritePlan {
  std::vector<PlanItem> items;  // sorted, non-overlapping
};

struct RewriteResult {
  std::string text;
  RewritePlan plan;
};

struct RewriteOptions {
  std::optional<Strategy> strategy;  // must be allowed by the profile
  bool feminine_first = false;       // coordination order
  int window = 3;
};

// Throws UsageError when the requested strategy is not in the profile.
RewriteResult Rewrite(std::string_view text, const Lexicon& lexicon,
                      const GenreProfile& profile, const RewriteOptions& options = {});

// True iff the text outside the plan spans is byte-identical between source
// and output and every replacement sits where the plan says.
bool SelfCheck(std::string_view original, std::string_view rewritten,
               const RewritePlan& plan);

}  // namespace ipis

#endif  // IPIS_REWRITER_H_
