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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "ipis/notation.h"
#include "test_util.h"

namespace ipis {
namespace {

const std::vector<std::string> kOscarVariants = {
    "Tegoroczni laureaci i tegoroczne laureatki Oscarów pozowali i pozowały na czerwonym dywanie.",
    "Tegoroczne laureatki i tegoroczni laureaci Oscarów pozowały i  pozowali na czerwonym dywanie.",
    "Tegoroczni laureaci i tegoroczne laureatki Oscarów pozowali/pozowały na czerwonym dywanie.",
    "Tegoroczni laureaci/Tegoroczne laureatki Oscarów pozowali/pozowały na czerwonym dywanie.",
    "Tegoroczne laureatki/Tegoroczni laureaci Oscarów pozowały/pozowali na czerwonym dywanie.",
    "Tegoroczni/Tegoroczne laureaci/laureatki Oscarów pozowali/pozowały na czerwonym dywanie.",
    "Tegoroczni/Tegoroczne laureaci/laureatki Oscarów pozowa*li/ły na czerwonym dywanie.",
    "Tegoroczn*i/e laurea*ci/tki Oscarów pozowa*li/ły na czerwonym dywanie.",
};

NormalizedBag OscarBag() {
  return NormalizedBag({"tegoroczni", "tegoroczne", "laureaci", "laureatki", "oscarów",
                        "pozowali", "pozowały", "na", "czerwonym", "dywanie"},
                       10);
}

TEST(TokenizeTest, Examples) {
  EXPECT_EQ(Tokenize("W 24-osobowym składzie."),
            (std::vector<std::string>{"W", "24-osobowym", "składzie", "."}));
  EXPECT_EQ(Tokenize("pozowa*li/ły na czerwonym dywanie."),
            (std::vector<std::string>{"pozowa*li/ły", "na", "czerwonym", "dywanie", "."}));
  EXPECT_EQ(Tokenize("laureaci i laureatki"),
            (std::vector<std::string>{"laureaci", "i", "laureatki"}));
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize("  \n\t ").empty());
}

TEST(TokenizeTest, SpansPointIntoText) {
  const std::string text = "Łódź, 10/12/2024: „Pracownikom/Pracownicom” – m.in. O'Neil!";
  for (const Token& t : TokenizeWithSpans(text)) {
    ASSERT_LE(t.end, text.size());
    EXPECT_EQ(text.substr(t.begin, t.end - t.begin), t.text);
  }
}

TEST(NormalizeTest, EveryInclusiveVariantGivesTheSameBag) {
  const Stoplist stoplist = Stoplist::Polish();
  for (const std::string& v : kOscarVariants) {
    EXPECT_EQ(Normalize(v, stoplist).Sorted(), OscarBag().Sorted()) << v;
  }
}

TEST(NormalizeTest, EmptyText) {
  const NormalizedBag bag = Normalize("", Stoplist::Polish());
  EXPECT_TRUE(bag.empty());
  EXPECT_EQ(bag.source_len(), 0u);
}

TEST(NormalizeTest, SourceLenCountsExpandedWordsBeforeFiltering) {
  const NormalizedBag bag = Normalize("Laurea*ci/tki i goście.", Stoplist::Polish());
  EXPECT_EQ(bag.Sorted(), (std::vector<std::string>{"goście", "laureaci", "laureatki"}));
  EXPECT_EQ(bag.source_len(), 5u);
}

TEST(NormalizeTest, UnicodeCaseFolding) {
  const NormalizedBag bag = Normalize("ŁÓDŹ Żółw ĆMA", Stoplist());
  EXPECT_EQ(bag.Sorted(), (std::vector<std::string>{"ćma", "łódź", "żółw"}));
}

TEST(NormalizeTest, DuplicatesAreKept) {
  const NormalizedBag bag = Normalize("kot kot Kot", Stoplist());
  EXPECT_EQ(bag.size(), 3u);
  EXPECT_EQ(bag.Counts().at("kot"), 3u);
}

TEST(StoplistTest, DefaultListAndFile) {
  const Stoplist builtin = Stoplist::Polish();
  EXPECT_EQ(builtin.words().size(), 20u);
  for (const char* w : {"i", "oraz", "że", "aż", "ponieważ"}) EXPECT_TRUE(builtin.Contains(w)) << w;
  EXPECT_FALSE(builtin.Contains("na"));
  EXPECT_EQ(Stoplist::Load(testing::DataPath("stoplist_pl.txt")).words(), builtin.words());
}

TEST(StoplistTest, ParseFoldsAndSkipsComments) {
  const Stoplist s = Stoplist::Parse("# header\nŻE\n\n  Lub  \n");
  EXPECT_EQ(s.words().size(), 2u);
  EXPECT_TRUE(s.Contains("że"));
  EXPECT_TRUE(s.Contains("lub"));
  EXPECT_EQ(Stoplist::Parse("# header\nŻE\n\n  Lub  \n").words(), s.words());
}

std::string RandomPolishText(std::mt19937_64& rng) {
  static const std::vector<std::string> kPieces = {
      "Pracowni*cy/ce", "i",  "oraz", "Łódź", "ŻÓŁW", "student/studentka", "na", ",",
      ".",              "a",  "kot",  "że",   "10/12", "m.in.", "Student*ka", "…", "24-osobowym"};
  std::uniform_int_distribution<std::size_t> len(0, 14);
  std::uniform_int_distribution<std::size_t> pick(0, kPieces.size() - 1);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + kPieces[pick(rng)];
  return s;
}

TEST(NormalizePropertyTest, IdempotentAndStoplistSound) {
  const Stoplist stoplist = Stoplist::Polish();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const std::string text = RandomPolishText(rng);
    const NormalizedBag bag = Normalize(text, stoplist);
    for (const std::string& t : bag.tokens()) {
      EXPECT_FALSE(stoplist.Contains(t)) << text;
      EXPECT_EQ(t.find_first_of(" \t\n*"), std::string::npos) << text;
    }
    std::string joined;
    for (const std::string& t : bag.Sorted()) joined += (joined.empty() ? "" : " ") + t;
    EXPECT_EQ(Normalize(joined, stoplist), bag) << text;
  }
}

// A text with k star forms yields k more tokens than the same text with each
// star form replaced by its masculine expansion.
TEST(NormalizePropertyTest, EachStarFormAddsOneToken) {
  const std::vector<std::string> stars = {"Pracowni*cy/ce", "laurea*ci/tki", "Student*ka",
                                          "pozowa*li/ły", "ucz*niów/ennic"};
  const std::vector<std::string> plain = {"kot", "na", "Łódź", "dywanie"};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::string with_stars;
    std::string collapsed;
    std::size_t k = 0;
    const std::size_t n = rng() % 10;
    for (std::size_t j = 0; j < n; ++j) {
      const bool star = rng() % 2 == 0;
      const std::string w = star ? stars[rng() % stars.size()] : plain[rng() % plain.size()];
      with_stars += w + " ";
      collapsed += (star ? Expand(ParseToken(w))[0] : w) + " ";
      k += star ? 1 : 0;
    }
    EXPECT_EQ(Normalize(with_stars, Stoplist()).size(), Normalize(collapsed, Stoplist()).size() + k);
  }
}

}  // namespace
}  // namespace ipis
