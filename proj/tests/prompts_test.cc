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


#include "ipis/prompts.h"

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "ipis/errors.h"
#include "test_util.h"

namespace ipis {
namespace {

using testing::FixturePath;

Scenario Named(const std::string& name) {
  const auto s = ParseScenario(name);
  EXPECT_TRUE(s.has_value()) << name;
  return *s;
}

TEST(ScenarioTest, NamesRoundTrip) {
  std::set<std::string> names;
  for (const Scenario& s : AllScenarios()) {
    names.insert(s.Name());
    EXPECT_EQ(ParseScenario(s.Name()), s);
  }
  EXPECT_EQ(names, (std::set<std::string>{"default", "default-pl", "default-en", "fewshot",
                                          "fewshot-pl", "fewshot-en", "tuned", "tuned-pl",
                                          "tuned-en"}));
  EXPECT_FALSE(ParseScenario("fewshot-de").has_value());
}

TEST(PromptsTest, DefaultScenarioIsOneUserTurn) {
  const IpisRecord r = LoadRecords(FixturePath("proofreading_record.json"))[0];
  const PromptBundle b = BuildBundle(r, Named("default"), {}, PromptAssets::Builtin());
  EXPECT_FALSE(b.system.has_value());
  ASSERT_EQ(b.turns.size(), 1u);
  EXPECT_EQ(b.turns[0].role, Role::kUser);
  EXPECT_EQ(b.turns[0].text.rfind("Przeredaguj tekst w standardowym języku polskim", 0), 0u);
  EXPECT_NE(b.turns[0].text.find(r.source), std::string::npos);
}

TEST(PromptsTest, UserTextJoinsWithOneSpace) {
  IpisRecord r;
  r.prompt = "Translate:";
  r.source = "Ala";
  EXPECT_EQ(UserText(r), "Translate: Ala");
  r.prompt = "Translate: ";
  EXPECT_EQ(UserText(r), "Translate: Ala");
}

TEST(PromptsTest, TunedEnglishCarriesSystemPrompt) {
  const IpisRecord r = LoadRecords(FixturePath("proofreading_record.json"))[0];
  const PromptBundle b = BuildBundle(r, Named("tuned-en"), {}, PromptAssets::Builtin());
  ASSERT_TRUE(b.system.has_value());
  EXPECT_EQ(b.system->rfind("You are an editor, who verifies", 0), 0u);
  EXPECT_EQ(b.turns.size(), 1u);

  const IpisRecord t = LoadRecords(FixturePath("translation_record.json"))[0];
  const PromptBundle bt = BuildBundle(t, Named("default-en"), {}, PromptAssets::Builtin());
  ASSERT_TRUE(bt.system.has_value());
  EXPECT_EQ(bt.system->rfind("You are a Polish translator.", 0), 0u);
}

TEST(PromptsTest, MissingPolishAssetIsUsageError) {
  const IpisRecord r = LoadRecords(FixturePath("proofreading_record.json"))[0];
  EXPECT_THROW(BuildBundle(r, Named("default-pl"), {}, PromptAssets::Builtin()), UsageError);

  testing::TempDir dir;
  testing::WriteAll(dir / "pl.txt", "Jesteś redaktorem.\n");
  PromptAssets assets = PromptAssets::Builtin();
  assets.LoadFile(dir / "pl.txt", Task::kProofreading, Language::kPL);
  const PromptBundle b = BuildBundle(r, Named("default-pl"), {}, assets);
  ASSERT_TRUE(b.system.has_value());
  EXPECT_EQ(b.system->rfind("Jesteś redaktorem.", 0), 0u);
}

TEST(PromptsTest, FewshotExemplars) {
  const auto pool = LoadRecords(FixturePath("proofreading_50.jsonl"));
  const IpisRecord r = LoadRecords(FixturePath("proofreading_record.json"))[0];
  const PromptBundle b = BuildBundle(r, Named("fewshot"), pool, PromptAssets::Builtin());
  ASSERT_EQ(b.turns.size(), 7u);
  for (std::size_t i = 0; i + 1 < b.turns.size(); i += 2) {
    EXPECT_EQ(b.turns[i].role, Role::kUser);
    EXPECT_EQ(b.turns[i + 1].role, Role::kAssistant);
  }
  EXPECT_EQ(b.turns.back().text, UserText(r));

  // Same seed and id give the same exemplars; the record itself is never used.
  EXPECT_EQ(BuildBundle(r, Named("fewshot"), pool, PromptAssets::Builtin()), b);
  const IpisRecord& self = pool[4];
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    BuildOptions opts;
    opts.seed = seed;
    const PromptBundle own = BuildBundle(self, Named("fewshot"), pool, PromptAssets::Builtin(), opts);
    for (std::size_t i = 0; i + 1 < own.turns.size(); i += 2) {
      EXPECT_NE(own.turns[i].text, UserText(self));
    }
  }
}

TEST(PromptsTest, FewshotTranslationKeepsDirection) {
  const auto pool = LoadRecords(FixturePath("translation_12.jsonl"));
  const IpisRecord& r = pool[0];
  BuildOptions opts;
  opts.k = 2;
  const PromptBundle b = BuildBundle(r, Named("fewshot"), pool, PromptAssets::Builtin(), opts);
  ASSERT_EQ(b.turns.size(), 5u);
  for (std::size_t i = 0; i + 1 < b.turns.size(); i += 2) {
    bool found = false;
    for (const IpisRecord& p : pool) {
      if (UserText(p) == b.turns[i].text) {
        found = true;
        EXPECT_EQ(p.source_language, r.source_language);
        EXPECT_EQ(b.turns[i + 1].text, p.target);
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(PromptsTest, KLargerThanPoolIsUsageError) {
  const auto pool = LoadRecords(FixturePath("translation_12.jsonl"));
  BuildOptions opts;
  opts.k = 100;
  EXPECT_THROW(BuildBundle(pool[0], Named("fewshot"), pool, PromptAssets::Builtin(), opts),
               UsageError);
}

TEST(PromptsTest, ChatMessagesLayout) {
  const IpisRecord r = LoadRecords(FixturePath("proofreading_record.json"))[0];
  const auto msgs = ChatMessages(BuildBundle(r, Named("tuned-en"), {}, PromptAssets::Builtin()));
  ASSERT_EQ(msgs.size(), 2u);
  EXPECT_EQ(msgs[0]["role"], "system");
  EXPECT_EQ(msgs[1]["role"], "user");
  EXPECT_EQ(msgs[1]["content"], UserText(r));
}

}  // namespace
}  // namespace ipis
