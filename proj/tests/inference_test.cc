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


#include "ipis/inference.h"

#include <gtest/gtest.h>

#include <chrono>
#include <string>
#include <vector>

#include "ipis/errors.h"
#include "ipis/prompts.h"
#include "ipis/stub_server.h"
#include "test_util.h"

namespace ipis {
namespace {

PromptBundle UserOnly(const std::string& id, const std::string& text) {
  PromptBundle b;
  b.ipis_id = id;
  b.turns.push_back({Role::kUser, text});
  return b;
}

EndpointConfig ConfigFor(const StubServer& server) {
  EndpointConfig cfg;
  cfg.url = server.url();
  cfg.model_id = "stub";
  cfg.timeout_s = 10;
  cfg.initial_backoff_ms = 1;
  return cfg;
}

TEST(EndpointConfigTest, Validate) {
  EndpointConfig cfg;
  cfg.url = "http://127.0.0.1:1/v1/chat/completions";
  EXPECT_NO_THROW(cfg.Validate());
  cfg.parallelism = 0;
  EXPECT_THROW(cfg.Validate(), UsageError);
  cfg.parallelism = 1;
  cfg.url = "ftp://x";
  EXPECT_THROW(cfg.Validate(), UsageError);
}

TEST(ChatRequestTest, CarriesMessagesAndSettings) {
  PromptBundle b = UserOnly("a", "hello");
  b.system = "sys";
  EndpointConfig cfg;
  cfg.model_id = "m";
  cfg.max_output_tokens = 7;
  const auto req = ChatRequest(b, cfg);
  EXPECT_EQ(req["model"], "m");
  EXPECT_EQ(req["max_tokens"], 7);
  EXPECT_EQ(req["temperature"], 0.0);
  EXPECT_EQ(req["messages"], ChatMessages(b));
}

TEST(GenerateTest, EchoesLastUserTurn) {
  StubServer server({});
  const GenerationRecord r = Generate(UserOnly("a", "Zażółć gęślą jaźń"), ConfigFor(server));
  ASSERT_TRUE(r.ok()) << r.error.value_or("");
  EXPECT_EQ(*r.output, "Zażółć gęślą jaźń");
  EXPECT_EQ(r.attempts, 1);
}

TEST(GenerateTest, RetriesServerErrors) {
  StubOptions opts;
  opts.scripted_statuses = {500, 500, 200};
  StubServer server(opts);
  const GenerationRecord r = Generate(UserOnly("a", "x"), ConfigFor(server));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.attempts, 3);
  EXPECT_EQ(server.request_count(), 3u);
}

TEST(GenerateTest, RetriesRateLimit) {
  StubOptions opts;
  opts.scripted_statuses = {429};
  StubServer server(opts);
  const GenerationRecord r = Generate(UserOnly("a", "x"), ConfigFor(server));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.attempts, 2);
}

TEST(GenerateTest, ClientErrorIsNotRetried) {
  StubOptions opts;
  opts.scripted_statuses = {401};
  StubServer server(opts);
  const GenerationRecord r = Generate(UserOnly("a", "x"), ConfigFor(server));
  EXPECT_FALSE(r.ok());
  ASSERT_TRUE(r.error.has_value());
  EXPECT_NE(r.error->find("401"), std::string::npos) << *r.error;
  EXPECT_EQ(r.attempts, 1);
  EXPECT_EQ(server.request_count(), 1u);
}

TEST(GenerateTest, GivesUpAfterMaxRetries) {
  StubOptions opts;
  opts.scripted_statuses = {503, 503, 503, 503, 503};
  StubServer server(opts);
  EndpointConfig cfg = ConfigFor(server);
  cfg.max_retries = 2;
  const GenerationRecord r = Generate(UserOnly("a", "x"), cfg);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.attempts, 3);
}

TEST(GenerateTest, UnreachableEndpointIsAnErrorRecord) {
  EndpointConfig cfg;
  int port = 0;
  {
    StubServer server({});
    port = server.port();
  }
  cfg.url = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  cfg.max_retries = 1;
  cfg.initial_backoff_ms = 1;
  cfg.timeout_s = 2;
  const GenerationRecord r = Generate(UserOnly("a", "x"), cfg);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.attempts, 2);
}

std::vector<PromptBundle> Bundles(std::size_t n) {
  std::vector<PromptBundle> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(UserOnly("id" + std::to_string(i), "text " + std::to_string(i)));
  }
  return out;
}

TEST(GenerateBatchTest, InputOrderUnderConcurrency) {
  StubOptions opts;
  opts.min_delay_ms = 1;
  opts.max_delay_ms = 25;
  opts.seed = 3;
  StubServer server(opts);
  EndpointConfig cfg = ConfigFor(server);
  cfg.parallelism = 3;
  const auto bundles = Bundles(30);
  std::vector<std::size_t> completed;
  const auto results = GenerateBatch(bundles, cfg, [&](std::size_t i, const GenerationRecord&) {
    completed.push_back(i);
  });
  ASSERT_EQ(results.size(), bundles.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(results[i].ipis_id, bundles[i].ipis_id);
    EXPECT_EQ(results[i].output, bundles[i].turns[0].text);
  }
  EXPECT_EQ(completed.size(), bundles.size());
  EXPECT_LE(server.max_in_flight(), 3u);
}

TEST(GenerateBatchTest, SequentialWithParallelismOne) {
  StubOptions opts;
  opts.max_delay_ms = 5;
  StubServer server(opts);
  const auto bundles = Bundles(8);
  GenerateBatch(bundles, ConfigFor(server));
  EXPECT_EQ(server.max_in_flight(), 1u);
  std::vector<std::string> expected;
  for (const PromptBundle& b : bundles) expected.push_back(b.turns[0].text);
  EXPECT_EQ(server.request_log(), expected);
}

TEST(GenerateBatchTest, OneFailureDoesNotStopTheBatch) {
  StubOptions opts;
  opts.fail_substring = "text 4";
  StubServer server(opts);
  EndpointConfig cfg = ConfigFor(server);
  cfg.parallelism = 2;
  const auto results = GenerateBatch(Bundles(10), cfg);
  for (std::size_t i = 0; i < results.size(); ++i) EXPECT_EQ(results[i].ok(), i != 4) << i;
}

TEST(GenerationLogTest, RoundTripAndCompletedIds) {
  testing::TempDir dir;
  const auto path = dir / "gen.jsonl";
  {
    GenerationLog log(path);
    log.Append({"a", "default", std::string("out a"), std::nullopt, 1.5, 1});
    log.Append({"b", "default", std::nullopt, std::string("HTTP 400"), 2.0, 1});
    log.Append({"c", "tuned", std::string("out c"), std::nullopt, 1.0, 2});
  }
  const auto records = LoadGenerationLog(path);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].output, "out a");
  EXPECT_EQ(records[1].error, "HTTP 400");
  EXPECT_EQ(records[2].attempts, 2);
  EXPECT_EQ(CompletedIds(records, "default"), (std::set<std::string>{"a"}));
  EXPECT_EQ(CompletedIds(records, "tuned"), (std::set<std::string>{"c"}));
}

TEST(GenerationLogTest, TruncatedFinalLineIsIgnored) {
  testing::TempDir dir;
  const auto path = dir / "gen.jsonl";
  {
    GenerationLog log(path);
    log.Append({"a", "default", std::string("out a"), std::nullopt, 1.5, 1});
  }
  testing::WriteAll(path, testing::ReadAll(path) + R"({"ipis_id":"b","scen)");
  EXPECT_EQ(LoadGenerationLog(path).size(), 1u);

  testing::WriteAll(path, "{broken\n" + testing::ReadAll(path));
  EXPECT_THROW(LoadGenerationLog(path), ParseError);
}

TEST(GenerationLogTest, RecordNeedsExactlyOneOfOutputAndError) {
  EXPECT_THROW(GenerationRecordFromJson(nlohmann::ordered_json::parse(
                   R"({"ipis_id":"a","scenario":"s","output":"x","error":"y"})")),
               ValidationError);
  EXPECT_THROW(
      GenerationRecordFromJson(nlohmann::ordered_json::parse(R"({"ipis_id":"a","scenario":"s"})")),
      ValidationError);
}

}  // namespace
}  // namespace ipis
