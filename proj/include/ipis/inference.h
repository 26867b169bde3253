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

// Chat-completion client. Requests look like
//   {"model": ..., "messages": [{"role", "content"}...], "temperature", "max_tokens"}
// and the text of choices[0].message.content is taken as the output.

#ifndef IPIS_INFERENCE_H_
#define IPIS_INFERENCE_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ipis/prompts.h"
#include "json.hpp"

namespace ipis {

struct EndpointConfig {
  std::string url;  // full endpoint URL, e.g. http://host:8000/v1/chat/completions
  std::string model_id;
  double temperature = 0.0;
  int max_output_tokens = 1024;
  double timeout_s = 120.0;
  int max_retries = 3;  // retries after the first attempt
  int parallelism = 1;
  int initial_backoff_ms = 500;  // doubles on every retry
  std::optional<std::string> api_key;  // sent as a bearer token

  // Throws UsageError.
  void Validate() const;
};

struct GenerationRecord {
  std::string ipis_id;
  std::string scenario;
  std::optional<std::string> output;
  std::optional<std::string> error;
  double latency_ms = 0.0;
  int attempts = 0;

  bool ok() const { return output.has_value(); }
};

nlohmann::ordered_json GenerationRecordToJson(const GenerationRecord& record);
// Throws ValidationError unless exactly one of output/error is present.
GenerationRecord GenerationRecordFromJson(const nlohmann::ordered_json& obj);

nlohmann::ordered_json ChatRequest(const PromptBundle& bundle, const EndpointConfig& cfg);

// Retries connection failures, timeouts, 5xx and 429 with exponential
// backoff; other statuses and malformed responses give an error record after
// that attempt. Never throws for endpoint failures.
GenerationRecord Generate(const PromptBundle& bundle, const EndpointConfig& cfg);

// Called once per finished bundle, serialized, in completion order.
using CompletionCallback = std::function<void(std::size_t index, const GenerationRecord&)>;

// Results are in input order; at most cfg.parallelism requests are in flight.
std::vector<GenerationRecord> GenerateBatch(const std::vector<PromptBundle>& bundles,
                                            const EndpointConfig& cfg,
                                            const CompletionCallback& on_complete = {});

// Append-only JSONL cache of generation records; each line is flushed as it
// is written so an interrupted run loses at most the line in progress.
class GenerationLog {
 public:
  explicit GenerationLog(const std::filesystem::path& path);
  void Append(const GenerationRecord& record);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

// Reads a generation log. A truncated final line (interrupted write) is
// ignored; malformed lines elsewhere throw ParseError.
std::vector<GenerationRecord> LoadGenerationLog(const std::filesystem::path& path);

// ids that already have a successful output for `scenario`.
std::set<std::string> CompletedIds(const std::vector<GenerationRecord>& records,
                                   const std::string& scenario);

}  // namespace ipis

#endif  // IPIS_INFERENCE_H_
