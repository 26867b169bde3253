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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "ipis/errors.h"

namespace ipis {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kMaxBackoffMs = 30'000;

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl ParseUrl(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos || scheme_end == 0) {
    throw UsageError("endpoint URL needs a scheme: " + url);
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw UsageError("unsupported endpoint scheme '" + scheme + "'");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") throw UsageError("this build has no HTTPS support");
#endif
  const std::size_t path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = url.substr(0, path_start);
  out.path = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (out.origin.size() <= scheme_end + 3) throw UsageError("endpoint URL has no host: " + url);
  return out;
}

struct Attempt {
  std::optional<std::string> output;
  std::string error;
  bool retryable = false;
};

Attempt Post(httplib::Client& client, const std::string& path, const std::string& body) {
  Attempt a;
  const httplib::Result res = client.Post(path, body, "application/json");
  if (!res) {
    a.error = "request failed: " + httplib::to_string(res.error());
    a.retryable = true;
    return a;
  }
  if (res->status != 200) {
    a.error = "HTTP " + std::to_string(res->status);
    if (!res->body.empty()) a.error += ": " + res->body.substr(0, 200);
    a.retryable = res->status >= 500 || res->status == 429;
    return a;
  }
  try {
    const Json j = Json::parse(res->body);
    const Json& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) {
      a.error = "response content is not a string";
      return a;
    }
    a.output = content.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    a.error = std::string("malformed response: ") + e.what();
  }
  return a;
}

}  // namespace

void EndpointConfig::Validate() const {
  if (url.empty()) throw UsageError("endpoint URL is required");
  ParseUrl(url);
  if (parallelism < 1) throw UsageError("parallelism must be >= 1");
  if (!(timeout_s > 0)) throw UsageError("timeout must be > 0");
  if (max_retries < 0) throw UsageError("max retries must be >= 0");
  if (max_output_tokens < 1) throw UsageError("max output tokens must be >= 1");
  if (initial_backoff_ms < 0) throw UsageError("backoff must be >= 0");
}

Json GenerationRecordToJson(const GenerationRecord& record) {
  Json j;
  j["ipis_id"] = record.ipis_id;
  j["scenario"] = record.scenario;
  if (record.output) j["output"] = *record.output;
  if (record.error) j["error"] = *record.error;
  j["latency_ms"] = record.latency_ms;
  j["attempts"] = record.attempts;
  return j;
}

GenerationRecord GenerationRecordFromJson(const Json& obj) {
  if (!obj.is_object()) throw ValidationError("generation record is not an object");
  GenerationRecord r;
  const auto id = obj.find("ipis_id");
  if (id == obj.end() || !id->is_string()) {
    throw ValidationError("generation record without a string ipis_id");
  }
  r.ipis_id = id->get<std::string>();
  if (const auto it = obj.find("scenario"); it != obj.end() && it->is_string()) {
    r.scenario = it->get<std::string>();
  }
  if (const auto it = obj.find("output"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw ValidationError(r.ipis_id + ": output must be a string");
    r.output = it->get<std::string>();
  }
  if (const auto it = obj.find("error"); it != obj.end() && !it->is_null()) {
    r.error = it->is_string() ? it->get<std::string>() : it->dump();
  }
  if (r.output.has_value() == r.error.has_value()) {
    throw ValidationError(r.ipis_id + ": exactly one of output and error must be set");
  }
  if (const auto it = obj.find("latency_ms"); it != obj.end() && it->is_number()) {
    r.latency_ms = it->get<double>();
  }
  if (const auto it = obj.find("attempts"); it != obj.end() && it->is_number_integer()) {
    r.attempts = it->get<int>();
  }
  return r;
}

Json ChatRequest(const PromptBundle& bundle, const EndpointConfig& cfg) {
  Json j;
  j["model"] = cfg.model_id;
  j["messages"] = ChatMessages(bundle);
  j["temperature"] = cfg.temperature;
  j["max_tokens"] = cfg.max_output_tokens;
  return j;
}

GenerationRecord Generate(const PromptBundle& bundle, const EndpointConfig& cfg) {
  GenerationRecord record;
  record.ipis_id = bundle.ipis_id;
  record.scenario = bundle.scenario.Name();

  const SplitUrl url = ParseUrl(cfg.url);
  httplib::Client client(url.origin);
  const auto timeout = std::chrono::milliseconds(
      std::max<long long>(1, static_cast<long long>(cfg.timeout_s * 1000)));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  if (cfg.api_key && !cfg.api_key->empty()) client.set_bearer_token_auth(*cfg.api_key);
  const std::string body = ChatRequest(bundle, cfg).dump(-1, ' ', false,
                                                         Json::error_handler_t::replace);

  const Clock::time_point start = Clock::now();
  long long backoff_ms = cfg.initial_backoff_ms;
  Attempt last;
  for (int attempt = 1; attempt <= cfg.max_retries + 1; ++attempt) {
    record.attempts = attempt;
    last = Post(client, url.path, body);
    if (last.output || !last.retryable || attempt == cfg.max_retries + 1) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
    backoff_ms = std::min<long long>(backoff_ms * 2, kMaxBackoffMs);
  }
  record.latency_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (last.output) {
    record.output = std::move(last.output);
  } else {
    record.error = last.retryable
                       ? last.error + " (gave up after " + std::to_string(record.attempts) +
                             " attempts)"
                       : last.error;
  }
  return record;
}

std::vector<GenerationRecord> GenerateBatch(const std::vector<PromptBundle>& bundles,
                                            const EndpointConfig& cfg,
                                            const CompletionCallback& on_complete) {
  cfg.Validate();
  std::vector<GenerationRecord> results(bundles.size());
  std::atomic<std::size_t> next{0};
  std::mutex callback_mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < bundles.size(); i = next++) {
      results[i] = Generate(bundles[i], cfg);
      if (on_complete) {
        std::lock_guard<std::mutex> lock(callback_mu);
        on_complete(i, results[i]);
      }
    }
  };
  const std::size_t n_workers =
      std::min(bundles.size(), static_cast<std::size_t>(cfg.parallelism));
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return results;
}

GenerationLog::GenerationLog(const std::filesystem::path& path)
    : out_(path, std::ios::binary | std::ios::app) {
  if (!out_) throw Error("cannot open " + path.string() + " for appending");
}

void GenerationLog::Append(const GenerationRecord& record) {
  std::lock_guard<std::mutex> lock(mu_);
  out_ << GenerationRecordToJson(record).dump(-1, ' ', false, Json::error_handler_t::replace)
       << '\n';
  out_.flush();
  if (!out_) throw Error("write to generation log failed");
}

std::vector<GenerationRecord> LoadGenerationLog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string contents = buf.str();

  std::vector<GenerationRecord> records;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    const bool terminated = nl != std::string::npos;
    if (!terminated) nl = contents.size();
    const std::string_view line(contents.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      if (!terminated) break;
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": malformed JSON: " + e.what());
    }
    try {
      records.push_back(GenerationRecordFromJson(obj));
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::set<std::string> CompletedIds(const std::vector<GenerationRecord>& records,
                                   const std::string& scenario) {
  std::set<std::string> done;
  for (const GenerationRecord& r : records) {
    if (r.ok() && r.scenario == scenario) done.insert(r.ipis_id);
  }
  return done;
}

}  // namespace ipis
