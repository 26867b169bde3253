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

#include "ipis/stub_server.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <thread>

#include "httplib.h"
#include "ipis/errors.h"
#include "json.hpp"

namespace ipis {

struct StubServer::State {
  StubOptions options;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  mutable std::mutex mu;
  std::mt19937_64 rng;
  std::vector<std::string> log;
  std::atomic<std::size_t> in_flight{0};
  std::atomic<std::size_t> max_in_flight{0};

  void Handle(const httplib::Request& req, httplib::Response& res);
};

void StubServer::State::Handle(const httplib::Request& req, httplib::Response& res) {
  const std::size_t now = ++in_flight;
  std::size_t seen = max_in_flight.load();
  while (now > seen && !max_in_flight.compare_exchange_weak(seen, now)) {
  }

  std::string last_user;
  bool parsed = false;
  try {
    const nlohmann::json body = nlohmann::json::parse(req.body);
    for (const auto& m : body.at("messages")) {
      if (m.at("role") == "user") last_user = m.at("content").get<std::string>();
    }
    parsed = true;
  } catch (const nlohmann::json::exception&) {
  }

  int delay_ms = 0;
  int scripted = 0;
  {
    std::lock_guard<std::mutex> lock(mu);
    log.push_back(last_user);
    if (options.max_delay_ms > 0) {
      std::uniform_int_distribution<int> dist(options.min_delay_ms, options.max_delay_ms);
      delay_ms = dist(rng);
    }
    if (!options.scripted_statuses.empty()) {
      scripted = options.scripted_statuses.front();
      options.scripted_statuses.pop_front();
    }
  }
  if (delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));

  if (!parsed) {
    res.status = 400;
    res.set_content(R"({"error":"malformed request"})", "application/json");
  } else if (scripted != 0 && scripted != 200) {
    res.status = scripted;
    res.set_content(R"({"error":"scripted failure"})", "application/json");
  } else if (!options.fail_substring.empty() &&
             last_user.find(options.fail_substring) != std::string::npos) {
    res.status = 400;
    res.set_content(R"({"error":"rejected by stub"})", "application/json");
  } else {
    nlohmann::json reply = {
        {"object", "chat.completion"},
        {"choices",
         {{{"index", 0},
           {"message", {{"role", "assistant"}, {"content", last_user}}},
           {"finish_reason", "stop"}}}}};
    res.set_content(reply.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace),
                    "application/json");
  }
  --in_flight;
}

StubServer::StubServer(StubOptions options) : state_(std::make_unique<State>()) {
  state_->options = std::move(options);
  state_->rng.seed(state_->options.seed);
  state_->server.Post(".*", [s = state_.get()](const httplib::Request& req,
                                               httplib::Response& res) { s->Handle(req, res); });
  const std::string& host = state_->options.host;
  if (state_->options.port == 0) {
    state_->port = state_->server.bind_to_any_port(host);
  } else if (state_->server.bind_to_port(host, state_->options.port)) {
    state_->port = state_->options.port;
  } else {
    state_->port = -1;
  }
  if (state_->port <= 0) throw Error("stub server cannot bind to " + host);
  state_->thread = std::thread([s = state_.get()] { s->server.listen_after_bind(); });
  state_->server.wait_until_ready();
}

StubServer::~StubServer() {
  Stop();
  if (state_->thread.joinable()) state_->thread.join();
}

int StubServer::port() const { return state_->port; }

std::string StubServer::url() const {
  return "http://" + state_->options.host + ":" + std::to_string(state_->port) +
         "/v1/chat/completions";
}

void StubServer::Wait() {
  if (state_->thread.joinable()) state_->thread.join();
}

void StubServer::Stop() { state_->server.stop(); }

std::size_t StubServer::request_count() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->log.size();
}

std::size_t StubServer::max_in_flight() const { return state_->max_in_flight.load(); }

std::vector<std::string> StubServer::request_log() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->log;
}

}  // namespace ipis
