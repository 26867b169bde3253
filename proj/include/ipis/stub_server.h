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

// Local chat-completion endpoint that answers with the last user turn. Used
// by the tests and for offline dry runs of the generate pipeline.

#ifndef IPIS_STUB_SERVER_H_
#define IPIS_STUB_SERVER_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

namespace ipis {

struct StubOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  // Requests whose last user turn contains this get HTTP 400.
  std::string fail_substring;
  // Statuses returned, in order, before normal echo behaviour resumes.
  std::deque<int> scripted_statuses;
  int min_delay_ms = 0;
  int max_delay_ms = 0;
  std::uint64_t seed = 0;
};

class StubServer {
 public:
  // Starts listening on a background thread. Throws Error if binding fails.
  explicit StubServer(StubOptions options);
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  int port() const;
  std::string url() const;  // .../v1/chat/completions

  // Blocks until Stop() is called from another thread or a signal handler.
  void Wait();
  void Stop();

  // Instrumentation.
  std::size_t request_count() const;
  std::size_t max_in_flight() const;
  // Last user turn of each request, in arrival order.
  std::vector<std::string> request_log() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace ipis

#endif  // IPIS_STUB_SERVER_H_
