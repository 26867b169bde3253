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

// Echo chat-completion endpoint for offline runs of `ipis generate`.

#include <csignal>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "ipis/stub_server.h"

namespace {
ipis::StubServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Echo chat-completion stub", "ipis_stub_server"};
  ipis::StubOptions options;
  app.add_option("--host", options.host)->capture_default_str();
  app.add_option("--port", options.port, "0 picks a free port")->capture_default_str();
  app.add_option("--fail-substring", options.fail_substring,
                 "Answer HTTP 400 when the last user turn contains this");
  app.add_option("--min-delay-ms", options.min_delay_ms)->capture_default_str();
  app.add_option("--max-delay-ms", options.max_delay_ms)->capture_default_str();
  app.add_option("--seed", options.seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    ipis::StubServer server(options);
    g_server = &server;
    std::signal(SIGINT, HandleSignal);
    std::signal(SIGTERM, HandleSignal);
    std::cout << server.url() << std::endl;
    server.Wait();
    g_server = nullptr;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
