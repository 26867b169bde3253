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

// The `ipis` command line: expand, normalize, stats, eval-proof, eval-mt,
// rewrite, generate and tabulate.

#ifndef IPIS_CLI_H_
#define IPIS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace ipis {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O or validation error
inline constexpr int kExitUsage = 2;

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err);

}  // namespace ipis

#endif  // IPIS_CLI_H_
