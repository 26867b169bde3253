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

#ifndef IPIS_ERRORS_H_
#define IPIS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ipis {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (JSON syntax, TSV shape).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a data contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Caller asked for something the configuration does not permit. The CLI maps
// this to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ipis

#endif  // IPIS_ERRORS_H_
