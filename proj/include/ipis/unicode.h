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

// Thin UTF-8 helpers over ICU. All functions accept arbitrary bytes; invalid
// sequences decode to U+FFFD and are never fatal.

#ifndef IPIS_UNICODE_H_
#define IPIS_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ipis::unicode {

// One decoded code point and the byte range it occupied in the input.
struct CodePoint {
  char32_t value;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> Decode(std::string_view text);

// Code points only, for n-gram counting.
std::u32string ToU32(std::string_view text);
std::string FromU32(std::u32string_view text);

bool IsLetter(char32_t c);
bool IsDigit(char32_t c);
bool IsMark(char32_t c);
bool IsSpace(char32_t c);
bool IsUpper(char32_t c);

// True when every code point is alphabetic and the string is non-empty.
bool IsAlphabetic(std::string_view text);

// True when the text contains at least one letter or digit.
bool HasAlnum(std::string_view text);

// Full Unicode case folding (U_FOLD_CASE_DEFAULT).
std::string FoldCase(std::string_view text);

std::string ToUpper(std::string_view text);

// Uppercases only the first code point; the rest is copied byte-for-byte.
std::string CapitalizeFirst(std::string_view text);

// Lowercases only the first code point.
std::string LowercaseFirst(std::string_view text);

bool StartsUpper(std::string_view text);

// All cased letters are uppercase and there are at least two of them.
bool IsAllCaps(std::string_view text);

}  // namespace ipis::unicode

#endif  // IPIS_UNICODE_H_
