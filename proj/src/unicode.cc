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

#include "ipis/unicode.h"

#include <unicode/uchar.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace ipis::unicode {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

void Append(std::string& out, char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  if (error) {
    len = 0;
    U8_APPEND_UNSAFE(buf, len, kReplacement);
  }
  out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(len));
}

}  // namespace

std::vector<CodePoint> Decode(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) c = kReplacement;
    out.push_back({static_cast<char32_t>(c), static_cast<size_t>(begin),
                   static_cast<size_t>(i)});
  }
  return out;
}

std::u32string ToU32(std::string_view text) {
  std::u32string out;
  for (const CodePoint& cp : Decode(text)) out.push_back(cp.value);
  return out;
}

std::string FromU32(std::u32string_view text) {
  std::string out;
  for (char32_t c : text) Append(out, c);
  return out;
}

bool IsLetter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }

bool IsDigit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }

bool IsMark(char32_t c) {
  return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_M_MASK) != 0;
}

bool IsSpace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool IsUpper(char32_t c) { return u_isUUppercase(static_cast<UChar32>(c)); }

bool IsAlphabetic(std::string_view text) {
  if (text.empty()) return false;
  for (const CodePoint& cp : Decode(text)) {
    // Combining marks belong to the letter they follow (decomposed input).
    if (!IsLetter(cp.value) && !IsMark(cp.value)) return false;
  }
  return IsLetter(Decode(text).front().value);
}

bool HasAlnum(std::string_view text) {
  for (const CodePoint& cp : Decode(text)) {
    if (IsLetter(cp.value) || IsDigit(cp.value)) return true;
  }
  return false;
}

std::string FoldCase(std::string_view text) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u.foldCase(U_FOLD_CASE_DEFAULT);
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::string ToUpper(std::string_view text) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u.toUpper(icu::Locale::getRoot());
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::string CapitalizeFirst(std::string_view text) {
  if (text.empty()) return {};
  const std::vector<CodePoint> cps = Decode(text);
  std::string out;
  Append(out, static_cast<char32_t>(u_toupper(static_cast<UChar32>(cps[0].value))));
  out.append(text.substr(cps[0].end));
  return out;
}

std::string LowercaseFirst(std::string_view text) {
  if (text.empty()) return {};
  const std::vector<CodePoint> cps = Decode(text);
  std::string out;
  Append(out, static_cast<char32_t>(u_tolower(static_cast<UChar32>(cps[0].value))));
  out.append(text.substr(cps[0].end));
  return out;
}

bool StartsUpper(std::string_view text) {
  if (text.empty()) return false;
  return IsUpper(Decode(text).front().value);
}

bool IsAllCaps(std::string_view text) {
  int cased = 0;
  for (const CodePoint& cp : Decode(text)) {
    const auto c = static_cast<UChar32>(cp.value);
    if (u_isULowercase(c)) return false;
    if (u_isUUppercase(c)) ++cased;
  }
  return cased >= 2;
}

}  // namespace ipis::unicode
