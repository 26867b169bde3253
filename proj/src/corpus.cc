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

#include "ipis/corpus.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "ipis/errors.h"

namespace ipis {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<const char*, 5> kRequired = {
    "source_resource_id", "ipis_id", "prompt", "source", "target"};
constexpr std::array<const char*, 3> kLanguageFields = {
    "prompt_language", "source_language", "target_language"};

std::size_t LineOfByte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::string Describe(const Json& obj, const std::string& where) {
  const auto it = obj.find("ipis_id");
  if (it != obj.end() && it->is_string()) {
    return where + " (ipis_id " + it->get<std::string>() + ")";
  }
  return where;
}

void CheckUnique(const std::vector<IpisRecord>& records,
                 const std::string& source_name) {
  std::set<std::string_view> seen;
  for (const IpisRecord& r : records) {
    if (!seen.insert(r.ipis_id).second) {
      throw ValidationError(source_name + ": duplicate ipis_id " + r.ipis_id);
    }
  }
}

}  // namespace

std::string_view LanguageCode(Language lang) {
  return lang == Language::kPL ? "PL" : "EN";
}

std::optional<Language> ParseLanguage(std::string_view code) {
  if (code == "PL") return Language::kPL;
  if (code == "EN") return Language::kEN;
  return std::nullopt;
}

std::string_view TaskName(Task task) {
  return task == Task::kProofreading ? "proofreading" : "translation";
}

std::optional<Task> ParseTask(std::string_view name) {
  if (name == "proofreading") return Task::kProofreading;
  if (name == "translation") return Task::kTranslation;
  return std::nullopt;
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
    case Split::kUnknown:
      break;
  }
  return "unknown";
}

IpisRecord RecordFromJson(const Json& obj, std::optional<Task> task,
                          const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": record is not a JSON object");
  const std::string who = Describe(obj, where);

  IpisRecord record;
  std::array<std::string*, 5> slots = {&record.source_resource_id, &record.ipis_id,
                                       &record.prompt, &record.source, &record.target};
  for (std::size_t i = 0; i < kRequired.size(); ++i) {
    const auto it = obj.find(kRequired[i]);
    if (it == obj.end()) {
      throw ValidationError(who + ": missing required field '" + kRequired[i] + "'");
    }
    if (!it->is_string()) {
      throw ValidationError(who + ": field '" + kRequired[i] + "' must be a string");
    }
    *slots[i] = it->get<std::string>();
  }
  if (record.ipis_id.empty()) throw ValidationError(who + ": empty ipis_id");

  std::array<std::optional<Language>*, 3> langs = {
      &record.prompt_language, &record.source_language, &record.target_language};
  int present = 0;
  for (std::size_t i = 0; i < kLanguageFields.size(); ++i) {
    const auto it = obj.find(kLanguageFields[i]);
    if (it == obj.end() || it->is_null()) continue;
    ++present;
    std::optional<Language> lang;
    if (it->is_string()) lang = ParseLanguage(it->get<std::string>());
    if (!lang) {
      throw ValidationError(who + ": field '" + kLanguageFields[i] +
                            "' must be \"PL\" or \"EN\", got " + it->dump());
    }
    *langs[i] = lang;
  }
  if (present != 0 && present != 3) {
    throw ValidationError(who + ": translation records need all of prompt_language, "
                                "source_language and target_language");
  }
  if (present == 3 && record.source_language == record.target_language) {
    throw ValidationError(who + ": source_language equals target_language");
  }
  if (task && *task != record.task()) {
    throw ValidationError(who + ": expected a " + std::string(TaskName(*task)) +
                          " record");
  }

  for (const auto& [key, value] : obj.items()) {
    const bool known =
        std::find_if(kRequired.begin(), kRequired.end(),
                     [&](const char* k) { return key == k; }) != kRequired.end() ||
        std::find_if(kLanguageFields.begin(), kLanguageFields.end(),
                     [&](const char* k) { return key == k; }) != kLanguageFields.end();
    if (!known) record.extra[key] = value;
  }
  return record;
}

Json RecordToJson(const IpisRecord& record) {
  Json obj = Json::object();
  obj["source_resource_id"] = record.source_resource_id;
  obj["ipis_id"] = record.ipis_id;
  obj["prompt"] = record.prompt;
  obj["source"] = record.source;
  obj["target"] = record.target;
  if (record.source_language) {
    obj["prompt_language"] = LanguageCode(*record.prompt_language);
    obj["source_language"] = LanguageCode(*record.source_language);
    obj["target_language"] = LanguageCode(*record.target_language);
  }
  for (const auto& [key, value] : record.extra.items()) obj[key] = value;
  return obj;
}

std::vector<IpisRecord> ParseRecords(std::string_view contents,
                                     std::optional<Task> task,
                                     const std::string& source_name) {
  std::vector<IpisRecord> records;
  const std::size_t first = contents.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
  if (first == std::string_view::npos) return records;

  if (contents[first] == '[') {
    Json array;
    try {
      array = Json::parse(contents);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source_name + ":" + std::to_string(LineOfByte(contents, e.byte)) +
                       ": malformed JSON: " + e.what());
    }
    for (std::size_t i = 0; i < array.size(); ++i) {
      records.push_back(RecordFromJson(
          array[i], task, source_name + ": element " + std::to_string(i + 1)));
    }
  } else if (Json whole = Json::parse(contents, nullptr, false);
             contents[first] == '{' && !whole.is_discarded() && whole.is_object()) {
    // A single (possibly pretty-printed) object.
    records.push_back(RecordFromJson(whole, task, source_name));
  } else {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < contents.size()) {
      std::size_t nl = contents.find('\n', pos);
      if (nl == std::string_view::npos) nl = contents.size();
      const std::string_view line = contents.substr(pos, nl - pos);
      ++line_no;
      pos = nl + 1;
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      const std::string where = source_name + ":" + std::to_string(line_no);
      Json obj;
      try {
        obj = Json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(where + ": malformed JSON: " + e.what());
      }
      records.push_back(RecordFromJson(obj, task, where));
    }
  }
  CheckUnique(records, source_name);
  return records;
}

std::vector<IpisRecord> LoadRecords(const std::filesystem::path& path,
                                    std::optional<Task> task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseRecords(buf.str(), task, path.string());
}

std::string SerializeRecords(const std::vector<IpisRecord>& records) {
  std::string out;
  for (const IpisRecord& r : records) {
    out += RecordToJson(r).dump(-1, ' ', false, Json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

Split InferSplit(std::string_view ipis_id) {
  struct Marker {
    std::string_view text;
    Split split;
  };
  static constexpr Marker kMarkers[] = {
      {"_train_", Split::kTrain}, {"_dev_", Split::kDev}, {"_test_", Split::kTest}};
  for (const Marker& m : kMarkers) {
    if (ipis_id.find(m.text) != std::string_view::npos) return m.split;
  }
  return Split::kUnknown;
}

SplitStats ComputeStats(const std::vector<IpisRecord>& records,
                        std::optional<Task> task, std::optional<Split> split) {
  SplitStats stats;
  stats.count = records.size();
  if (!records.empty()) {
    stats.task = records.front().task();
    stats.split = InferSplit(records.front().ipis_id);
  }
  if (task) stats.task = *task;
  if (split) stats.split = *split;
  return stats;
}

std::vector<IpisRecord> FilterByDirection(const std::vector<IpisRecord>& records,
                                          Language source, Language target) {
  std::vector<IpisRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const IpisRecord& r) {
                 return r.source_language == source && r.target_language == target;
               });
  return out;
}

}  // namespace ipis
