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

// IPIS instruction records: loading from JSON Lines or JSON arrays,
// validation, split statistics and direction filtering.

#ifndef IPIS_CORPUS_H_
#define IPIS_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ipis {

enum class Language { kPL, kEN };
enum class Task { kProofreading, kTranslation };
enum class Split { kTrain, kDev, kTest, kUnknown };

std::string_view LanguageCode(Language lang);  // "PL" / "EN"
std::optional<Language> ParseLanguage(std::string_view code);
std::string_view TaskName(Task task);
std::optional<Task> ParseTask(std::string_view name);
std::string_view SplitName(Split split);

struct IpisRecord {
  std::string source_resource_id;
  std::string ipis_id;
  std::string prompt;
  std::string source;
  std::string target;
  std::optional<Language> prompt_language;
  std::optional<Language> source_language;
  std::optional<Language> target_language;
  // Fields not listed above, kept verbatim for re-serialization.
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  Task task() const {
    return source_language ? Task::kTranslation : Task::kProofreading;
  }
};

// Required: source_resource_id, ipis_id, prompt, source, target (strings).
// Language fields are all present (translation) or all absent
// (proofreading); with `task` set, the record must match it. Throws
// ValidationError; `where` prefixes the message.
IpisRecord RecordFromJson(const nlohmann::ordered_json& obj,
                          std::optional<Task> task, const std::string& where);

nlohmann::ordered_json RecordToJson(const IpisRecord& record);

// Accepts JSON Lines or a single JSON array. Throws ParseError on malformed
// JSON (with the line number) and ValidationError on contract violations,
// including duplicate ipis_id values.
std::vector<IpisRecord> ParseRecords(std::string_view contents,
                                     std::optional<Task> task = std::nullopt,
                                     const std::string& source_name = "<input>");

std::vector<IpisRecord> LoadRecords(const std::filesystem::path& path,
                                    std::optional<Task> task = std::nullopt);

// One JSON object per line.
std::string SerializeRecords(const std::vector<IpisRecord>& records);

struct SplitStats {
  Task task = Task::kProofreading;
  Split split = Split::kUnknown;
  std::size_t count = 0;
};

// Looks for a _train_/_dev_/_test_ component in the id.
Split InferSplit(std::string_view ipis_id);

// Task and split default to what the records say (first record wins);
// explicit values override.
SplitStats ComputeStats(const std::vector<IpisRecord>& records,
                        std::optional<Task> task = std::nullopt,
                        std::optional<Split> split = std::nullopt);

std::vector<IpisRecord> FilterByDirection(const std::vector<IpisRecord>& records,
                                          Language source, Language target);

}  // namespace ipis

#endif  // IPIS_CORPUS_H_
