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

// Chat message assembly for the nine evaluation scenarios:
//
//   default, default-pl, default-en    zero-shot
//   fewshot, fewshot-pl, fewshot-en    k exemplar user/assistant pairs first
//   tuned,   tuned-pl,   tuned-en      zero-shot, meant for a tuned model
//
// The -pl/-en suffix attaches the system prompt in that language.

#ifndef IPIS_PROMPTS_H_
#define IPIS_PROMPTS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ipis/corpus.h"
#include "json.hpp"

namespace ipis {

enum class ScenarioBase { kDefault, kFewshot, kTuned };

struct Scenario {
  ScenarioBase base = ScenarioBase::kDefault;
  std::optional<Language> system_language;

  bool operator==(const Scenario&) const = default;
  std::string Name() const;
  bool IsFewshot() const { return base == ScenarioBase::kFewshot; }
};

std::optional<Scenario> ParseScenario(std::string_view name);
const std::array<Scenario, 9>& AllScenarios();

enum class Role { kUser, kAssistant };
std::string_view RoleName(Role role);

struct Turn {
  Role role;
  std::string text;
  bool operator==(const Turn&) const = default;
};

struct PromptBundle {
  std::string ipis_id;
  Scenario scenario;
  std::optional<std::string> system;
  std::vector<Turn> turns;
  bool operator==(const PromptBundle&) const = default;
};

struct SystemPromptAsset {
  Task task;
  Language language;
  std::string text;
};

// System prompt texts keyed by (task, language). The English texts are
// compiled in; Polish ones must be loaded from files.
class PromptAssets {
 public:
  static PromptAssets Builtin();

  void Add(SystemPromptAsset asset);
  void LoadFile(const std::filesystem::path& path, Task task, Language language);
  const SystemPromptAsset* Find(Task task, Language language) const;

 private:
  std::map<std::pair<Task, Language>, SystemPromptAsset> assets_;
};

struct BuildOptions {
  int k = 3;  // exemplars for fewshot scenarios
  std::uint64_t seed = 0;
};

// Prompt and source joined by one space (none if the prompt already ends in
// whitespace).
std::string UserText(const IpisRecord& record);

// Exemplars come from `pool` entries of the same task (and, for translation,
// the same direction), never the record itself. Throws UsageError when k
// exceeds the eligible pool or a -pl/-en asset is missing.
PromptBundle BuildBundle(const IpisRecord& record, const Scenario& scenario,
                         const std::vector<IpisRecord>& pool,
                         const PromptAssets& assets,
                         const BuildOptions& options = {});

// Same, with an explicitly chosen system prompt. A task mismatch between the
// asset and the record is a UsageError.
PromptBundle BuildBundle(const IpisRecord& record, const Scenario& scenario,
                         const std::vector<IpisRecord>& pool,
                         const SystemPromptAsset* system,
                         const BuildOptions& options = {});

// [{"role": "system"|"user"|"assistant", "content": ...}, ...]
nlohmann::ordered_json ChatMessages(const PromptBundle& bundle);

nlohmann::ordered_json BundleToJson(const PromptBundle& bundle);

}  // namespace ipis

#endif  // IPIS_PROMPTS_H_
