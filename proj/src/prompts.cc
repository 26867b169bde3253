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

#include "ipis/prompts.h"

#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "ipis/errors.h"

namespace ipis {

// Generated from assets/*.txt at build time.
extern const char kProofreadingSystemPromptEn[];
extern const char kTranslationSystemPromptEn[];

namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool Eligible(const IpisRecord& candidate, const IpisRecord& record) {
  if (candidate.ipis_id == record.ipis_id) return false;
  if (candidate.task() != record.task()) return false;
  if (record.task() == Task::kTranslation) {
    return candidate.source_language == record.source_language &&
           candidate.target_language == record.target_language;
  }
  return true;
}

// Deterministic for a given (seed, ipis_id): partial Fisher-Yates driven
// directly by mt19937_64, whose output sequence is fixed by the standard.
std::vector<const IpisRecord*> SampleExemplars(const IpisRecord& record,
                                               const std::vector<IpisRecord>& pool,
                                               int k, std::uint64_t seed) {
  std::vector<const IpisRecord*> eligible;
  for (const IpisRecord& r : pool) {
    if (Eligible(r, record)) eligible.push_back(&r);
  }
  if (k < 1) throw UsageError("fewshot scenarios need k >= 1");
  if (static_cast<std::size_t>(k) > eligible.size()) {
    throw UsageError("k = " + std::to_string(k) + " exceeds the " +
                     std::to_string(eligible.size()) +
                     " eligible fewshot exemplars for " + record.ipis_id);
  }
  std::mt19937_64 rng(seed ^ Fnv1a(record.ipis_id));
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
  }
  eligible.resize(static_cast<std::size_t>(k));
  return eligible;
}

}  // namespace

std::string Scenario::Name() const {
  std::string name = base == ScenarioBase::kDefault   ? "default"
                     : base == ScenarioBase::kFewshot ? "fewshot"
                                                      : "tuned";
  if (system_language) {
    name += *system_language == Language::kPL ? "-pl" : "-en";
  }
  return name;
}

const std::array<Scenario, 9>& AllScenarios() {
  static const std::array<Scenario, 9> kAll = [] {
    std::array<Scenario, 9> all;
    std::size_t i = 0;
    for (ScenarioBase base :
         {ScenarioBase::kDefault, ScenarioBase::kFewshot, ScenarioBase::kTuned}) {
      all[i++] = Scenario{base, std::nullopt};
      all[i++] = Scenario{base, Language::kPL};
      all[i++] = Scenario{base, Language::kEN};
    }
    return all;
  }();
  return kAll;
}

std::optional<Scenario> ParseScenario(std::string_view name) {
  for (const Scenario& s : AllScenarios()) {
    if (s.Name() == name) return s;
  }
  return std::nullopt;
}

std::string_view RoleName(Role role) {
  return role == Role::kUser ? "user" : "assistant";
}

PromptAssets PromptAssets::Builtin() {
  PromptAssets assets;
  assets.Add({Task::kProofreading, Language::kEN, kProofreadingSystemPromptEn});
  assets.Add({Task::kTranslation, Language::kEN, kTranslationSystemPromptEn});
  return assets;
}

void PromptAssets::Add(SystemPromptAsset asset) {
  const auto key = std::make_pair(asset.task, asset.language);
  assets_.insert_or_assign(key, std::move(asset));
}

void PromptAssets::LoadFile(const std::filesystem::path& path, Task task,
                            Language language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open system prompt " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  Add({task, language, std::move(text)});
}

const SystemPromptAsset* PromptAssets::Find(Task task, Language language) const {
  const auto it = assets_.find({task, language});
  return it == assets_.end() ? nullptr : &it->second;
}

std::string UserText(const IpisRecord& record) {
  if (record.prompt.empty()) return record.source;
  const char last = record.prompt.back();
  if (last == ' ' || last == '\n' || last == '\t') return record.prompt + record.source;
  return record.prompt + " " + record.source;
}

PromptBundle BuildBundle(const IpisRecord& record, const Scenario& scenario,
                         const std::vector<IpisRecord>& pool,
                         const PromptAssets& assets, const BuildOptions& options) {
  const SystemPromptAsset* system = nullptr;
  if (scenario.system_language) {
    system = assets.Find(record.task(), *scenario.system_language);
    if (system == nullptr) {
      throw UsageError("no " + std::string(LanguageCode(*scenario.system_language)) +
                       " system prompt loaded for the " +
                       std::string(TaskName(record.task())) + " task");
    }
  }
  return BuildBundle(record, scenario, pool, system, options);
}

PromptBundle BuildBundle(const IpisRecord& record, const Scenario& scenario,
                         const std::vector<IpisRecord>& pool,
                         const SystemPromptAsset* system, const BuildOptions& options) {
  PromptBundle bundle;
  bundle.ipis_id = record.ipis_id;
  bundle.scenario = scenario;
  if (scenario.system_language) {
    if (system == nullptr) {
      throw UsageError("scenario " + scenario.Name() + " needs a system prompt");
    }
    if (system->task != record.task()) {
      throw UsageError("a " + std::string(TaskName(system->task)) +
                       " system prompt cannot be used for " + record.ipis_id +
                       ", which is a " + std::string(TaskName(record.task())) +
                       " record");
    }
    bundle.system = system->text;
  }
  if (scenario.IsFewshot()) {
    for (const IpisRecord* ex : SampleExemplars(record, pool, options.k, options.seed)) {
      bundle.turns.push_back({Role::kUser, UserText(*ex)});
      bundle.turns.push_back({Role::kAssistant, ex->target});
    }
  }
  bundle.turns.push_back({Role::kUser, UserText(record)});
  return bundle;
}

nlohmann::ordered_json ChatMessages(const PromptBundle& bundle) {
  nlohmann::ordered_json messages = nlohmann::ordered_json::array();
  if (bundle.system) {
    messages.push_back({{"role", "system"}, {"content", *bundle.system}});
  }
  for (const Turn& t : bundle.turns) {
    messages.push_back({{"role", RoleName(t.role)}, {"content", t.text}});
  }
  return messages;
}

nlohmann::ordered_json BundleToJson(const PromptBundle& bundle) {
  nlohmann::ordered_json j;
  j["ipis_id"] = bundle.ipis_id;
  j["scenario"] = bundle.scenario.Name();
  j["messages"] = ChatMessages(bundle);
  return j;
}

}  // namespace ipis
