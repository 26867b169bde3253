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

// Joins model predictions to dataset records and builds evaluation reports:
// a JSON document and an aligned text table per task.

#ifndef IPIS_EVALUATION_H_
#define IPIS_EVALUATION_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ipis/corpus.h"
#include "ipis/metrics.h"
#include "ipis/normalize.h"
#include "json.hpp"

namespace ipis {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct Prediction {
  std::string ipis_id;
  std::string text;     // empty for failed generations
  bool failed = false;  // an error record from generate
};

// One JSON object per line with ipis_id and output (or error), as written by
// generate. Lines carrying a different "scenario" are skipped when
// `scenario` is non-empty. A later successful line for an id replaces an
// earlier one; an error line never replaces a success.
std::map<std::string, Prediction> ParsePredictions(std::string_view contents,
                                                   const std::string& source_name,
                                                   const std::string& scenario = {});
std::map<std::string, Prediction> LoadPredictions(const std::filesystem::path& path,
                                                  const std::string& scenario = {});

// Predictions in record order. Throws ValidationError naming missing and
// unknown ids when the id sets differ.
std::vector<Prediction> AlignPredictions(const std::vector<IpisRecord>& records,
                                         const std::map<std::string, Prediction>& preds);

struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::string version{kToolVersion};
  std::string timestamp;

  nlohmann::ordered_json ToJson() const;
};

// `flag` verbatim if given; otherwise SOURCE_DATE_EPOCH or the current time
// as UTC ISO 8601. Throws UsageError for an unparsable epoch.
std::string ResolveTimestamp(const std::optional<std::string>& flag);

// Metric settings echoed into every report.
nlohmann::ordered_json MetricConfig(bool lowercase);

struct ProofInstance {
  std::string ipis_id;
  ProofScores scores;
  bool failed = false;
};

struct ProofReport {
  std::string scenario;
  std::vector<ProofInstance> per_instance;
  ProofScores corpus;  // micro-aggregated
  MtScores mt;         // corpus-level, prediction vs target
  std::size_t count = 0;
  std::size_t errors = 0;
};

ProofReport EvaluateProofreading(const std::vector<IpisRecord>& records,
                                 const std::vector<Prediction>& predictions,
                                 const Stoplist& stoplist, const std::string& scenario,
                                 bool lowercase_mt = false);

nlohmann::ordered_json ProofReportToJson(const ProofReport& report,
                                         const RunManifest& manifest);
// Reads back the scenario and corpus fields (per-instance rows are skipped).
ProofReport ProofReportFromJson(const nlohmann::ordered_json& j);

// Scenario || Acc | Prec Rec F1 | BLEU chrF chrF++
std::string ProofTable(const std::vector<ProofReport>& rows);

struct Direction {
  Language source;
  Language target;
  bool operator<(const Direction& o) const {
    return std::pair(source, target) < std::pair(o.source, o.target);
  }
  bool operator==(const Direction&) const = default;
};
std::string DirectionName(Direction d);  // "PL->EN"

struct MtCell {
  Direction direction;
  Language prompt_language;
  std::size_t count = 0;
  MtScores scores;
};

struct MtInstance {
  std::string ipis_id;
  Direction direction;
  Language prompt_language;
  MtScores scores;  // sentence-level
  bool failed = false;
};

struct MtReport {
  std::string scenario;
  std::vector<MtInstance> per_instance;
  std::vector<MtCell> cells;  // non-empty groups only, PL->EN first, PL prompt first
  std::vector<std::string> warnings;
  std::size_t count = 0;
  std::size_t errors = 0;

  const MtCell* Find(Direction d, Language prompt_language) const;
};

// Throws ValidationError if a record lacks language fields.
MtReport EvaluateTranslation(const std::vector<IpisRecord>& records,
                             const std::vector<Prediction>& predictions,
                             const std::string& scenario, bool lowercase = false);

nlohmann::ordered_json MtReportToJson(const MtReport& report, const RunManifest& manifest);
MtReport MtReportFromJson(const nlohmann::ordered_json& j);

// Scenario || PL->EN (PL prompt | EN prompt) || EN->PL (PL prompt | EN prompt),
// each cell BLEU chrF chrF++; "-" marks an empty group.
std::string MtTable(const std::vector<MtReport>& rows);

}  // namespace ipis

#endif  // IPIS_EVALUATION_H_
