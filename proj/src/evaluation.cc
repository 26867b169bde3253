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

#include "ipis/evaluation.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "ipis/errors.h"

namespace ipis {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kListedIds = 10;

std::string ListIds(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < kListedIds; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > kListedIds) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

std::string Fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string PadLeft(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string PadRight(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

Json ProofScoresJson(const ProofScores& s) {
  return Json{{"accuracy", s.accuracy}, {"precision", s.precision}, {"recall", s.recall},
              {"f1", s.f1},             {"tp", s.tp},               {"fp", s.fp},
              {"fn", s.fn}};
}

Json MtScoresJson(const MtScores& s) {
  return Json{{"bleu", s.bleu}, {"chrf", s.chrf}, {"chrf_pp", s.chrf_pp}};
}

MtScores MtScoresFromJson(const Json& j) {
  return MtScores{j.at("bleu").get<double>(), j.at("chrf").get<double>(),
                  j.at("chrf_pp").get<double>()};
}

MtScores SentenceMtScores(std::string_view pred, std::string_view ref, bool lowercase) {
  BleuOptions bleu;
  bleu.lowercase = lowercase;
  ChrfOptions chrf;
  chrf.lowercase = lowercase;
  ChrfOptions chrf_pp = ChrfOptions::ChrfPlusPlus();
  chrf_pp.lowercase = lowercase;
  return MtScores{BleuFromStats(SentenceBleuStats(pred, ref, bleu)),
                  ChrfFromStats(SentenceChrfStats(pred, ref, chrf), chrf.beta),
                  ChrfFromStats(SentenceChrfStats(pred, ref, chrf_pp), chrf_pp.beta)};
}

// Table cell width for a percentage such as "100.00".
constexpr std::size_t kNum = 6;

std::size_t LabelWidth(const std::vector<std::string>& labels) {
  std::size_t w = 8;
  for (const std::string& l : labels) w = std::max(w, l.size());
  return w;
}

std::optional<Language> LanguageField(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return ParseLanguage(it->get<std::string>());
}

}  // namespace

std::map<std::string, Prediction> ParsePredictions(std::string_view contents,
                                                   const std::string& source_name,
                                                   const std::string& scenario) {
  std::map<std::string, Prediction> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    const std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);

    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": malformed JSON: " + e.what());
    }
    if (!obj.is_object()) throw ValidationError(where + ": prediction is not an object");
    const auto id = obj.find("ipis_id");
    if (id == obj.end() || !id->is_string()) {
      throw ValidationError(where + ": prediction without a string ipis_id");
    }
    if (const auto s = obj.find("scenario");
        !scenario.empty() && s != obj.end() && s->is_string() && *s != scenario) {
      continue;
    }
    Prediction p;
    p.ipis_id = id->get<std::string>();
    const auto output = obj.find("output");
    if (output != obj.end() && output->is_string()) {
      p.text = output->get<std::string>();
    } else if (obj.contains("error")) {
      p.failed = true;
    } else {
      throw ValidationError(where + ": prediction for " + p.ipis_id +
                            " has neither a string output nor an error");
    }
    const auto existing = out.find(p.ipis_id);
    if (existing == out.end() || existing->second.failed || !p.failed) {
      out.insert_or_assign(p.ipis_id, std::move(p));
    }
  }
  return out;
}

std::map<std::string, Prediction> LoadPredictions(const std::filesystem::path& path,
                                                  const std::string& scenario) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open predictions " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParsePredictions(buf.str(), path.string(), scenario);
}

std::vector<Prediction> AlignPredictions(const std::vector<IpisRecord>& records,
                                         const std::map<std::string, Prediction>& preds) {
  std::vector<Prediction> aligned;
  aligned.reserve(records.size());
  std::vector<std::string> missing;
  std::set<std::string_view> known;
  for (const IpisRecord& r : records) {
    known.insert(r.ipis_id);
    const auto it = preds.find(r.ipis_id);
    if (it == preds.end()) {
      missing.push_back(r.ipis_id);
    } else {
      aligned.push_back(it->second);
    }
  }
  std::vector<std::string> unknown;
  for (const auto& [id, _] : preds) {
    if (!known.count(id)) unknown.push_back(id);
  }
  if (!missing.empty() || !unknown.empty()) {
    std::string msg = "predictions do not match the dataset";
    if (!missing.empty()) msg += "; missing ids: " + ListIds(missing);
    if (!unknown.empty()) msg += "; ids not in the dataset: " + ListIds(unknown);
    throw ValidationError(msg);
  }
  return aligned;
}

Json RunManifest::ToJson() const {
  return Json{{"command", command},
              {"config", config},
              {"version", version},
              {"timestamp", timestamp}};
}

std::string ResolveTimestamp(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    long long value = 0;
    const char* end = epoch + std::char_traits<char>::length(epoch);
    const auto [ptr, ec] = std::from_chars(epoch, end, value);
    if (ec != std::errc() || ptr != end || value < 0) {
      throw UsageError(std::string("SOURCE_DATE_EPOCH is not a number of seconds: ") + epoch);
    }
    t = static_cast<std::time_t>(value);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json MetricConfig(bool lowercase) {
  return Json{
      {"proofreading", "edit-set precision/recall over normalized bags, multiset Jaccard "
                       "accuracy, micro-aggregated"},
      {"bleu",
       {{"max_order", 4}, {"smoothing", "none"}, {"tokenizer", "ipis"}, {"lowercase", lowercase}}},
      {"chrf", {{"char_order", 6}, {"word_order", 0}, {"beta", 2.0}, {"lowercase", lowercase}}},
      {"chrf_pp",
       {{"char_order", 6}, {"word_order", 2}, {"beta", 2.0}, {"lowercase", lowercase}}}};
}

ProofReport EvaluateProofreading(const std::vector<IpisRecord>& records,
                                 const std::vector<Prediction>& predictions,
                                 const Stoplist& stoplist, const std::string& scenario,
                                 bool lowercase_mt) {
  if (records.size() != predictions.size()) {
    throw ValidationError("record and prediction counts differ");
  }
  ProofReport report;
  report.scenario = scenario;
  report.count = records.size();
  ProofCounts total;
  std::vector<std::string> preds;
  std::vector<std::string> refs;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const IpisRecord& r = records[i];
    const Prediction& p = predictions[i];
    if (r.task() != Task::kProofreading) {
      throw ValidationError(r.ipis_id + " is not a proofreading record");
    }
    const ProofCounts counts = CountEdits(Normalize(r.source, stoplist),
                                          Normalize(r.target, stoplist),
                                          Normalize(p.text, stoplist));
    total += counts;
    report.per_instance.push_back({r.ipis_id, ScoreCounts(counts), p.failed});
    if (p.failed) ++report.errors;
    preds.push_back(p.text);
    refs.push_back(r.target);
  }
  report.corpus = ScoreCounts(total);
  report.mt = CorpusMtScores(preds, refs, lowercase_mt);
  return report;
}

Json ProofReportToJson(const ProofReport& report, const RunManifest& manifest) {
  Json corpus = ProofScoresJson(report.corpus);
  corpus.update(MtScoresJson(report.mt));
  corpus["count"] = report.count;
  corpus["errors"] = report.errors;

  Json per_instance = Json::array();
  for (const ProofInstance& inst : report.per_instance) {
    Json row{{"ipis_id", inst.ipis_id}};
    row.update(ProofScoresJson(inst.scores));
    if (inst.failed) row["error"] = true;
    per_instance.push_back(std::move(row));
  }
  return Json{{"task", "proofreading"},
              {"scenario", report.scenario},
              {"corpus", std::move(corpus)},
              {"per_instance", std::move(per_instance)},
              {"config", manifest.config},
              {"manifest", manifest.ToJson()}};
}

ProofReport ProofReportFromJson(const Json& j) {
  try {
    if (j.at("task") != "proofreading") throw ValidationError("not a proofreading report");
    ProofReport r;
    r.scenario = j.at("scenario").get<std::string>();
    const Json& c = j.at("corpus");
    r.corpus.accuracy = c.at("accuracy").get<double>();
    r.corpus.precision = c.at("precision").get<double>();
    r.corpus.recall = c.at("recall").get<double>();
    r.corpus.f1 = c.at("f1").get<double>();
    r.corpus.tp = c.at("tp").get<std::size_t>();
    r.corpus.fp = c.at("fp").get<std::size_t>();
    r.corpus.fn = c.at("fn").get<std::size_t>();
    r.mt = MtScoresFromJson(c);
    r.count = c.at("count").get<std::size_t>();
    r.errors = c.at("errors").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed proofreading report: ") + e.what());
  }
}

std::string ProofTable(const std::vector<ProofReport>& rows) {
  std::vector<std::string> labels;
  for (const ProofReport& r : rows) labels.push_back(r.scenario);
  const std::size_t lw = LabelWidth(labels);
  auto num = [](const std::string& s) { return PadLeft(s, kNum); };

  std::string out;
  out += PadRight("Scenario", lw) + " || " + num("Acc") + " | " + num("Prec") + " " +
         num("Rec") + " " + num("F1") + " | " + num("BLEU") + " " + num("chrF") + " " +
         num("chrF++") + "\n";
  out += std::string(lw, '-') + "-++-" + std::string(kNum, '-') + "-+-" +
         std::string(3 * kNum + 2, '-') + "-+-" + std::string(3 * kNum + 2, '-') + "\n";
  for (const ProofReport& r : rows) {
    out += PadRight(r.scenario, lw) + " || " + num(Fixed2(r.corpus.accuracy)) + " | " +
           num(Fixed2(r.corpus.precision)) + " " + num(Fixed2(r.corpus.recall)) + " " +
           num(Fixed2(r.corpus.f1)) + " | " + num(Fixed2(r.mt.bleu)) + " " +
           num(Fixed2(r.mt.chrf)) + " " + num(Fixed2(r.mt.chrf_pp)) + "\n";
  }
  return out;
}

std::string DirectionName(Direction d) {
  return std::string(LanguageCode(d.source)) + "->" + std::string(LanguageCode(d.target));
}

const MtCell* MtReport::Find(Direction d, Language prompt_language) const {
  for (const MtCell& c : cells) {
    if (c.direction == d && c.prompt_language == prompt_language) return &c;
  }
  return nullptr;
}

MtReport EvaluateTranslation(const std::vector<IpisRecord>& records,
                             const std::vector<Prediction>& predictions,
                             const std::string& scenario, bool lowercase) {
  if (records.size() != predictions.size()) {
    throw ValidationError("record and prediction counts differ");
  }
  MtReport report;
  report.scenario = scenario;
  report.count = records.size();

  struct Group {
    std::vector<std::string> preds;
    std::vector<std::string> refs;
  };
  std::map<std::pair<Direction, Language>, Group> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const IpisRecord& r = records[i];
    const Prediction& p = predictions[i];
    if (!r.source_language || !r.target_language || !r.prompt_language) {
      throw ValidationError(r.ipis_id + " is not a translation record");
    }
    const Direction d{*r.source_language, *r.target_language};
    report.per_instance.push_back({r.ipis_id, d, *r.prompt_language,
                                   SentenceMtScores(p.text, r.target, lowercase), p.failed});
    if (p.failed) ++report.errors;
    Group& g = groups[{d, *r.prompt_language}];
    g.preds.push_back(p.text);
    g.refs.push_back(r.target);
  }

  for (Direction d : {Direction{Language::kPL, Language::kEN},
                      Direction{Language::kEN, Language::kPL}}) {
    for (Language prompt : {Language::kPL, Language::kEN}) {
      const auto it = groups.find({d, prompt});
      if (it == groups.end()) {
        report.warnings.push_back("no records for " + DirectionName(d) + " with " +
                                  std::string(LanguageCode(prompt)) +
                                  " user prompt; cell omitted");
        continue;
      }
      report.cells.push_back(
          {d, prompt, it->second.preds.size(),
           CorpusMtScores(it->second.preds, it->second.refs, lowercase)});
    }
  }
  return report;
}

Json MtReportToJson(const MtReport& report, const RunManifest& manifest) {
  Json cells = Json::array();
  for (const MtCell& c : report.cells) {
    Json cell{{"direction", DirectionName(c.direction)},
              {"prompt_language", LanguageCode(c.prompt_language)},
              {"count", c.count}};
    cell.update(MtScoresJson(c.scores));
    cells.push_back(std::move(cell));
  }
  Json per_instance = Json::array();
  for (const MtInstance& inst : report.per_instance) {
    Json row{{"ipis_id", inst.ipis_id},
             {"direction", DirectionName(inst.direction)},
             {"prompt_language", LanguageCode(inst.prompt_language)}};
    row.update(MtScoresJson(inst.scores));
    if (inst.failed) row["error"] = true;
    per_instance.push_back(std::move(row));
  }
  return Json{{"task", "translation"},
              {"scenario", report.scenario},
              {"corpus",
               {{"count", report.count}, {"errors", report.errors}, {"cells", cells}}},
              {"warnings", report.warnings},
              {"per_instance", std::move(per_instance)},
              {"config", manifest.config},
              {"manifest", manifest.ToJson()}};
}

MtReport MtReportFromJson(const Json& j) {
  try {
    if (j.at("task") != "translation") throw ValidationError("not a translation report");
    MtReport r;
    r.scenario = j.at("scenario").get<std::string>();
    const Json& c = j.at("corpus");
    r.count = c.at("count").get<std::size_t>();
    r.errors = c.at("errors").get<std::size_t>();
    for (const Json& cell : c.at("cells")) {
      const std::string dir = cell.at("direction").get<std::string>();
      const auto src = ParseLanguage(dir.substr(0, 2));
      const auto tgt = dir.size() == 6 ? ParseLanguage(dir.substr(4)) : std::nullopt;
      const auto prompt = LanguageField(cell, "prompt_language");
      if (!src || !tgt || !prompt) throw ValidationError("bad cell " + cell.dump());
      r.cells.push_back({Direction{*src, *tgt}, *prompt, cell.at("count").get<std::size_t>(),
                         MtScoresFromJson(cell)});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed translation report: ") + e.what());
  }
}

std::string MtTable(const std::vector<MtReport>& rows) {
  std::vector<std::string> labels;
  for (const MtReport& r : rows) labels.push_back(r.scenario);
  const std::size_t lw = LabelWidth(labels);
  const std::size_t cell_w = 3 * kNum + 2;
  const Direction dirs[] = {{Language::kPL, Language::kEN}, {Language::kEN, Language::kPL}};
  const Language prompts[] = {Language::kPL, Language::kEN};

  auto dir_title = [](Direction d) {
    return d.source == Language::kPL ? std::string("Polish->English")
                                     : std::string("English->Polish");
  };
  std::string line1 = std::string(lw, ' ');
  std::string line2 = std::string(lw, ' ');
  std::string line3 = PadRight("Scenario", lw);
  std::string rule = std::string(lw, '-');
  for (Direction d : dirs) {
    line1 += " || " + PadRight(dir_title(d), 2 * cell_w + 3);
    line2 += " || ";
    line3 += " || ";
    rule += "-++-";
    for (std::size_t p = 0; p < 2; ++p) {
      if (p) {
        line2 += " | ";
        line3 += " | ";
        rule += "-+-";
      }
      line2 += PadRight(std::string(LanguageCode(prompts[p])) + " user prompt", cell_w);
      line3 += PadLeft("BLEU", kNum) + " " + PadLeft("chrF", kNum) + " " +
               PadLeft("chrF++", kNum);
      rule += std::string(cell_w, '-');
    }
  }
  auto rstrip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  std::string out = rstrip(line1) + "\n" + rstrip(line2) + "\n" + line3 + "\n" + rule + "\n";
  for (const MtReport& r : rows) {
    std::string line = PadRight(r.scenario, lw);
    for (Direction d : dirs) {
      line += " || ";
      for (std::size_t p = 0; p < 2; ++p) {
        if (p) line += " | ";
        if (const MtCell* c = r.Find(d, prompts[p])) {
          line += PadLeft(Fixed2(c->scores.bleu), kNum) + " " +
                  PadLeft(Fixed2(c->scores.chrf), kNum) + " " +
                  PadLeft(Fixed2(c->scores.chrf_pp), kNum);
        } else {
          line += PadLeft("-", kNum) + " " + PadLeft("-", kNum) + " " + PadLeft("-", kNum);
        }
      }
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace ipis
