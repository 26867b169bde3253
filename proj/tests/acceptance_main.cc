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


// Acceptance checks, one line per criterion: PASS, FAIL or SKIP followed by
// the criterion number, a short name and details. Exits non-zero on FAIL.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ipis/cli.h"
#include "ipis/corpus.h"
#include "ipis/evaluation.h"
#include "ipis/inference.h"
#include "ipis/metrics.h"
#include "ipis/normalize.h"
#include "ipis/notation.h"
#include "ipis/rewriter.h"
#include "ipis/stub_server.h"
#include "json.hpp"
#include "oracles.h"
#include "test_util.h"

namespace {

using namespace ipis;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

enum class Outcome { kPass, kFail, kSkip };

struct Result {
  Outcome outcome = Outcome::kPass;
  std::string detail;
};

Result Fail(std::string detail) { return {Outcome::kFail, std::move(detail)}; }

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string Fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

Result OscarVariants() {
  const std::vector<std::string> variants = {
      "Tegoroczni laureaci i tegoroczne laureatki Oscarów pozowali i pozowały na czerwonym dywanie.",
      "Tegoroczne laureatki i tegoroczni laureaci Oscarów pozowały i  pozowali na czerwonym dywanie.",
      "Tegoroczni laureaci i tegoroczne laureatki Oscarów pozowali/pozowały na czerwonym dywanie.",
      "Tegoroczni laureaci/Tegoroczne laureatki Oscarów pozowali/pozowały na czerwonym dywanie.",
      "Tegoroczne laureatki/Tegoroczni laureaci Oscarów pozowały/pozowali na czerwonym dywanie.",
      "Tegoroczni/Tegoroczne laureaci/laureatki Oscarów pozowali/pozowały na czerwonym dywanie.",
      "Tegoroczni/Tegoroczne laureaci/laureatki Oscarów pozowa*li/ły na czerwonym dywanie.",
      "Tegoroczn*i/e laurea*ci/tki Oscarów pozowa*li/ły na czerwonym dywanie.",
  };
  const NormalizedBag expected({"tegoroczni", "tegoroczne", "laureaci", "laureatki", "oscarów",
                                "pozowali", "pozowały", "na", "czerwonym", "dywanie"},
                               10);
  const Stoplist stoplist = Stoplist::Polish();
  double worst = 0;
  for (const std::string& v : variants) {
    const auto start = Clock::now();
    const NormalizedBag bag = Normalize(v, stoplist);
    worst = std::max(worst, MsSince(start));
    if (!(bag == expected) || bag.size() != 10) return Fail("wrong bag for: " + v);
  }
  if (worst >= 1.0) return Fail("slowest variant took " + Fmt(worst) + " ms");
  return {Outcome::kPass, "8 variants, slowest " + Fmt(worst) + " ms"};
}

Result WorkedExampleExpansion() {
  const IpisRecord r = LoadRecords(testing::FixturePath("proofreading_record.json"))[0];
  std::vector<std::vector<std::string>> found;
  for (const std::string& t : Tokenize(r.target)) {
    const SegmentNode node = ParseToken(t);
    if (std::holds_alternative<StarForm>(node)) found.push_back(Expand(node));
  }
  const std::vector<std::vector<std::string>> expected = {{"Polaków", "Polek"},
                                                          {"pianistów", "pianistek"},
                                                          {"pedagogów", "pedagożek"},
                                                          {"uczniów", "uczennic"},
                                                          {"mieli", "miały"}};
  if (found != expected) return Fail("expansions differ");
  return {Outcome::kPass, "5 star forms"};
}

Result MetricIdentities() {
  const auto records = LoadRecords(testing::FixturePath("proofreading_50.jsonl"));
  std::vector<Prediction> gold;
  std::vector<Prediction> src;
  for (const IpisRecord& r : records) {
    gold.push_back({r.ipis_id, r.target, false});
    src.push_back({r.ipis_id, r.source, false});
  }
  const Stoplist stoplist = Stoplist::Polish();
  const ProofReport g = EvaluateProofreading(records, gold, stoplist, "gold", false);
  for (double v : {g.corpus.accuracy, g.corpus.precision, g.corpus.recall, g.corpus.f1, g.mt.bleu,
                   g.mt.chrf, g.mt.chrf_pp}) {
    if (v != 100.0) return Fail("pred == gold scored " + Fmt(v));
  }
  const ProofReport s = EvaluateProofreading(records, src, stoplist, "src", false);
  if (s.corpus.recall != 0.0) return Fail("pred == source recall " + Fmt(s.corpus.recall));
  return {Outcome::kPass, "identity 100 on all metrics, unchanged source recall 0"};
}

Result OracleSuite() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t alphabet = 1 + rng() % 8;
    auto random_bag = [&] {
      oracle::Multiset m;
      const std::size_t n = rng() % 13;
      for (std::size_t j = 0; j < n; ++j) m.push_back(std::string(1, static_cast<char>('a' + rng() % alphabet)));
      return m;
    };
    const auto src = random_bag();
    const auto gold = random_bag();
    const auto pred = random_bag();
    const ProofScores s = ProofScoresFor(NormalizedBag(src, src.size()), NormalizedBag(gold, gold.size()),
                                         NormalizedBag(pred, pred.size()));
    const oracle::Proof o = oracle::ProofScores(oracle::ProofCounts(src, gold, pred));
    for (auto [a, b] : {std::pair{s.accuracy, o.accuracy}, {s.precision, o.precision},
                        {s.recall, o.recall}, {s.f1, o.f1}}) {
      worst = std::max(worst, std::abs(a - b));
    }
  }
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> preds;
    std::vector<std::string> refs;
    const std::size_t n = 1 + rng() % 4;
    for (std::size_t j = 0; j < n; ++j) {
      refs.push_back(oracle::RandomSentence(rng, 10));
      preds.push_back(oracle::Mutate(refs.back(), rng));
    }
    worst = std::max(worst, std::abs(CorpusBleu(preds, refs) - oracle::Bleu(preds, refs)));
    worst = std::max(worst, std::abs(Chrf(preds, refs) - oracle::Chrf(preds, refs, 0)));
    worst = std::max(worst, std::abs(Chrf(preds, refs, ChrfOptions::ChrfPlusPlus()) -
                                     oracle::Chrf(preds, refs, 2)));
  }
  const double ms = MsSince(start);
  if (worst > 1e-9) return Fail("max deviation " + Fmt(worst));
  if (ms >= 10000) return Fail("took " + Fmt(ms) + " ms");
  return {Outcome::kPass, "1000 proof + 200 BLEU/chrF cases, max deviation " + Fmt(worst) + ", " +
                              Fmt(ms) + " ms"};
}

Result RewriterClosure() {
  const auto start = Clock::now();
  const Lexicon lexicon = Lexicon::Load(testing::DataPath("lexicon_pl.tsv"));
  const auto lines = testing::Lines(testing::ReadAll(testing::FixturePath("rewriter_corpus.txt")));
  if (lines.size() < 20 || lexicon.size() < 50) return Fail("fixture too small");
  const GenreProfiles profiles = GenreProfiles::Builtin();
  const GenreProfile* profile = profiles.Find("default");
  const Stoplist stoplist = Stoplist::Polish();
  std::string detail;
  for (Strategy s : {Strategy::kStar, Strategy::kSlash, Strategy::kCoordination}) {
    RewriteOptions opts;
    opts.strategy = s;
    ProofCounts total;
    for (const std::string& line : lines) {
      const RewriteResult r = Rewrite(line, lexicon, *profile, opts);
      if (!SelfCheck(line, r.text, r.plan)) return Fail("residue differs: " + line);
      const NormalizedBag out = Normalize(r.text, stoplist);
      total += CountEdits(Normalize(line, stoplist), out, out);
    }
    const ProofScores sc = ScoreCounts(total);
    if (sc.f1 != 100.0) return Fail(std::string(StrategyName(s)) + " F1 " + Fmt(sc.f1));
    detail += std::string(StrategyName(s)) + " F1 100 (" + std::to_string(sc.tp) + " edits); ";
  }
  const double ms = MsSince(start);
  if (ms >= 1000) return Fail("took " + Fmt(ms) + " ms");
  return {Outcome::kPass, detail + Fmt(ms) + " ms"};
}

Result EndToEnd() {
  const auto start = Clock::now();
  StubOptions opts;
  opts.fail_substring = "ostatnim kwartale";
  opts.max_delay_ms = 10;
  StubServer server(opts);
  testing::TempDir dir;
  const std::string dataset = testing::FixturePath("proofreading_50.jsonl").string();
  const std::string preds = (dir / "gen.jsonl").string();
  const auto gen = testing::Cli({"generate", "--dataset", dataset, "--scenario", "default",
                                 "--endpoint", server.url(), "--out", preds, "--parallelism", "4",
                                 "--backoff-ms", "1"});
  if (gen.code != kExitOk) return Fail("generate exited " + std::to_string(gen.code) + ": " + gen.err);
  const auto records = LoadRecords(dataset);
  const auto log = LoadGenerationLog(preds);
  if (log.size() != records.size()) return Fail("log has " + std::to_string(log.size()) + " lines");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (log[i].ipis_id != records[i].ipis_id) return Fail("order differs at " + std::to_string(i));
    if (!log[i].ok()) ++errors;
  }
  if (errors != 1) return Fail(std::to_string(errors) + " error records");
  if (server.max_in_flight() > 4) return Fail("more than 4 requests in flight");

  const auto eval = testing::Cli({"eval-proof", "--dataset", dataset, "--pred", preds, "--out",
                                  dir.path().string()});
  if (eval.code != kExitOk) return Fail("eval-proof exited " + std::to_string(eval.code) + ": " + eval.err);
  const auto report = ordered_json::parse(testing::ReadAll(dir / "report.json"));
  const ProofReport parsed = ProofReportFromJson(report);
  if (parsed.count != 50 || parsed.errors != 1) return Fail("report counts wrong");
  const double ms = MsSince(start);
  if (ms >= 5000) return Fail("took " + Fmt(ms) + " ms");
  return {Outcome::kPass, "50 records, 1 error record, in order, " + Fmt(ms) + " ms"};
}

Result DatasetStats() {
  const char* dir = std::getenv("IPIS_DATASET_DIR");
  if (dir == nullptr || !std::filesystem::is_directory(dir)) {
    return {Outcome::kSkip, "IPIS_DATASET_DIR not set or not a directory"};
  }
  const auto r = testing::Cli({"stats", "--json", dir});
  if (r.code != kExitOk) return Fail("stats exited " + std::to_string(r.code) + ": " + r.err);
  std::map<std::string, long> counts;
  for (const auto& row : ordered_json::parse(r.out)) {
    counts[row["task"].get<std::string>() + "/" + row["split"].get<std::string>()] =
        row["count"].get<long>();
  }
  const std::map<std::string, long> expected = {
      {"proofreading/train", 23532}, {"proofreading/dev", 2732}, {"proofreading/test", 5278},
      {"translation/train", 1728},   {"translation/dev", 304},   {"translation/test", 456}};
  std::string detail;
  bool ok = true;
  for (const auto& [key, n] : expected) {
    detail += key + "=" + std::to_string(counts[key]) + " ";
    ok = ok && counts[key] == n;
  }
  return {ok ? Outcome::kPass : Outcome::kFail, detail};
}

// Model scores need the fine-tuned weights and cannot be reproduced here; what
// is checked is that arbitrary outputs produce tables in the expected layout.
Result TableLayouts() {
  const auto records = LoadRecords(testing::FixturePath("proofreading_50.jsonl"));
  std::vector<Prediction> preds;
  for (const IpisRecord& r : records) preds.push_back({r.ipis_id, r.source, false});
  const ProofReport proof = EvaluateProofreading(records, preds, Stoplist::Polish(), "default", false);
  const std::string pt = ProofTable({proof});
  if (pt.find("Acc") == std::string::npos || pt.find("F1") == std::string::npos ||
      pt.find("chrF++") == std::string::npos || pt.find("default") == std::string::npos) {
    return Fail("proofreading table layout");
  }
  const auto mt_records = LoadRecords(testing::FixturePath("translation_12.jsonl"));
  std::vector<Prediction> mt_preds;
  for (const IpisRecord& r : mt_records) mt_preds.push_back({r.ipis_id, r.source, false});
  const MtReport mt = EvaluateTranslation(mt_records, mt_preds, "default", false);
  const std::string mtt = MtTable({mt});
  for (const char* needle : {"Polish->English", "English->Polish", "PL user prompt", "EN user prompt",
                             "BLEU", "chrF++", "default"}) {
    if (mtt.find(needle) == std::string::npos) return Fail(std::string("translation table lacks ") + needle);
  }
  if (mt.cells.size() != 4) return Fail("expected 4 translation cells");
  return {Outcome::kPass, "model scores not reproducible offline; table layouts verified"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"normalization of the eight inclusive variants", OscarVariants},
      {"star-form expansion of the worked example", WorkedExampleExpansion},
      {"metric identities", MetricIdentities},
      {"metric oracle suite", OracleSuite},
      {"rewriter closure", RewriterClosure},
      {"generate + eval-proof pipeline", EndToEnd},
      {"dataset statistics", DatasetStats},
      {"report table layouts", TableLayouts},
  };
  bool failed = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = Fail(std::string("exception: ") + e.what());
    }
    const char* tag = r.outcome == Outcome::kPass ? "PASS" : r.outcome == Outcome::kFail ? "FAIL" : "SKIP";
    std::cout << tag << ' ' << (i + 1) << ' ' << criteria[i].first << ": " << r.detail << '\n';
    failed = failed || r.outcome == Outcome::kFail;
  }
  return failed ? 1 : 0;
}
