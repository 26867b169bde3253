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

#include "ipis/cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "ipis/corpus.h"
#include "ipis/errors.h"
#include "ipis/evaluation.h"
#include "ipis/inference.h"
#include "ipis/normalize.h"
#include "ipis/notation.h"
#include "ipis/prompts.h"
#include "ipis/rewriter.h"
#include "ipis/unicode.h"

namespace ipis {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  out.flush();
  if (!out) throw Error("write to " + path.string() + " failed");
}

std::string Dump(const Json& j) {
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

std::string DumpLine(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace) + "\n";
}

// Positional words joined by spaces, else --input (or "-" for stdin), else stdin.
std::string ReadText(const std::vector<std::string>& words, const std::string& input,
                     std::istream& in) {
  if (!words.empty()) {
    std::string text;
    for (const std::string& w : words) {
      if (!text.empty()) text += ' ';
      text += w;
    }
    return text;
  }
  if (!input.empty() && input != "-") return ReadFile(input);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<Task> TaskOption(const std::string& name) {
  if (name.empty()) return std::nullopt;
  const std::optional<Task> task = ParseTask(name);
  if (!task) throw UsageError("unknown task '" + name + "' (proofreading or translation)");
  return task;
}

Scenario ScenarioOption(const std::string& name) {
  const std::optional<Scenario> s = ParseScenario(name);
  if (!s) {
    std::string all;
    for (const Scenario& sc : AllScenarios()) all += (all.empty() ? "" : ", ") + sc.Name();
    throw UsageError("unknown scenario '" + name + "' (one of " + all + ")");
  }
  return *s;
}

Json NodeJson(const std::string& token, const SegmentNode& node) {
  Json j{{"token", token}, {"kind", KindName(node)}};
  std::visit(
      [&j](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StarForm>) {
          j["root"] = n.root;
          j["masc_suffix"] = n.masc_suffix;
          j["fem_suffix"] = n.fem_suffix;
        } else if constexpr (std::is_same_v<T, SlashPair>) {
          j["left"] = n.left;
          j["right"] = n.right;
        } else if constexpr (std::is_same_v<T, RawToken>) {
          j["reason"] = n.reason;
        }
      },
      node);
  j["expansions"] = Expand(node);
  return j;
}

// Split named by the file stem (train/dev/test), for records whose ids do
// not carry one.
Split SplitFromFileName(const fs::path& path) {
  std::string stem = unicode::FoldCase(path.stem().string());
  for (char& c : stem) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = ' ';
  }
  std::istringstream words(stem);
  for (std::string w; words >> w;) {
    if (w == "train") return Split::kTrain;
    if (w == "dev" || w == "validation") return Split::kDev;
    if (w == "test") return Split::kTest;
  }
  return Split::kUnknown;
}

std::vector<fs::path> DatasetFiles(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    const fs::path p(input);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        const std::string ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".jsonl" || ext == ".json")) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw Error("no such file or directory: " + input);
    }
  }
  return files;
}

// ---------------------------------------------------------------------------

struct ExpandArgs {
  std::vector<std::string> words;
  std::string input;
  bool json = false;
};

int CmdExpand(const ExpandArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  const std::string text = ReadText(a.words, a.input, in);
  Json nodes = Json::array();
  for (const Token& t : TokenizeWithSpans(text)) {
    if (t.is_punct) continue;
    const SegmentNode node = ParseToken(t.text);
    if (a.json) {
      nodes.push_back(NodeJson(t.text, node));
      continue;
    }
    if (const auto* raw = std::get_if<RawToken>(&node)) {
      err << "warning: '" << t.text << "' is not valid notation (" << raw->reason << ")\n";
    }
    out << t.text << '\t';
    const std::vector<std::string> forms = Expand(node);
    for (std::size_t i = 0; i < forms.size(); ++i) out << (i ? " " : "") << forms[i];
    out << '\n';
  }
  if (a.json) out << Dump(nodes);
  return kExitOk;
}

struct NormalizeArgs {
  std::vector<std::string> words;
  std::string input;
  std::string stoplist;
  bool no_stoplist = false;
  bool json = false;
};

Stoplist StoplistOption(const std::string& path, bool none) {
  if (none && !path.empty()) throw UsageError("--stoplist and --no-stoplist are exclusive");
  if (none) return Stoplist();
  if (!path.empty()) return Stoplist::Load(path);
  return Stoplist::Polish();
}

std::string StoplistName(const std::string& path, bool none) {
  if (none) return "none";
  return path.empty() ? "builtin:polish-conjunctions" : path;
}

int CmdNormalize(const NormalizeArgs& a, std::istream& in, std::ostream& out) {
  const Stoplist stoplist = StoplistOption(a.stoplist, a.no_stoplist);
  const std::string text = ReadText(a.words, a.input, in);
  const NormalizedBag bag = Normalize(text, stoplist);
  if (a.json) {
    out << Dump(Json{{"tokens", bag.tokens()},
                     {"sorted", bag.Sorted()},
                     {"source_len", bag.source_len()}});
    return kExitOk;
  }
  for (std::size_t i = 0; i < bag.tokens().size(); ++i) out << (i ? " " : "") << bag.tokens()[i];
  out << '\n';
  return kExitOk;
}

struct StatsArgs {
  std::vector<std::string> paths;
  std::string task;
  bool json = false;
};

int CmdStats(const StatsArgs& a, std::ostream& out) {
  const std::optional<Task> task = TaskOption(a.task);
  std::map<std::pair<Task, Split>, std::size_t> counts;
  for (const fs::path& file : DatasetFiles(a.paths)) {
    const Split file_split = SplitFromFileName(file);
    for (const IpisRecord& r : LoadRecords(file, task)) {
      Split s = InferSplit(r.ipis_id);
      if (s == Split::kUnknown) s = file_split;
      ++counts[{r.task(), s}];
    }
  }
  if (a.json) {
    Json rows = Json::array();
    for (const auto& [key, n] : counts) {
      rows.push_back({{"task", TaskName(key.first)}, {"split", SplitName(key.second)}, {"count", n}});
    }
    out << Dump(rows);
    return kExitOk;
  }
  out << "task          split    count\n";
  for (const auto& [key, n] : counts) {
    std::string line = std::string(TaskName(key.first));
    line.resize(14, ' ');
    std::string split(SplitName(key.second));
    split.resize(7, ' ');
    out << line << split << ' ' << std::setw(6) << n << '\n';
  }
  return kExitOk;
}

struct EvalArgs {
  std::string dataset;
  std::string pred;
  std::string stoplist;
  bool no_stoplist = false;
  std::string scenario;
  std::string out_dir;
  bool lowercase = false;
  std::optional<std::string> timestamp;
};

// Scenario label: the flag, else the single scenario named in the file.
std::string ScenarioLabel(const EvalArgs& a) {
  if (!a.scenario.empty()) return a.scenario;
  std::set<std::string> seen;
  std::istringstream lines(ReadFile(a.pred));
  for (std::string line; std::getline(lines, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_object() && j.contains("scenario") && j["scenario"].is_string()) {
      seen.insert(j["scenario"].get<std::string>());
    }
  }
  if (seen.size() > 1) {
    throw UsageError("predictions mix several scenarios; pick one with --scenario");
  }
  return seen.empty() ? "predictions" : *seen.begin();
}

void WriteReport(const std::string& out_dir, const Json& report, const std::string& table) {
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  WriteFile(fs::path(out_dir) / "report.json", Dump(report));
  WriteFile(fs::path(out_dir) / "report.txt", table);
}

int CmdEvalProof(const EvalArgs& a, std::ostream& out) {
  const Stoplist stoplist = StoplistOption(a.stoplist, a.no_stoplist);
  const std::string label = ScenarioLabel(a);
  const std::vector<IpisRecord> records = LoadRecords(a.dataset, Task::kProofreading);
  const std::vector<Prediction> preds =
      AlignPredictions(records, LoadPredictions(a.pred, a.scenario));

  RunManifest manifest;
  manifest.command = "eval-proof";
  manifest.config = Json{{"dataset", a.dataset},
                         {"predictions", a.pred},
                         {"stoplist", StoplistName(a.stoplist, a.no_stoplist)},
                         {"scenario", label},
                         {"metrics", MetricConfig(a.lowercase)}};
  manifest.timestamp = ResolveTimestamp(a.timestamp);

  const ProofReport report = EvaluateProofreading(records, preds, stoplist, label, a.lowercase);
  const std::string table = ProofTable({report});
  WriteReport(a.out_dir, ProofReportToJson(report, manifest), table);
  out << table;
  return kExitOk;
}

int CmdEvalMt(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const std::string label = ScenarioLabel(a);
  const std::vector<IpisRecord> records = LoadRecords(a.dataset, Task::kTranslation);
  const std::vector<Prediction> preds =
      AlignPredictions(records, LoadPredictions(a.pred, a.scenario));

  RunManifest manifest;
  manifest.command = "eval-mt";
  manifest.config = Json{{"dataset", a.dataset},
                         {"predictions", a.pred},
                         {"scenario", label},
                         {"metrics", MetricConfig(a.lowercase)}};
  manifest.timestamp = ResolveTimestamp(a.timestamp);

  const MtReport report = EvaluateTranslation(records, preds, label, a.lowercase);
  for (const std::string& w : report.warnings) err << "warning: " << w << '\n';
  const std::string table = MtTable({report});
  WriteReport(a.out_dir, MtReportToJson(report, manifest), table);
  out << table;
  return kExitOk;
}

struct TabulateArgs {
  std::vector<std::string> reports;
};

int CmdTabulate(const TabulateArgs& a, std::ostream& out) {
  std::vector<ProofReport> proof;
  std::vector<MtReport> mt;
  for (const std::string& path : a.reports) {
    Json j;
    try {
      j = Json::parse(ReadFile(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
    const std::string task = j.value("task", "");
    if (task == "proofreading") {
      proof.push_back(ProofReportFromJson(j));
    } else if (task == "translation") {
      mt.push_back(MtReportFromJson(j));
    } else {
      throw ValidationError(path + " is not an evaluation report");
    }
  }
  if (!proof.empty() && !mt.empty()) {
    throw UsageError("cannot tabulate proofreading and translation reports together");
  }
  out << (proof.empty() ? MtTable(mt) : ProofTable(proof));
  return kExitOk;
}

struct RewriteArgs {
  std::string lexicon;
  std::string genre = "default";
  std::string strategy;
  std::string profiles;
  std::vector<std::string> words;
  std::string input;
  std::string output;
  std::string plan;
  bool feminine_first = false;
  int window = 3;
};

Json PlanJson(std::string_view original, const RewritePlan& plan) {
  Json items = Json::array();
  for (const PlanItem& item : plan.items) {
    Json entries = Json::array();
    for (const LexiconEntry& e : item.entries) {
      entries.push_back({{"masc_form", e.masc_form},
                         {"fem_form", e.fem_form},
                         {"category", CategoryName(e.category)},
                         {"kind", EntryKindName(e.kind)}});
    }
    items.push_back({{"begin", item.begin},
                     {"end", item.end},
                     {"original", std::string(original.substr(item.begin, item.end - item.begin))},
                     {"replacement", item.replacement},
                     {"strategy", StrategyName(item.strategy)},
                     {"entries", std::move(entries)}});
  }
  return items;
}

int CmdRewrite(const RewriteArgs& a, std::istream& in, std::ostream& out) {
  GenreProfiles profiles = GenreProfiles::Builtin();
  if (!a.profiles.empty()) {
    const GenreProfiles extra = GenreProfiles::Load(a.profiles);
    for (const std::string& name : extra.Names()) profiles.Add(*extra.Find(name));
  }
  const GenreProfile* profile = profiles.Find(a.genre);
  if (profile == nullptr) {
    std::string names;
    for (const std::string& n : profiles.Names()) names += (names.empty() ? "" : ", ") + n;
    throw UsageError("unknown genre '" + a.genre + "' (one of " + names + ")");
  }
  RewriteOptions options;
  if (!a.strategy.empty()) {
    options.strategy = ParseStrategy(a.strategy);
    if (!options.strategy) throw UsageError("unknown strategy '" + a.strategy + "'");
  }
  if (a.window < 0) throw UsageError("--window must be >= 0");
  options.feminine_first = a.feminine_first;
  options.window = a.window;

  const Lexicon lexicon = Lexicon::Load(a.lexicon);
  const std::string text = ReadText(a.words, a.input, in);
  const RewriteResult result = Rewrite(text, lexicon, *profile, options);
  if (!SelfCheck(text, result.text, result.plan)) {
    throw Error("rewrite self-check failed: text outside the replaced spans changed");
  }
  std::string rendered = result.text;
  if (!a.words.empty()) rendered += '\n';
  if (a.output.empty() || a.output == "-") {
    out << rendered;
  } else {
    WriteFile(a.output, rendered);
  }
  if (!a.plan.empty()) WriteFile(a.plan, Dump(PlanJson(text, result.plan)));
  return kExitOk;
}

struct GenerateArgs {
  std::string dataset;
  std::string task;
  std::string scenario;
  std::string endpoint;
  std::string model = "default";
  std::string out_path;
  std::string fewshot_pool;
  int k = 3;
  std::uint64_t seed = 0;
  std::string system_prompt_pl;
  std::string system_prompt_en;
  double temperature = 0.0;
  int max_tokens = 1024;
  double timeout = 120.0;
  int max_retries = 3;
  int backoff_ms = 500;
  int parallelism = 1;
  bool dry_run = false;
};

// Rewrites the generation log in dataset order, one line per id, preferring
// successful records. Lines for other scenarios or ids are kept after them.
void CompactLog(const fs::path& path, const std::vector<IpisRecord>& records,
                const std::string& scenario) {
  const std::vector<GenerationRecord> log = LoadGenerationLog(path);
  std::map<std::string, GenerationRecord> best;
  std::vector<GenerationRecord> others;
  std::set<std::string> ids;
  for (const IpisRecord& r : records) ids.insert(r.ipis_id);
  for (const GenerationRecord& g : log) {
    if (g.scenario != scenario || !ids.count(g.ipis_id)) {
      others.push_back(g);
      continue;
    }
    const auto it = best.find(g.ipis_id);
    if (it == best.end() || !it->second.ok() || g.ok()) best.insert_or_assign(g.ipis_id, g);
  }
  std::string contents;
  for (const IpisRecord& r : records) {
    if (const auto it = best.find(r.ipis_id); it != best.end()) {
      contents += DumpLine(GenerationRecordToJson(it->second));
    }
  }
  for (const GenerationRecord& g : others) contents += DumpLine(GenerationRecordToJson(g));
  const fs::path tmp = path.string() + ".tmp";
  WriteFile(tmp, contents);
  fs::rename(tmp, path);
}

int CmdGenerate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  const Scenario scenario = ScenarioOption(a.scenario);
  const std::vector<IpisRecord> records = LoadRecords(a.dataset, TaskOption(a.task));
  std::set<Task> tasks;
  for (const IpisRecord& r : records) tasks.insert(r.task());

  PromptAssets assets = PromptAssets::Builtin();
  for (Task t : tasks) {
    if (!a.system_prompt_pl.empty()) assets.LoadFile(a.system_prompt_pl, t, Language::kPL);
    if (!a.system_prompt_en.empty()) assets.LoadFile(a.system_prompt_en, t, Language::kEN);
  }

  std::vector<IpisRecord> pool;
  if (scenario.IsFewshot()) {
    if (a.fewshot_pool.empty()) throw UsageError("fewshot scenarios need --fewshot-pool");
    pool = LoadRecords(a.fewshot_pool, std::nullopt);
    std::set<Split> dataset_splits;
    for (const IpisRecord& r : records) dataset_splits.insert(InferSplit(r.ipis_id));
    for (const IpisRecord& r : pool) {
      const Split s = InferSplit(r.ipis_id);
      if (s != Split::kUnknown && dataset_splits.count(s)) {
        throw UsageError("the fewshot pool must come from a different split than the dataset (" +
                         r.ipis_id + ")");
      }
    }
  }
  BuildOptions build;
  build.k = a.k;
  build.seed = a.seed;

  std::set<std::string> done;
  if (!a.dry_run && !a.out_path.empty() && fs::exists(a.out_path)) {
    done = CompletedIds(LoadGenerationLog(a.out_path), scenario.Name());
  }
  std::vector<PromptBundle> bundles;
  for (const IpisRecord& r : records) {
    if (done.count(r.ipis_id)) continue;
    bundles.push_back(BuildBundle(r, scenario, pool, assets, build));
  }

  if (a.dry_run) {
    for (const PromptBundle& b : bundles) out << DumpLine(BundleToJson(b));
    return kExitOk;
  }
  if (a.out_path.empty()) throw UsageError("--out is required unless --dry-run is given");

  EndpointConfig cfg;
  cfg.url = a.endpoint;
  cfg.model_id = a.model;
  cfg.temperature = a.temperature;
  cfg.max_output_tokens = a.max_tokens;
  cfg.timeout_s = a.timeout;
  cfg.max_retries = a.max_retries;
  cfg.initial_backoff_ms = a.backoff_ms;
  cfg.parallelism = a.parallelism;
  if (const char* key = std::getenv("IPIS_API_KEY"); key && *key) cfg.api_key = key;
  cfg.Validate();

  std::size_t failed = 0;
  {
    GenerationLog log(a.out_path);
    GenerateBatch(bundles, cfg, [&](std::size_t, const GenerationRecord& r) {
      log.Append(r);
      if (!r.ok()) {
        ++failed;
        err << "error: " << r.ipis_id << ": " << *r.error << '\n';
      }
    });
  }
  CompactLog(a.out_path, records, scenario.Name());
  err << "generated " << bundles.size() - failed << ", failed " << failed << ", skipped "
      << done.size() << " already completed\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Gender-inclusive Polish proofreading and translation toolkit", "ipis"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ExpandArgs expand_args;
  CLI::App* expand = app.add_subcommand("expand", "Expand star and slash notation");
  expand->add_option("text", expand_args.words, "Text (default: --input or stdin)");
  expand->add_option("--input", expand_args.input, "Input file, '-' for stdin");
  expand->add_flag("--json", expand_args.json, "Structured nodes as JSON");

  NormalizeArgs norm_args;
  CLI::App* normalize = app.add_subcommand("normalize", "Print the normalized token bag");
  normalize->add_option("text", norm_args.words, "Text (default: --input or stdin)");
  normalize->add_option("--input", norm_args.input, "Input file, '-' for stdin");
  normalize->add_option("--stoplist", norm_args.stoplist, "Stoplist file");
  normalize->add_flag("--no-stoplist", norm_args.no_stoplist, "Keep conjunctions");
  normalize->add_flag("--json", norm_args.json, "JSON output");

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand("stats", "Count records per task and split");
  stats->add_option("paths", stats_args.paths, "Dataset files or directories")->required();
  stats->add_option("--task", stats_args.task, "Require this task");
  stats->add_flag("--json", stats_args.json, "JSON output");

  EvalArgs proof_args;
  CLI::App* eval_proof = app.add_subcommand("eval-proof", "Score proofreading predictions");
  EvalArgs mt_args;
  CLI::App* eval_mt = app.add_subcommand("eval-mt", "Score translation predictions");
  for (auto [cmd, ea] : {std::pair{eval_proof, &proof_args}, std::pair{eval_mt, &mt_args}}) {
    cmd->add_option("--dataset", ea->dataset, "Dataset JSON/JSONL")->required();
    cmd->add_option("--pred", ea->pred, "Predictions JSONL")->required();
    cmd->add_option("--scenario", ea->scenario, "Scenario label and prediction filter");
    cmd->add_option("--out", ea->out_dir, "Directory for report.json and report.txt");
    cmd->add_flag("--lowercase", ea->lowercase, "Case-insensitive BLEU/chrF");
    cmd->add_option("--timestamp", ea->timestamp, "Manifest timestamp override");
  }
  eval_proof->add_option("--stoplist", proof_args.stoplist, "Stoplist file");
  eval_proof->add_flag("--no-stoplist", proof_args.no_stoplist, "Keep conjunctions");

  TabulateArgs tab_args;
  CLI::App* tabulate = app.add_subcommand("tabulate", "Merge report.json files into one table");
  tabulate->add_option("reports", tab_args.reports, "report.json files")->required();

  RewriteArgs rw_args;
  CLI::App* rewrite = app.add_subcommand("rewrite", "Lexicon-driven inclusive rewriting");
  rewrite->add_option("--lexicon", rw_args.lexicon, "Lexicon TSV")->required();
  rewrite->add_option("--genre", rw_args.genre, "Genre profile")->capture_default_str();
  rewrite->add_option("--strategy", rw_args.strategy,
                      "coordination, slash, star, osoba or neutral");
  rewrite->add_option("--profiles", rw_args.profiles, "Extra genre profiles JSON");
  rewrite->add_option("text", rw_args.words, "Text (default: --input or stdin)");
  rewrite->add_option("--input", rw_args.input, "Input file, '-' for stdin");
  rewrite->add_option("--output", rw_args.output, "Output file (default stdout)");
  rewrite->add_option("--plan", rw_args.plan, "Write the replacement plan as JSON");
  rewrite->add_flag("--feminine-first", rw_args.feminine_first, "Coordination order");
  rewrite->add_option("--window", rw_args.window, "Skip window in words")
      ->capture_default_str();

  GenerateArgs gen_args;
  CLI::App* generate = app.add_subcommand("generate", "Query a chat-completion endpoint");
  generate->add_option("--dataset", gen_args.dataset, "Dataset JSON/JSONL")->required();
  generate->add_option("--task", gen_args.task, "Require this task");
  generate->add_option("--scenario", gen_args.scenario, "One of the nine scenarios")
      ->required();
  generate->add_option("--endpoint", gen_args.endpoint, "Chat-completions URL");
  generate->add_option("--model", gen_args.model, "Model id")->capture_default_str();
  generate->add_option("--out", gen_args.out_path, "Predictions JSONL (appended, resumable)");
  generate->add_option("--fewshot-pool", gen_args.fewshot_pool, "Exemplar records");
  generate->add_option("--k", gen_args.k, "Exemplars per fewshot prompt")->capture_default_str();
  generate->add_option("--seed", gen_args.seed, "Exemplar sampling seed")->capture_default_str();
  generate->add_option("--system-prompt-pl", gen_args.system_prompt_pl, "Polish system prompt");
  generate->add_option("--system-prompt-en", gen_args.system_prompt_en,
                       "Replace the built-in English system prompt");
  generate->add_option("--temperature", gen_args.temperature)->capture_default_str();
  generate->add_option("--max-tokens", gen_args.max_tokens)->capture_default_str();
  generate->add_option("--timeout", gen_args.timeout, "Seconds per request")
      ->capture_default_str();
  generate->add_option("--max-retries", gen_args.max_retries)->capture_default_str();
  generate->add_option("--backoff-ms", gen_args.backoff_ms, "Initial retry backoff")
      ->capture_default_str();
  generate->add_option("--parallelism", gen_args.parallelism, "Requests in flight")
      ->capture_default_str();
  generate->add_flag("--dry-run", gen_args.dry_run, "Print prompt bundles and exit");

  std::vector<const char*> argv{"ipis"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (expand->parsed()) return CmdExpand(expand_args, in, out, err);
    if (normalize->parsed()) return CmdNormalize(norm_args, in, out);
    if (stats->parsed()) return CmdStats(stats_args, out);
    if (eval_proof->parsed()) return CmdEvalProof(proof_args, out);
    if (eval_mt->parsed()) return CmdEvalMt(mt_args, out, err);
    if (tabulate->parsed()) return CmdTabulate(tab_args, out);
    if (rewrite->parsed()) return CmdRewrite(rw_args, in, out);
    if (generate->parsed()) return CmdGenerate(gen_args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ipis
