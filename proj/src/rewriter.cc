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

#include "ipis/rewriter.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "ipis/errors.h"
#include "ipis/normalize.h"
#include "ipis/notation.h"
#include "ipis/unicode.h"
#include "json.hpp"

namespace ipis {
namespace {

constexpr std::string_view kStrategyNames[] = {"coordination", "slash", "star",
                                               "osoba", "neutral"};
constexpr std::string_view kCategoryNames[] = {"noun", "adjective", "verb",
                                               "pronoun", "numeral"};
constexpr std::string_view kKindNames[] = {"pair", "osoba", "neutral"};

std::string_view TrimView(std::string_view s) {
  constexpr std::string_view kWs = " \t\r\n";
  const auto first = s.find_first_not_of(kWs);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(kWs) - first + 1);
}

std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> cols;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    cols.emplace_back(TrimView(line.substr(pos, tab - pos)));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return cols;
}

// Case-folded word sequence, or empty if the phrase has punctuation or
// notation in it.
std::vector<std::string> PhraseWords(std::string_view phrase) {
  std::vector<std::string> words;
  for (const Token& t : TokenizeWithSpans(phrase)) {
    if (t.is_punct || !std::holds_alternative<PlainWord>(ParseToken(t.text))) return {};
    words.push_back(unicode::FoldCase(t.text));
  }
  return words;
}

std::string Join(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

// Carries the capitalization of the matched source word over to a form.
std::string InheritCase(std::string_view matched, std::string_view form) {
  if (unicode::IsAllCaps(matched)) return unicode::ToUpper(form);
  if (unicode::StartsUpper(matched)) return unicode::CapitalizeFirst(form);
  return std::string(form);
}

// Lowercases the first letter of a form moved away from sentence position,
// unless the lexicon spells it capitalized (proper nouns) or it is shouted.
std::string DemoteCase(std::string_view matched, std::string_view rendered,
                       std::string_view lexicon_form) {
  if (unicode::IsAllCaps(matched) || unicode::StartsUpper(lexicon_form)) {
    return std::string(rendered);
  }
  return unicode::LowercaseFirst(rendered);
}

bool IsPairStrategy(Strategy s) {
  return s == Strategy::kCoordination || s == Strategy::kSlash || s == Strategy::kStar;
}

struct IndexedEntry {
  const LexiconEntry* entry;
  std::vector<std::string> words;
  std::string fem_folded;
};

}  // namespace

std::string_view StrategyName(Strategy s) {
  return kStrategyNames[static_cast<int>(s)];
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (kStrategyNames[i] == name) return static_cast<Strategy>(i);
  }
  return std::nullopt;
}

std::string_view CategoryName(Category c) { return kCategoryNames[static_cast<int>(c)]; }

std::optional<Category> ParseCategory(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (kCategoryNames[i] == name) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::string_view EntryKindName(EntryKind k) { return kKindNames[static_cast<int>(k)]; }

std::string ValidateEntry(const LexiconEntry& e) {
  if (e.masc_form.empty() || e.fem_form.empty()) return "empty masculine or feminine form";
  const std::vector<std::string> masc = PhraseWords(e.masc_form);
  if (masc.empty()) return "masculine form '" + e.masc_form + "' is not a plain word sequence";

  if (e.kind != EntryKind::kPair) {
    if (e.star_form != "-") return "osoba/neutral rows take '-' as star form";
    if (PhraseWords(e.fem_form).empty()) {
      return "replacement '" + e.fem_form + "' is not a plain word sequence";
    }
    return {};
  }

  if (masc.size() != 1) return "pair rows take a single masculine word";
  const std::vector<std::string> fem = PhraseWords(e.fem_form);
  if (fem.size() != 1) return "pair rows take a single feminine word";

  if (e.category == Category::kNumeral) {
    // Collective numerals replace the masculine numeral under every strategy.
    if (e.star_form != e.fem_form) return "numeral rows repeat the collective form as star form";
    return {};
  }

  const SegmentNode node = ParseToken(e.star_form);
  if (!std::holds_alternative<StarForm>(node)) {
    return "star form '" + e.star_form + "' is not asterisk notation";
  }
  if (Render(node) != e.star_form) return "star form '" + e.star_form + "' does not round-trip";
  const std::vector<std::string> expanded = Expand(node);
  if (unicode::FoldCase(expanded[0]) != masc[0] ||
      unicode::FoldCase(expanded[1]) != fem[0]) {
    return "star form '" + e.star_form + "' expands to " + expanded[0] + "/" + expanded[1] +
           ", not " + e.masc_form + "/" + e.fem_form;
  }
  return {};
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries) : entries_(std::move(entries)) {
  std::set<std::pair<EntryKind, std::string>> seen;
  for (const LexiconEntry& e : entries_) {
    if (std::string why = ValidateEntry(e); !why.empty()) {
      throw ValidationError("lexicon entry '" + e.masc_form + "': " + why);
    }
    if (!seen.emplace(e.kind, Join(PhraseWords(e.masc_form))).second) {
      throw ValidationError("duplicate lexicon entry for '" + e.masc_form + "'");
    }
  }
}

Lexicon Lexicon::Parse(std::string_view contents, const std::string& source_name) {
  std::vector<LexiconEntry> entries;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    const std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const std::string_view trimmed = TrimView(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    const std::string where = source_name + ":" + std::to_string(line_no);
    std::vector<std::string> cols = SplitTabs(line);
    if (cols.size() != 5 && cols.size() != 6) {
      throw ParseError(where + ": expected 5 or 6 tab-separated columns, got " +
                       std::to_string(cols.size()));
    }
    LexiconEntry e;
    e.masc_form = cols[0];
    e.fem_form = cols[1];
    e.star_form = cols[2];
    const std::optional<Category> cat = ParseCategory(cols[3]);
    if (!cat) throw ParseError(where + ": unknown category '" + cols[3] + "'");
    e.category = *cat;
    e.case_tag = cols[4];
    if (cols.size() == 6 && !cols[5].empty()) {
      const auto it = std::find(std::begin(kKindNames), std::end(kKindNames), cols[5]);
      if (it == std::end(kKindNames)) throw ParseError(where + ": unknown kind '" + cols[5] + "'");
      e.kind = static_cast<EntryKind>(it - std::begin(kKindNames));
    }
    if (std::string why = ValidateEntry(e); !why.empty()) {
      throw ValidationError(where + ": " + why);
    }
    entries.push_back(std::move(e));
  }
  return Lexicon(std::move(entries));
}

Lexicon Lexicon::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path.string());
}

bool GenreProfile::Allows(Strategy s) const {
  return std::find(allowed.begin(), allowed.end(), s) != allowed.end();
}

GenreProfiles GenreProfiles::Builtin() {
  using S = Strategy;
  const std::vector<S> written = {S::kCoordination, S::kSlash, S::kStar};
  const std::vector<S> official = {S::kSlash, S::kStar, S::kOsoba, S::kNeutral};
  GenreProfiles p;
  p.Add({"default", written});
  p.Add({"press", written});
  p.Add({"scientific", written});
  p.Add({"narrative", written});
  p.Add({"speech", {S::kCoordination, S::kSlash}});
  p.Add({"address", {S::kCoordination}});
  p.Add({"forms", official});
  p.Add({"documents", official});
  p.Add({"legal", official});
  return p;
}

GenreProfiles GenreProfiles::Parse(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("genre profiles: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("genre profiles must be a JSON object");
  GenreProfiles profiles;
  for (const auto& [genre, list] : j.items()) {
    if (!list.is_array() || list.empty()) {
      throw ValidationError("genre '" + genre + "' needs a non-empty strategy list");
    }
    GenreProfile profile{genre, {}};
    for (const auto& name : list) {
      const std::optional<Strategy> s =
          name.is_string() ? ParseStrategy(name.get<std::string>()) : std::nullopt;
      if (!s) throw ValidationError("genre '" + genre + "': unknown strategy " + name.dump());
      if (!profile.Allows(*s)) profile.allowed.push_back(*s);
    }
    profiles.Add(std::move(profile));
  }
  return profiles;
}

GenreProfiles GenreProfiles::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open genre profiles " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

void GenreProfiles::Add(GenreProfile profile) {
  if (profile.allowed.empty()) {
    throw ValidationError("genre '" + profile.genre + "' allows no strategy");
  }
  std::string key = profile.genre;
  profiles_.insert_or_assign(std::move(key), std::move(profile));
}

const GenreProfile* GenreProfiles::Find(std::string_view genre) const {
  const auto it = profiles_.find(genre);
  return it == profiles_.end() ? nullptr : &it->second;
}

std::vector<std::string> GenreProfiles::Names() const {
  std::vector<std::string> names;
  for (const auto& [name, _] : profiles_) names.push_back(name);
  return names;
}

std::vector<Match> Detect(std::string_view text, const Lexicon& lexicon,
                          const DetectOptions& options) {
  std::map<std::string, std::vector<IndexedEntry>, std::less<>> index;
  for (const LexiconEntry& e : lexicon.entries()) {
    const bool usable = (e.kind == EntryKind::kPair && options.use_pair) ||
                        (e.kind == EntryKind::kOsoba && options.use_osoba) ||
                        (e.kind == EntryKind::kNeutral && options.use_neutral);
    if (!usable) continue;
    IndexedEntry ie{&e, PhraseWords(e.masc_form), unicode::FoldCase(e.fem_form)};
    const std::string first = ie.words.front();
    index[first].push_back(std::move(ie));
  }
  for (auto& [_, list] : index) {
    // Longest first; a phrase substitution wins over a pair of equal length.
    std::stable_sort(list.begin(), list.end(), [](const IndexedEntry& a, const IndexedEntry& b) {
      if (a.words.size() != b.words.size()) return a.words.size() > b.words.size();
      return a.entry->kind != EntryKind::kPair && b.entry->kind == EntryKind::kPair;
    });
  }

  const std::vector<Token> tokens = TokenizeWithSpans(text);
  std::vector<std::string> folded;
  folded.reserve(tokens.size());
  for (const Token& t : tokens) folded.push_back(unicode::FoldCase(t.text));

  struct Raw {
    Match match;
    const IndexedEntry* indexed;
  };
  std::vector<Raw> raw;
  for (std::size_t i = 0; i < tokens.size();) {
    const auto it = tokens[i].is_punct ? index.end() : index.find(folded[i]);
    const IndexedEntry* hit = nullptr;
    if (it != index.end()) {
      for (const IndexedEntry& cand : it->second) {
        const std::size_t len = cand.words.size();
        if (i + len > tokens.size()) continue;
        bool ok = true;
        for (std::size_t j = 0; j < len && ok; ++j) {
          ok = !tokens[i + j].is_punct && folded[i + j] == cand.words[j];
        }
        if (ok) {
          hit = &cand;
          break;
        }
      }
    }
    if (hit == nullptr) {
      ++i;
      continue;
    }
    const std::size_t last = i + hit->words.size() - 1;
    raw.push_back({Match{tokens[i].begin, tokens[last].end, i, last, hit->entry}, hit});
    i = last + 1;
  }

  auto ends_sentence = [&](std::size_t token) {
    return tokens[token].is_punct &&
           tokens[token].text.find_first_of(".!?") != std::string::npos;
  };
  auto holds_feminine = [&](std::size_t token, const std::string& fem) {
    if (folded[token] == fem) return true;
    const SegmentNode node = ParseToken(tokens[token].text);
    if (!IsInclusive(node)) return false;
    for (const std::string& w : Expand(node)) {
      if (unicode::FoldCase(w) == fem) return true;
    }
    return false;
  };
  // Looks `reach` word tokens outwards from the match, without crossing a
  // sentence end.
  auto coordinated = [&](const Match& m, std::size_t reach, const std::string& fem) {
    std::size_t seen = 0;
    for (std::size_t t = m.first_token; t-- > 0 && seen < reach;) {
      if (ends_sentence(t)) break;
      if (tokens[t].is_punct) continue;
      ++seen;
      if (holds_feminine(t, fem)) return true;
    }
    seen = 0;
    for (std::size_t t = m.last_token + 1; t < tokens.size() && seen < reach; ++t) {
      if (ends_sentence(t)) break;
      if (tokens[t].is_punct) continue;
      ++seen;
      if (holds_feminine(t, fem)) return true;
    }
    return false;
  };

  std::vector<Match> out;
  std::size_t run_start = 0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (k == 0 || raw[k].match.first_token != raw[k - 1].match.last_token + 1) run_start = k;
    std::size_t run_end = k;
    while (run_end + 1 < raw.size() &&
           raw[run_end + 1].match.first_token == raw[run_end].match.last_token + 1) {
      ++run_end;
    }
    const Match& m = raw[k].match;
    if (m.entry->kind == EntryKind::kPair) {
      const std::size_t run_tokens =
          raw[run_end].match.last_token - raw[run_start].match.first_token + 1;
      const std::size_t own_tokens = m.last_token - m.first_token + 1;
      const std::size_t reach = static_cast<std::size_t>(std::max(options.window, 0)) +
                                (run_tokens - own_tokens);
      if (coordinated(m, reach, raw[k].indexed->fem_folded)) continue;
    }
    out.push_back(m);
  }
  return out;
}

RewriteResult Rewrite(std::string_view text, const Lexicon& lexicon,
                      const GenreProfile& profile, const RewriteOptions& options) {
  if (profile.allowed.empty()) {
    throw UsageError("genre '" + profile.genre + "' allows no strategy");
  }
  const Strategy chosen = options.strategy.value_or(profile.allowed.front());
  if (!profile.Allows(chosen)) {
    std::string allowed;
    for (Strategy s : profile.allowed) {
      if (!allowed.empty()) allowed += ", ";
      allowed += StrategyName(s);
    }
    throw UsageError("strategy '" + std::string(StrategyName(chosen)) +
                     "' is not allowed for genre '" + profile.genre + "' (allowed: " +
                     allowed + ")");
  }

  // Single-word pairs use the chosen strategy, or the genre's first pair
  // strategy when the chosen one is a phrase substitution.
  std::optional<Strategy> pair_strategy;
  if (IsPairStrategy(chosen)) {
    pair_strategy = chosen;
  } else {
    for (Strategy s : profile.allowed) {
      if (IsPairStrategy(s)) {
        pair_strategy = s;
        break;
      }
    }
  }

  DetectOptions detect;
  detect.window = options.window;
  detect.use_pair = pair_strategy.has_value();
  detect.use_osoba = chosen == Strategy::kOsoba;
  detect.use_neutral = chosen == Strategy::kNeutral;
  const std::vector<Match> matches = Detect(text, lexicon, detect);

  auto source = [&](const Match& m) { return text.substr(m.begin, m.end - m.begin); };
  auto single = [&](const Match& m, Strategy s, std::string replacement) {
    return PlanItem{m.begin, m.end, std::move(replacement), {*m.entry}, s};
  };

  RewritePlan plan;
  for (std::size_t k = 0; k < matches.size(); ++k) {
    const Match& m = matches[k];
    const LexiconEntry& e = *m.entry;
    const std::string_view matched = source(m);

    if (e.kind != EntryKind::kPair) {
      plan.items.push_back(single(m, chosen, InheritCase(matched, e.fem_form)));
      continue;
    }
    if (e.category == Category::kNumeral) {
      plan.items.push_back(single(m, *pair_strategy, InheritCase(matched, e.fem_form)));
      continue;
    }
    switch (*pair_strategy) {
      case Strategy::kStar:
        plan.items.push_back(single(m, Strategy::kStar, InheritCase(matched, e.star_form)));
        continue;
      case Strategy::kSlash:
        plan.items.push_back(single(
            m, Strategy::kSlash, std::string(matched) + "/" + InheritCase(matched, e.fem_form)));
        continue;
      default:
        break;
    }

    // Coordination: double adjacent adjective/noun runs that contain a noun;
    // everything else falls back to a slash.
    auto groupable = [](const Match& x) {
      return x.entry->kind == EntryKind::kPair &&
             (x.entry->category == Category::kNoun || x.entry->category == Category::kAdjective);
    };
    std::size_t end = k;
    if (groupable(m)) {
      while (end + 1 < matches.size() && groupable(matches[end + 1]) &&
             matches[end + 1].first_token == matches[end].last_token + 1) {
        ++end;
      }
    }
    const bool has_noun =
        std::any_of(matches.begin() + static_cast<std::ptrdiff_t>(k),
                    matches.begin() + static_cast<std::ptrdiff_t>(end + 1),
                    [](const Match& x) { return x.entry->category == Category::kNoun; });
    if (!groupable(m) || !has_noun) {
      plan.items.push_back(single(
          m, Strategy::kSlash, std::string(matched) + "/" + InheritCase(matched, e.fem_form)));
      continue;
    }

    PlanItem item;
    item.begin = m.begin;
    item.end = matches[end].end;
    item.strategy = Strategy::kCoordination;
    std::string masc_text(text.substr(item.begin, item.end - item.begin));
    std::string fem_text;
    for (std::size_t g = k; g <= end; ++g) {
      const std::string_view word = source(matches[g]);
      std::string fem = InheritCase(word, matches[g].entry->fem_form);
      if (g == k && !options.feminine_first) {
        fem = DemoteCase(word, fem, matches[g].entry->fem_form);
      }
      if (g > k) fem_text += text.substr(matches[g - 1].end, matches[g].begin - matches[g - 1].end);
      fem_text += fem;
      item.entries.push_back(*matches[g].entry);
    }
    if (options.feminine_first) {
      masc_text = DemoteCase(matched, masc_text, e.masc_form);
      item.replacement = fem_text + " i " + masc_text;
    } else {
      item.replacement = masc_text + " i " + fem_text;
    }
    plan.items.push_back(std::move(item));
    k = end;
  }

  RewriteResult result;
  std::size_t cursor = 0;
  for (const PlanItem& item : plan.items) {
    result.text.append(text.substr(cursor, item.begin - cursor));
    result.text.append(item.replacement);
    cursor = item.end;
  }
  result.text.append(text.substr(cursor));
  result.plan = std::move(plan);
  return result;
}

bool SelfCheck(std::string_view original, std::string_view rewritten,
               const RewritePlan& plan) {
  std::string residue_in;
  std::string residue_out;
  std::size_t in_cursor = 0;
  std::size_t out_cursor = 0;
  for (const PlanItem& item : plan.items) {
    if (item.begin < in_cursor || item.end < item.begin || item.end > original.size()) {
      return false;
    }
    const std::size_t gap = item.begin - in_cursor;
    if (out_cursor + gap + item.replacement.size() > rewritten.size()) return false;
    residue_in.append(original.substr(in_cursor, gap));
    residue_out.append(rewritten.substr(out_cursor, gap));
    out_cursor += gap;
    if (rewritten.substr(out_cursor, item.replacement.size()) != item.replacement) return false;
    out_cursor += item.replacement.size();
    in_cursor = item.end;
  }
  residue_in.append(original.substr(in_cursor));
  residue_out.append(rewritten.substr(out_cursor));
  return residue_in == residue_out;
}

}  // namespace ipis
