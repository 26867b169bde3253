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

#include "ipis/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "ipis/errors.h"
#include "ipis/unicode.h"

namespace ipis {
namespace {

using Counts = std::map<std::string, std::size_t>;

std::size_t Total(const Counts& c) {
  std::size_t n = 0;
  for (const auto& [_, k] : c) n += k;
  return n;
}

Counts Difference(const Counts& a, const Counts& b) {
  Counts out;
  for (const auto& [key, n] : a) {
    const auto it = b.find(key);
    const std::size_t m = it == b.end() ? 0 : it->second;
    if (n > m) out[key] = n - m;
  }
  return out;
}

std::size_t IntersectionSize(const Counts& a, const Counts& b) {
  std::size_t n = 0;
  for (const auto& [key, k] : a) {
    if (const auto it = b.find(key); it != b.end()) n += std::min(k, it->second);
  }
  return n;
}

double Percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

void CheckLengths(std::size_t preds, std::size_t refs) {
  if (preds != refs) {
    throw ValidationError("prediction/reference count mismatch: " +
                          std::to_string(preds) + " vs " + std::to_string(refs));
  }
}

// N-gram counts keyed by the unit sequence.
template <class Unit>
std::map<std::vector<Unit>, std::size_t> CountNGrams(const std::vector<Unit>& units,
                                                     std::size_t n) {
  std::map<std::vector<Unit>, std::size_t> counts;
  if (units.size() < n) return counts;
  for (std::size_t i = 0; i + n <= units.size(); ++i) {
    ++counts[std::vector<Unit>(units.begin() + static_cast<std::ptrdiff_t>(i),
                               units.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

template <class Map>
std::size_t ClippedMatches(const Map& hyp, const Map& ref) {
  std::size_t matched = 0;
  for (const auto& [gram, n] : hyp) {
    if (const auto it = ref.find(gram); it != ref.end()) matched += std::min(n, it->second);
  }
  return matched;
}

std::vector<std::string> MetricTokens(std::string_view text, bool lowercase) {
  if (lowercase) return Tokenize(unicode::FoldCase(text));
  return Tokenize(text);
}

double FBeta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  return denom > 0 ? (1 + b2) * precision * recall / denom : 0.0;
}

}  // namespace

ProofCounts& ProofCounts::operator+=(const ProofCounts& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  overlap += other.overlap;
  merged += other.merged;
  return *this;
}

ProofCounts CountEdits(const NormalizedBag& src, const NormalizedBag& gold,
                       const NormalizedBag& pred) {
  const Counts s = src.Counts();
  const Counts g = gold.Counts();
  const Counts p = pred.Counts();
  const Counts gold_edits = Difference(g, s);
  const Counts pred_edits = Difference(p, s);

  ProofCounts c;
  c.tp = IntersectionSize(pred_edits, gold_edits);
  c.fp = Total(pred_edits) - c.tp;
  c.fn = Total(gold_edits) - c.tp;
  c.overlap = IntersectionSize(p, g);
  // |A | B| = |A| + |B| - |A & B| for multisets with max-union.
  c.merged = p.empty() && g.empty() ? 0 : Total(p) + Total(g) - c.overlap;
  return c;
}

ProofScores ScoreCounts(const ProofCounts& c) {
  ProofScores s;
  s.tp = c.tp;
  s.fp = c.fp;
  s.fn = c.fn;
  s.accuracy = Percent(c.overlap, c.merged);
  s.precision = Percent(c.tp, c.tp + c.fp);
  s.recall = Percent(c.tp, c.tp + c.fn);
  s.f1 = s.precision + s.recall > 0
             ? 2 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t i = 0; i < matches.size() && i < other.matches.size(); ++i) {
    matches[i] += other.matches[i];
    totals[i] += other.totals[i];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

BleuStats SentenceBleuStats(std::string_view pred, std::string_view ref,
                            const BleuOptions& options) {
  const std::vector<std::string> hyp = MetricTokens(pred, options.lowercase);
  const std::vector<std::string> gold = MetricTokens(ref, options.lowercase);
  BleuStats stats(options.max_order);
  stats.hyp_len = hyp.size();
  stats.ref_len = gold.size();
  for (int n = 1; n <= options.max_order; ++n) {
    const auto h = CountNGrams(hyp, static_cast<std::size_t>(n));
    const auto r = CountNGrams(gold, static_cast<std::size_t>(n));
    const auto idx = static_cast<std::size_t>(n - 1);
    stats.totals[idx] = hyp.size() >= static_cast<std::size_t>(n)
                            ? hyp.size() - static_cast<std::size_t>(n) + 1
                            : 0;
    stats.matches[idx] = ClippedMatches(h, r);
  }
  return stats;
}

double BleuFromStats(const BleuStats& stats) {
  if (stats.hyp_len == 0) return stats.ref_len == 0 ? 100.0 : 0.0;
  double log_sum = 0;
  int orders = 0;
  for (std::size_t i = 0; i < stats.totals.size(); ++i) {
    if (stats.totals[i] == 0) continue;
    if (stats.matches[i] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(stats.matches[i]) /
                        static_cast<double>(stats.totals[i]));
    ++orders;
  }
  const double c = static_cast<double>(stats.hyp_len);
  const double r = static_cast<double>(stats.ref_len);
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * bp * std::exp(log_sum / orders);
}

double CorpusBleu(const std::vector<std::string>& preds,
                  const std::vector<std::string>& refs,
                  const BleuOptions& options) {
  CheckLengths(preds.size(), refs.size());
  BleuStats total(options.max_order);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    total += SentenceBleuStats(preds[i], refs[i], options);
  }
  return BleuFromStats(total);
}

ChrfStats& ChrfStats::operator+=(const ChrfStats& other) {
  auto add = [](std::vector<Order>& into, const std::vector<Order>& from) {
    for (std::size_t i = 0; i < into.size() && i < from.size(); ++i) {
      into[i].hyp += from[i].hyp;
      into[i].ref += from[i].ref;
      into[i].match += from[i].match;
    }
  };
  add(chars, other.chars);
  add(words, other.words);
  return *this;
}

ChrfStats SentenceChrfStats(std::string_view pred, std::string_view ref,
                            const ChrfOptions& options) {
  ChrfStats stats(options.char_order, options.word_order);
  const std::string pred_text = options.lowercase ? unicode::FoldCase(pred)
                                                  : std::string(pred);
  const std::string ref_text = options.lowercase ? unicode::FoldCase(ref)
                                                 : std::string(ref);

  auto letters = [](std::string_view text) {
    std::vector<char32_t> out;
    for (const unicode::CodePoint& cp : unicode::Decode(text)) {
      if (!unicode::IsSpace(cp.value)) out.push_back(cp.value);
    }
    return out;
  };
  const std::vector<char32_t> hyp_chars = letters(pred_text);
  const std::vector<char32_t> ref_chars = letters(ref_text);
  for (int n = 1; n <= options.char_order; ++n) {
    const auto h = CountNGrams(hyp_chars, static_cast<std::size_t>(n));
    const auto r = CountNGrams(ref_chars, static_cast<std::size_t>(n));
    auto& order = stats.chars[static_cast<std::size_t>(n - 1)];
    for (const auto& [_, k] : h) order.hyp += k;
    for (const auto& [_, k] : r) order.ref += k;
    order.match = ClippedMatches(h, r);
  }

  const std::vector<std::string> hyp_words = Tokenize(pred_text);
  const std::vector<std::string> ref_words = Tokenize(ref_text);
  for (int n = 1; n <= options.word_order; ++n) {
    const auto h = CountNGrams(hyp_words, static_cast<std::size_t>(n));
    const auto r = CountNGrams(ref_words, static_cast<std::size_t>(n));
    auto& order = stats.words[static_cast<std::size_t>(n - 1)];
    for (const auto& [_, k] : h) order.hyp += k;
    for (const auto& [_, k] : r) order.ref += k;
    order.match = ClippedMatches(h, r);
  }
  return stats;
}

double ChrfFromStats(const ChrfStats& stats, double beta) {
  double sum = 0;
  int effective = 0;
  bool any_hyp = false;
  bool any_ref = false;
  auto visit = [&](const std::vector<ChrfStats::Order>& orders) {
    for (const ChrfStats::Order& o : orders) {
      any_hyp = any_hyp || o.hyp > 0;
      any_ref = any_ref || o.ref > 0;
      if (o.hyp == 0 || o.ref == 0) continue;
      const double p = static_cast<double>(o.match) / static_cast<double>(o.hyp);
      const double r = static_cast<double>(o.match) / static_cast<double>(o.ref);
      sum += FBeta(p, r, beta);
      ++effective;
    }
  };
  visit(stats.chars);
  visit(stats.words);
  if (!any_hyp && !any_ref) return 100.0;
  if (effective == 0) return 0.0;
  return 100.0 * sum / effective;
}

double Chrf(const std::vector<std::string>& preds,
            const std::vector<std::string>& refs, const ChrfOptions& options) {
  CheckLengths(preds.size(), refs.size());
  ChrfStats total(options.char_order, options.word_order);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    total += SentenceChrfStats(preds[i], refs[i], options);
  }
  return ChrfFromStats(total, options.beta);
}

MtScores CorpusMtScores(const std::vector<std::string>& preds,
                        const std::vector<std::string>& refs, bool lowercase) {
  MtScores s;
  BleuOptions bleu;
  bleu.lowercase = lowercase;
  s.bleu = CorpusBleu(preds, refs, bleu);
  ChrfOptions chrf;
  chrf.lowercase = lowercase;
  s.chrf = Chrf(preds, refs, chrf);
  ChrfOptions chrf_pp = ChrfOptions::ChrfPlusPlus();
  chrf_pp.lowercase = lowercase;
  s.chrf_pp = Chrf(preds, refs, chrf_pp);
  return s;
}

}  // namespace ipis
