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

// Proofreading scores over normalized bags and corpus-level MT metrics
// (BLEU, chrF, chrF++) over raw strings. All scores are on a 0-100 scale.

#ifndef IPIS_METRICS_H_
#define IPIS_METRICS_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ipis/normalize.h"

namespace ipis {

// Raw counts for one instance; corpus scores are computed from summed counts.
//
// Edits are multiset differences against the source bag:
//   E_gold = gold - src, E_pred = pred - src
//   tp = |E_pred & E_gold|, fp = |E_pred - E_gold|, fn = |E_gold - E_pred|
// and accuracy is the multiset Jaccard |pred & gold| / |pred | gold|.
struct ProofCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t overlap = 0;  // |pred & gold|
  std::size_t merged = 0;   // |pred | gold|

  ProofCounts& operator+=(const ProofCounts& other);
};

struct ProofScores {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

ProofCounts CountEdits(const NormalizedBag& src, const NormalizedBag& gold,
                       const NormalizedBag& pred);

// Zero-denominator ratios score 0.
ProofScores ScoreCounts(const ProofCounts& counts);

inline ProofScores ProofScoresFor(const NormalizedBag& src,
                                  const NormalizedBag& gold,
                                  const NormalizedBag& pred) {
  return ScoreCounts(CountEdits(src, gold, pred));
}

struct BleuOptions {
  int max_order = 4;
  bool lowercase = false;
};

// Sufficient statistics; these add up across sentences.
struct BleuStats {
  std::vector<std::size_t> matches;  // clipped, per order
  std::vector<std::size_t> totals;   // hypothesis n-grams, per order
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  explicit BleuStats(int max_order = 4)
      : matches(static_cast<std::size_t>(max_order), 0),
        totals(static_cast<std::size_t>(max_order), 0) {}
  BleuStats& operator+=(const BleuStats& other);
};

BleuStats SentenceBleuStats(std::string_view pred, std::string_view ref,
                            const BleuOptions& options = {});

// Geometric mean of modified precisions over the orders the hypothesis side
// actually has, times the brevity penalty. Any zero precision gives 0; no
// smoothing.
double BleuFromStats(const BleuStats& stats);

// Throws ipis::ValidationError when the lists differ in length.
double CorpusBleu(const std::vector<std::string>& preds,
                  const std::vector<std::string>& refs,
                  const BleuOptions& options = {});

struct ChrfOptions {
  int char_order = 6;
  int word_order = 0;  // 0 for chrF, 2 for chrF++
  double beta = 2.0;
  bool lowercase = false;

  static ChrfOptions ChrfPlusPlus() {
    ChrfOptions o;
    o.word_order = 2;
    return o;
  }
};

// Per order: hypothesis n-grams, reference n-grams, matched n-grams.
struct ChrfStats {
  struct Order {
    std::size_t hyp = 0;
    std::size_t ref = 0;
    std::size_t match = 0;
  };
  std::vector<Order> chars;
  std::vector<Order> words;

  ChrfStats(int char_order, int word_order)
      : chars(static_cast<std::size_t>(char_order)),
        words(static_cast<std::size_t>(word_order)) {}
  ChrfStats& operator+=(const ChrfStats& other);
};

ChrfStats SentenceChrfStats(std::string_view pred, std::string_view ref,
                            const ChrfOptions& options = {});

// Mean F-beta over every order that has n-grams on both sides. Corpora with no
// characters at all on either side score 100.
double ChrfFromStats(const ChrfStats& stats, double beta);

double Chrf(const std::vector<std::string>& preds,
            const std::vector<std::string>& refs,
            const ChrfOptions& options = {});

struct MtScores {
  double bleu = 0;
  double chrf = 0;
  double chrf_pp = 0;
};

MtScores CorpusMtScores(const std::vector<std::string>& preds,
                        const std::vector<std::string>& refs,
                        bool lowercase = false);

}  // namespace ipis

#endif  // IPIS_METRICS_H_
