// Copyright 2026 The QMetric Authors.
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

#ifndef QMETRIC_NGRAM_STATS_HPP_
#define QMETRIC_NGRAM_STATS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "qmetric/tokens.hpp"

namespace qmetric {

// Clipped n-gram match counts for one sentence pair, per order 1..N.
// Stats of two sentences add component-wise to give corpus stats.
struct NgramStats {
  int order = 0;
  std::vector<int64_t> matched;    // matched[n-1]: clipped matches of order n
  std::vector<int64_t> total_hyp;  // total_hyp[n-1]: hypothesis n-gram count
  int64_t hyp_len = 0;
  int64_t ref_len = 0;  // effective reference length

  NgramStats() = default;
  explicit NgramStats(int n)
      : order(n), matched(static_cast<size_t>(n), 0),
        total_hyp(static_cast<size_t>(n), 0) {}

  NgramStats& operator+=(const NgramStats& other);
};

// Clipped match counts against one or more references. Each reference n-gram
// occurrence is consumable once, with per-reference maximum clipping; the
// effective reference length is the one closest to the hypothesis length,
// ties toward the shorter reference. order must be >= 1 and refs non-empty.
NgramStats ngram_stats(const TokenList& hyp, std::span<const TokenList> refs,
                       int order);

struct Smoothing {
  enum class Kind { kNone, kAddEpsilon };
  Kind kind = Kind::kNone;
  double epsilon = 0.1;

  static Smoothing none() { return {}; }
  static Smoothing add_epsilon(double eps) {
    return {Kind::kAddEpsilon, eps};
  }
};

// BLEU from precomputed stats: brevity penalty times the geometric mean of
// the n-gram precisions for n = 1..order. Without smoothing a zero precision
// makes the score 0; add-epsilon smoothing substitutes epsilon for zero
// numerators (a zero denominator still yields 0). An empty hypothesis scores
// 0. stats must cover at least `order` orders.
double bleu(const NgramStats& stats, int order,
            Smoothing smoothing = Smoothing::none());

// Single-call sentence BLEU.
double sentence_bleu(const TokenList& hyp, std::span<const TokenList> refs,
                     int order, Smoothing smoothing = Smoothing::none());

// Standard corpus BLEU: component-wise sum of sentence stats, then the BLEU
// formula on the totals. Errors on an empty list.
double corpus_bleu(std::span<const NgramStats> per_sentence, int order,
                   Smoothing smoothing = Smoothing::none());

NgramStats sum_stats(std::span<const NgramStats> per_sentence);

}  // namespace qmetric

#endif  // QMETRIC_NGRAM_STATS_HPP_
