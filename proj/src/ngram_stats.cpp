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

#include "qmetric/ngram_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace qmetric {

namespace {

// n-grams keyed by their space-joined form; tokens contain no whitespace so
// the join is unambiguous.
using NgramCounts = std::unordered_map<std::string, int64_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + static_cast<size_t>(n) <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (size_t j = 1; j < static_cast<size_t>(n); ++j) {
      key += ' ';
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

NgramStats& NgramStats::operator+=(const NgramStats& other) {
  if (order != other.order) {
    throw std::invalid_argument("NgramStats: order mismatch in +=");
  }
  for (size_t i = 0; i < matched.size(); ++i) {
    matched[i] += other.matched[i];
    total_hyp[i] += other.total_hyp[i];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

NgramStats ngram_stats(const TokenList& hyp, std::span<const TokenList> refs,
                       int order) {
  if (order < 1) throw std::invalid_argument("ngram_stats: order must be >= 1");
  if (refs.empty()) {
    throw std::invalid_argument("ngram_stats: at least one reference required");
  }

  NgramStats stats(order);
  stats.hyp_len = static_cast<int64_t>(hyp.size());

  // Effective reference length: closest to the hypothesis, ties toward the
  // shorter reference.
  int64_t best_ref = static_cast<int64_t>(refs[0].size());
  for (const auto& ref : refs) {
    int64_t len = static_cast<int64_t>(ref.size());
    int64_t d_new = std::llabs(len - stats.hyp_len);
    int64_t d_old = std::llabs(best_ref - stats.hyp_len);
    if (d_new < d_old || (d_new == d_old && len < best_ref)) best_ref = len;
  }
  stats.ref_len = best_ref;

  for (int n = 1; n <= order; ++n) {
    NgramCounts hyp_counts = count_ngrams(hyp.tokens, n);

    NgramCounts max_ref_counts;
    for (const auto& ref : refs) {
      for (const auto& [key, count] : count_ngrams(ref.tokens, n)) {
        auto& slot = max_ref_counts[key];
        slot = std::max(slot, count);
      }
    }

    int64_t matched = 0;
    int64_t total = 0;
    for (const auto& [key, count] : hyp_counts) {
      total += count;
      auto it = max_ref_counts.find(key);
      if (it != max_ref_counts.end()) {
        matched += std::min(count, it->second);
      }
    }
    stats.matched[static_cast<size_t>(n - 1)] = matched;
    stats.total_hyp[static_cast<size_t>(n - 1)] = total;
  }
  return stats;
}

double bleu(const NgramStats& stats, int order, Smoothing smoothing) {
  if (order < 1) throw std::invalid_argument("bleu: order must be >= 1");
  if (stats.order < order) {
    throw std::invalid_argument("bleu: stats cover fewer orders than requested");
  }
  if (stats.hyp_len == 0) return 0.0;

  double log_precision_sum = 0.0;
  for (int n = 1; n <= order; ++n) {
    double num = static_cast<double>(stats.matched[static_cast<size_t>(n - 1)]);
    double den =
        static_cast<double>(stats.total_hyp[static_cast<size_t>(n - 1)]);
    if (den == 0.0) return 0.0;
    if (num == 0.0) {
      if (smoothing.kind == Smoothing::Kind::kAddEpsilon) {
        num = smoothing.epsilon;
      } else {
        return 0.0;
      }
    }
    log_precision_sum += std::log(num / den);
  }

  double brevity = 1.0;
  if (stats.hyp_len <= stats.ref_len) {
    brevity = std::exp(1.0 - static_cast<double>(stats.ref_len) /
                                 static_cast<double>(stats.hyp_len));
  }
  return brevity * std::exp(log_precision_sum / order);
}

double sentence_bleu(const TokenList& hyp, std::span<const TokenList> refs,
                     int order, Smoothing smoothing) {
  return bleu(ngram_stats(hyp, refs, order), order, smoothing);
}

NgramStats sum_stats(std::span<const NgramStats> per_sentence) {
  if (per_sentence.empty()) {
    throw std::invalid_argument("sum_stats: empty stats list");
  }
  NgramStats total(per_sentence[0].order);
  for (const auto& s : per_sentence) total += s;
  return total;
}

double corpus_bleu(std::span<const NgramStats> per_sentence, int order,
                   Smoothing smoothing) {
  return bleu(sum_stats(per_sentence), order, smoothing);
}

}  // namespace qmetric
