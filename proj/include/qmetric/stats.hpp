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

#ifndef QMETRIC_STATS_HPP_
#define QMETRIC_STATS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qmetric {

struct Rating {
  std::string annotator;
  int score = 0;  // 1..5
};

// One human-judged noisy question. `gold` is the normalized, averaged
// rating in [0,1]; normalize_scores fills it.
struct JudgmentRecord {
  std::string id;
  std::string noisy;
  std::string reference;
  std::vector<Rating> ratings;
  std::optional<double> gold;
};

// Rating normalization: per annotator, z-standardize (an annotator with zero
// rating spread maps to all zeros; one with a single rating skips this step),
// then min-max rescale that annotator's scores to [0,1] across the dataset
// (constant scores map to the 0.5 midpoint). The gold score of a record is
// the mean of its normalized ratings. Errors on an empty record list.
std::vector<JudgmentRecord> normalize_scores(std::vector<JudgmentRecord> records);

// Sample Pearson correlation. Errors on length mismatch, fewer than two
// points, or zero variance on either side.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Spearman rank correlation: Pearson on mid ranks, ties receiving the
// average of the ranks they occupy. Same error conditions as pearson.
double spearman(std::span<const double> xs, std::span<const double> ys);

// Mid ranks (1-based); tied values share the average rank of their block.
std::vector<double> mid_ranks(std::span<const double> values);

// Unweighted Cohen's kappa between two raters over the same items. Returns 1
// for perfect agreement even when expected agreement is 1. Errors on length
// mismatch or empty input.
double cohen_kappa(std::span<const int> a, std::span<const int> b);

struct CorrelationReport {
  double pearson = 0.0;
  double spearman = 0.0;
  size_t n = 0;
  // Two-sided permutation test on the Pearson coefficient at alpha = 0.01.
  bool significant = false;
  double p_value = 1.0;
};

// Pearson + Spearman + a seeded permutation test (default 10000 shuffles).
CorrelationReport correlation_report(std::span<const double> xs,
                                     std::span<const double> ys, uint64_t seed,
                                     int permutations = 10000);

}  // namespace qmetric

#endif  // QMETRIC_STATS_HPP_
