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

#ifndef QMETRIC_TUNER_HPP_
#define QMETRIC_TUNER_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qmetric/answerability.hpp"

namespace qmetric {

// Bagged grid-search configuration. Defaults follow the tuning protocol:
// 20 bags of 200 records drawn from a 300-record pool, a 0.05 grid over the
// weight simplex and delta, Pearson correlation as the objective.
struct TuneConfig {
  size_t pool_size = 300;
  size_t bag_size = 200;
  size_t bags = 20;
  double grid_step = 0.05;
  uint64_t seed = 0;
  int threads = 0;  // 0 = OpenMP default

  void validate() const;
};

// Tuning data, aligned by record: human gold score, base metric score in
// [0,1], and the per-class match counts of the noisy question against its
// reference.
struct TuneInputs {
  std::vector<double> gold;
  std::vector<double> base_scores;
  std::vector<ClassMatchCounts> counts;

  size_t size() const { return gold.size(); }
};

struct BagOutcome {
  std::array<double, kNumTokenClasses> weights{};
  double delta = 0.0;
  double correlation = 0.0;
};

struct TuneResult {
  WeightConfig config;  // per-bag winners averaged, weights renormalized
  std::array<double, kNumTokenClasses> weight_stddev{};
  double delta_stddev = 0.0;
  std::vector<BagOutcome> per_bag;
};

// Bagged grid search: for each bag, enumerate every weight assignment on the
// simplex and every delta at grid_step resolution, score each candidate by
// the Pearson correlation between its combined metric and the gold scores,
// and keep the maximizer (ties broken toward the lexicographically smallest
// (delta, w_named_entity, w_content, w_question_type, w_function)). The
// result averages the bag winners. Bag sampling is sequential from the
// seeded generator and candidates are independent, so the outcome does not
// depend on thread count. Candidate evaluation runs across OpenMP threads.
TuneResult tune_weights(const TuneInputs& inputs, const TuneConfig& config,
                        const std::string& base_metric);

// Single-threaded reference implementation; must agree with tune_weights
// exactly.
TuneResult tune_weights_serial(const TuneInputs& inputs,
                               const TuneConfig& config,
                               const std::string& base_metric);

}  // namespace qmetric

#endif  // QMETRIC_TUNER_HPP_
