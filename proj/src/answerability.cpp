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

#include "qmetric/answerability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace qmetric {

void WeightConfig::validate() const {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw std::invalid_argument("WeightConfig: weight outside [0,1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument("WeightConfig: weights must sum to 1");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("WeightConfig: delta outside [0,1]");
  }
}

WeightConfig WeightConfig::uniform(double delta, std::string base_metric) {
  WeightConfig cfg;
  cfg.weights.fill(1.0 / static_cast<double>(kNumTokenClasses));
  cfg.delta = delta;
  cfg.base_metric = std::move(base_metric);
  return cfg;
}

ClassMatchCounts match_counts(const ClassifiedQuestion& hyp,
                              const ClassifiedQuestion& ref) {
  ClassMatchCounts counts;

  // Reference multiset per (class, lowered token).
  std::array<std::unordered_map<std::string, int>, kNumTokenClasses> ref_bags;
  for (size_t j = 0; j < ref.size(); ++j) {
    size_t cls = static_cast<size_t>(ref.classes[j]);
    ++counts.ref_total[cls];
    ++ref_bags[cls][ref.lowered[j]];
  }

  for (size_t i = 0; i < hyp.size(); ++i) {
    size_t cls = static_cast<size_t>(hyp.classes[i]);
    ++counts.hyp_total[cls];
    auto it = ref_bags[cls].find(hyp.lowered[i]);
    if (it != ref_bags[cls].end() && it->second > 0) {
      --it->second;
      ++counts.matched[cls];
    }
  }
  return counts;
}

double class_weighted_average(
    const std::array<double, kNumTokenClasses>& ratios, unsigned present_mask,
    const std::array<double, kNumTokenClasses>& weights,
    std::array<double, kNumTokenClasses>* effective) {
  if (effective != nullptr) effective->fill(0.0);

  double present_weight = 0.0;
  int present_classes = 0;
  for (size_t i = 0; i < kNumTokenClasses; ++i) {
    if (present_mask & (1u << i)) {
      present_weight += weights[i];
      ++present_classes;
    }
  }
  if (present_classes == 0) return 0.0;  // empty side

  double avg = 0.0;
  for (size_t i = 0; i < kNumTokenClasses; ++i) {
    if (!(present_mask & (1u << i))) continue;
    double w = present_weight > 0.0
                   ? weights[i] / present_weight
                   : 1.0 / static_cast<double>(present_classes);
    if (effective != nullptr) (*effective)[i] = w;
    avg += w * ratios[i];
  }
  // Renormalized weights can round a hair past 1; the true value is in [0,1].
  return std::clamp(avg, 0.0, 1.0);
}

double answerability_from_ratios(
    const std::array<double, kNumTokenClasses>& p_ratio,
    const std::array<double, kNumTokenClasses>& r_ratio, unsigned hyp_mask,
    unsigned ref_mask, const std::array<double, kNumTokenClasses>& weights) {
  double p = class_weighted_average(p_ratio, hyp_mask, weights);
  double r = class_weighted_average(r_ratio, ref_mask, weights);
  double denom = p + r;
  return denom > 0.0 ? 2.0 * p * r / denom : 0.0;
}

namespace {

struct SideRatios {
  std::array<double, kNumTokenClasses> ratios{};
  unsigned mask = 0;
};

SideRatios side_ratios(const ClassMatchCounts& counts,
                       const std::array<int, kNumTokenClasses>& totals) {
  SideRatios side;
  for (size_t i = 0; i < kNumTokenClasses; ++i) {
    if (totals[i] > 0) {
      side.mask |= 1u << i;
      side.ratios[i] = static_cast<double>(counts.matched[i]) /
                       static_cast<double>(totals[i]);
    }
  }
  return side;
}

}  // namespace

AnswerabilityScore answerability(const ClassMatchCounts& counts,
                                 const WeightConfig& weights) {
  weights.validate();

  SideRatios hyp = side_ratios(counts, counts.hyp_total);
  SideRatios ref = side_ratios(counts, counts.ref_total);

  AnswerabilityScore score;
  score.counts = counts;
  score.p_avg = class_weighted_average(hyp.ratios, hyp.mask, weights.weights,
                                       &score.effective_weights_p);
  score.r_avg = class_weighted_average(ref.ratios, ref.mask, weights.weights,
                                       &score.effective_weights_r);
  double denom = score.p_avg + score.r_avg;
  score.answerability =
      denom > 0.0 ? 2.0 * score.p_avg * score.r_avg / denom : 0.0;
  return score;
}

double q_metric(double answerability_value, double base_score, double delta) {
  if (!(answerability_value >= 0.0 && answerability_value <= 1.0)) {
    throw std::invalid_argument("q_metric: answerability outside [0,1]");
  }
  if (!(base_score >= 0.0 && base_score <= 1.0)) {
    throw std::invalid_argument("q_metric: base score outside [0,1]");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("q_metric: delta outside [0,1]");
  }
  return delta * answerability_value + (1.0 - delta) * base_score;
}

double corpus_q_metric(std::span<const double> per_sentence_scores) {
  if (per_sentence_scores.empty()) {
    throw std::invalid_argument("corpus_q_metric: empty score list");
  }
  double sum = std::accumulate(per_sentence_scores.begin(),
                               per_sentence_scores.end(), 0.0);
  return sum / static_cast<double>(per_sentence_scores.size());
}

}  // namespace qmetric
