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

#ifndef QMETRIC_ANSWERABILITY_HPP_
#define QMETRIC_ANSWERABILITY_HPP_

#include <array>
#include <span>
#include <string>

#include "qmetric/lexicon.hpp"

namespace qmetric {

// Per-class token match counts between a hypothesis and a reference
// question. Arrays are indexed by TokenClass.
struct ClassMatchCounts {
  std::array<int, kNumTokenClasses> matched{};
  std::array<int, kNumTokenClasses> hyp_total{};
  std::array<int, kNumTokenClasses> ref_total{};

  int matched_for(TokenClass c) const {
    return matched[static_cast<size_t>(c)];
  }
  int hyp_for(TokenClass c) const {
    return hyp_total[static_cast<size_t>(c)];
  }
  int ref_for(TokenClass c) const {
    return ref_total[static_cast<size_t>(c)];
  }
};

// The learnable parameters: one weight per token class (summing to 1) and
// the mixing coefficient delta of the combined metric, tagged with the base
// metric they were tuned for.
struct WeightConfig {
  std::array<double, kNumTokenClasses> weights{};  // indexed by TokenClass
  double delta = 0.0;
  std::string base_metric;

  double weight_for(TokenClass c) const {
    return weights[static_cast<size_t>(c)];
  }
  // Throws std::invalid_argument when the weights do not sum to 1 (within
  // 1e-6), any weight is outside [0,1], or delta is outside [0,1].
  void validate() const;

  // Equal class weights and the given delta.
  static WeightConfig uniform(double delta, std::string base_metric);
};

struct AnswerabilityScore {
  double p_avg = 0.0;
  double r_avg = 0.0;
  double answerability = 0.0;
  ClassMatchCounts counts;
  // Weights actually applied after redistributing the mass of classes absent
  // from the hypothesis (precision side) or reference (recall side).
  std::array<double, kNumTokenClasses> effective_weights_p{};
  std::array<double, kNumTokenClasses> effective_weights_r{};
};

// Clipped within-class matching on lowered forms: a hypothesis token matches
// only a same-class reference token, and each reference occurrence is
// consumable once. Both questions must be classified with the same lexicon.
ClassMatchCounts match_counts(const ClassifiedQuestion& hyp,
                              const ClassifiedQuestion& ref);

// Class-weighted precision and recall averages and their harmonic mean.
// Classes absent from a side are excluded from that side's average and their
// weight is redistributed proportionally over the present classes (uniformly
// when the present classes carry zero weight, which keeps identical
// sentences at answerability 1 under any valid weights). An empty hypothesis
// (reference) forces P_avg (R_avg) to 0.
AnswerabilityScore answerability(const ClassMatchCounts& counts,
                                 const WeightConfig& weights);

// The same average over precomputed per-class ratios. `present_mask` has bit
// i set when class i is non-empty on this side. `effective`, when non-null,
// receives the redistributed weights. The tuner's inner loop and
// answerability() share this arithmetic, so tuned correlations reproduce
// exactly at scoring time.
double class_weighted_average(
    const std::array<double, kNumTokenClasses>& ratios, unsigned present_mask,
    const std::array<double, kNumTokenClasses>& weights,
    std::array<double, kNumTokenClasses>* effective = nullptr);

// Harmonic mean of the two weighted averages, from precomputed ratios.
double answerability_from_ratios(
    const std::array<double, kNumTokenClasses>& p_ratio,
    const std::array<double, kNumTokenClasses>& r_ratio, unsigned hyp_mask,
    unsigned ref_mask, const std::array<double, kNumTokenClasses>& weights);

// The combined metric: delta * answerability + (1 - delta) * base_score.
// All three arguments must lie in [0,1].
double q_metric(double answerability_value, double base_score, double delta);

// Corpus-level combined metric: arithmetic mean of per-sentence scores.
// Errors on an empty list.
double corpus_q_metric(std::span<const double> per_sentence_scores);

}  // namespace qmetric

#endif  // QMETRIC_ANSWERABILITY_HPP_
