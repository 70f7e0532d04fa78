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

#include "qmetric/tuner.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmetric/rng.hpp"

namespace qmetric {

namespace {

// A grid candidate, stored as integer grid indices. Candidates are
// enumerated in ascending (delta, w_ne, w_content, w_qt, w_fn) order, so the
// first maximum found in index order is the lexicographic tie-break winner.
struct Candidate {
  int delta_steps;
  std::array<int, kNumTokenClasses> weight_steps;  // indexed by TokenClass
};

std::vector<Candidate> enumerate_candidates(int steps) {
  std::vector<Candidate> candidates;
  for (int d = 0; d <= steps; ++d) {
    for (int ne = 0; ne <= steps; ++ne) {
      for (int content = 0; content + ne <= steps; ++content) {
        for (int qt = 0; qt + content + ne <= steps; ++qt) {
          int fn = steps - ne - content - qt;
          Candidate c;
          c.delta_steps = d;
          c.weight_steps[static_cast<size_t>(TokenClass::kNamedEntity)] = ne;
          c.weight_steps[static_cast<size_t>(TokenClass::kContentWord)] =
              content;
          c.weight_steps[static_cast<size_t>(TokenClass::kQuestionType)] = qt;
          c.weight_steps[static_cast<size_t>(TokenClass::kFunctionWord)] = fn;
          candidates.push_back(c);
        }
      }
    }
  }
  return candidates;
}

std::array<double, kNumTokenClasses> candidate_weights(const Candidate& c,
                                                       int steps) {
  std::array<double, kNumTokenClasses> w{};
  for (size_t i = 0; i < kNumTokenClasses; ++i) {
    w[i] = static_cast<double>(c.weight_steps[i]) / static_cast<double>(steps);
  }
  return w;
}

// Per-record quantities that do not depend on the candidate.
struct RecordView {
  std::array<double, kNumTokenClasses> p_ratio{};
  std::array<double, kNumTokenClasses> r_ratio{};
  unsigned hyp_mask = 0;
  unsigned ref_mask = 0;
  double base = 0.0;
  double gold = 0.0;
};

// Pearson correlation between the candidate's combined metric and gold over
// one bag. Returns -infinity when the candidate's predictions are constant,
// so degenerate candidates never win.
double candidate_correlation(const Candidate& candidate, int steps,
                             std::span<const RecordView> bag) {
  const auto weights = candidate_weights(candidate, steps);
  const double delta =
      static_cast<double>(candidate.delta_steps) / static_cast<double>(steps);

  const double n = static_cast<double>(bag.size());
  double sum_q = 0.0, sum_g = 0.0, sum_qq = 0.0, sum_gg = 0.0, sum_qg = 0.0;
  for (const RecordView& rec : bag) {
    double ans = answerability_from_ratios(rec.p_ratio, rec.r_ratio,
                                           rec.hyp_mask, rec.ref_mask, weights);
    double q = delta * ans + (1.0 - delta) * rec.base;
    sum_q += q;
    sum_g += rec.gold;
    sum_qq += q * q;
    sum_gg += rec.gold * rec.gold;
    sum_qg += q * rec.gold;
  }
  double cov = sum_qg - sum_q * sum_g / n;
  double var_q = sum_qq - sum_q * sum_q / n;
  double var_g = sum_gg - sum_g * sum_g / n;
  if (var_q <= 0.0 || var_g <= 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return cov / std::sqrt(var_q * var_g);
}

struct BagBest {
  double correlation = -std::numeric_limits<double>::infinity();
  size_t index = std::numeric_limits<size_t>::max();
};

// Earlier index wins ties; with candidates in lexicographic order this is
// the documented tie-break.
void take_better(BagBest& best, double correlation, size_t index) {
  if (correlation > best.correlation ||
      (correlation == best.correlation && index < best.index)) {
    best.correlation = correlation;
    best.index = index;
  }
}

BagBest best_candidate_serial(std::span<const Candidate> candidates, int steps,
                              std::span<const RecordView> bag) {
  BagBest best;
  for (size_t c = 0; c < candidates.size(); ++c) {
    take_better(best, candidate_correlation(candidates[c], steps, bag), c);
  }
  return best;
}

// OpenMP kernel. Each candidate is evaluated independently on one thread, so
// its correlation is bit-identical to the serial run; the reduction keeps
// the smallest index among equal maxima, which makes the winner independent
// of thread count and schedule.
BagBest best_candidate_parallel(std::span<const Candidate> candidates,
                                int steps, std::span<const RecordView> bag,
                                int threads) {
  BagBest best;
  int num_threads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(num_threads)
  {
    BagBest local;
#pragma omp for schedule(static) nowait
    for (int64_t c = 0; c < static_cast<int64_t>(candidates.size()); ++c) {
      take_better(local,
                  candidate_correlation(candidates[static_cast<size_t>(c)],
                                        steps, bag),
                  static_cast<size_t>(c));
    }
#pragma omp critical
    take_better(best, local.correlation, local.index);
  }
  return best;
}

int grid_steps(double grid_step) {
  int steps = static_cast<int>(std::llround(1.0 / grid_step));
  if (steps < 1 || std::abs(steps * grid_step - 1.0) > 1e-9) {
    throw std::invalid_argument("TuneConfig: grid_step must divide 1 evenly");
  }
  return steps;
}

TuneResult run_tuning(const TuneInputs& inputs, const TuneConfig& config,
                      const std::string& base_metric, bool parallel) {
  config.validate();
  if (inputs.base_scores.size() != inputs.size() ||
      inputs.counts.size() != inputs.size()) {
    throw std::invalid_argument("tune_weights: misaligned input columns");
  }
  if (inputs.size() < config.pool_size) {
    throw std::invalid_argument("tune_weights: fewer records than pool_size");
  }

  const int steps = grid_steps(config.grid_step);

  // The pool is the first pool_size records.
  std::vector<RecordView> pool(config.pool_size);
  for (size_t i = 0; i < config.pool_size; ++i) {
    RecordView& rec = pool[i];
    const ClassMatchCounts& counts = inputs.counts[i];
    for (size_t cls = 0; cls < kNumTokenClasses; ++cls) {
      if (counts.hyp_total[cls] > 0) {
        rec.hyp_mask |= 1u << cls;
        rec.p_ratio[cls] = static_cast<double>(counts.matched[cls]) /
                           static_cast<double>(counts.hyp_total[cls]);
      }
      if (counts.ref_total[cls] > 0) {
        rec.ref_mask |= 1u << cls;
        rec.r_ratio[cls] = static_cast<double>(counts.matched[cls]) /
                           static_cast<double>(counts.ref_total[cls]);
      }
    }
    rec.base = inputs.base_scores[i];
    rec.gold = inputs.gold[i];
  }

  {
    double mean = 0.0;
    for (const auto& r : pool) mean += r.gold;
    mean /= static_cast<double>(pool.size());
    double var = 0.0;
    for (const auto& r : pool) var += (r.gold - mean) * (r.gold - mean);
    // Numerically constant gold; the threshold is far below any real rating
    // spread but absorbs summation round-off.
    if (var <= 1e-24) {
      throw std::invalid_argument("tune_weights: gold scores have no variance");
    }
  }

  const std::vector<Candidate> candidates = enumerate_candidates(steps);

  TuneResult result;
  SplitMix64 rng(config.seed);
  for (size_t bag_index = 0; bag_index < config.bags; ++bag_index) {
    auto picks =
        sample_without_replacement(rng, config.pool_size, config.bag_size);
    std::vector<RecordView> bag;
    bag.reserve(picks.size());
    for (size_t p : picks) bag.push_back(pool[p]);

    BagBest best = parallel
                       ? best_candidate_parallel(candidates, steps, bag,
                                                 config.threads)
                       : best_candidate_serial(candidates, steps, bag);
    if (!std::isfinite(best.correlation)) {
      throw std::runtime_error(
          "tune_weights: every grid candidate was degenerate on bag " +
          std::to_string(bag_index));
    }

    const Candidate& won = candidates[best.index];
    BagOutcome outcome;
    outcome.weights = candidate_weights(won, steps);
    outcome.delta =
        static_cast<double>(won.delta_steps) / static_cast<double>(steps);
    outcome.correlation = best.correlation;
    result.per_bag.push_back(outcome);
  }

  // Average the bag winners; renormalize the weights so they sum to 1.
  std::array<double, kNumTokenClasses> mean_w{};
  double mean_delta = 0.0;
  for (const auto& bag : result.per_bag) {
    for (size_t i = 0; i < kNumTokenClasses; ++i) mean_w[i] += bag.weights[i];
    mean_delta += bag.delta;
  }
  const double k = static_cast<double>(result.per_bag.size());
  for (auto& w : mean_w) w /= k;
  mean_delta /= k;

  // Spread of the bag winners around their raw mean.
  for (const auto& bag : result.per_bag) {
    for (size_t i = 0; i < kNumTokenClasses; ++i) {
      double d = bag.weights[i] - mean_w[i];
      result.weight_stddev[i] += d * d;
    }
    double dd = bag.delta - mean_delta;
    result.delta_stddev += dd * dd;
  }
  for (auto& sd : result.weight_stddev) sd = std::sqrt(sd / k);
  result.delta_stddev = std::sqrt(result.delta_stddev / k);

  double total_w = 0.0;
  for (double w : mean_w) total_w += w;
  if (total_w > 0.0) {
    for (auto& w : mean_w) w /= total_w;
  }

  result.config.weights = mean_w;
  result.config.delta = mean_delta;
  result.config.base_metric = base_metric;
  result.config.validate();
  return result;
}

}  // namespace

void TuneConfig::validate() const {
  if (pool_size == 0 || bag_size == 0 || bags == 0) {
    throw std::invalid_argument("TuneConfig: sizes must be positive");
  }
  if (bag_size > pool_size) {
    throw std::invalid_argument("TuneConfig: bag_size exceeds pool_size");
  }
  grid_steps(grid_step);
}

TuneResult tune_weights(const TuneInputs& inputs, const TuneConfig& config,
                        const std::string& base_metric) {
  return run_tuning(inputs, config, base_metric, /*parallel=*/true);
}

TuneResult tune_weights_serial(const TuneInputs& inputs,
                               const TuneConfig& config,
                               const std::string& base_metric) {
  return run_tuning(inputs, config, base_metric, /*parallel=*/false);
}

}  // namespace qmetric
