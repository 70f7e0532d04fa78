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

#include "qmetric/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "qmetric/rng.hpp"

namespace qmetric {

std::vector<JudgmentRecord> normalize_scores(
    std::vector<JudgmentRecord> records) {
  if (records.empty()) {
    throw std::invalid_argument("normalize_scores: no records");
  }

  // Collect each annotator's ratings across the dataset. Ordered map keeps
  // the pass deterministic regardless of input order.
  std::map<std::string, std::vector<double>> by_annotator;
  for (const auto& rec : records) {
    if (rec.ratings.empty()) {
      throw std::invalid_argument("normalize_scores: record '" + rec.id +
                                  "' has no ratings");
    }
    for (const auto& r : rec.ratings) {
      if (r.score < 1 || r.score > 5) {
        throw std::invalid_argument("normalize_scores: rating outside 1..5");
      }
      by_annotator[r.annotator].push_back(static_cast<double>(r.score));
    }
  }

  // Per annotator: z-score (skipped for single-rating annotators), then
  // min-max to [0,1]; a constant annotator lands on the 0.5 midpoint.
  struct Transform {
    double mean = 0.0, stddev = 1.0;  // z step
    double lo = 0.0, hi = 1.0;        // min-max step, over z-scores
    bool z_step = true;
    bool constant = false;
  };
  std::unordered_map<std::string, Transform> transforms;
  for (const auto& [annotator, scores] : by_annotator) {
    Transform t;
    double mean =
        std::accumulate(scores.begin(), scores.end(), 0.0) /
        static_cast<double>(scores.size());
    double var = 0.0;
    for (double s : scores) var += (s - mean) * (s - mean);
    var /= static_cast<double>(scores.size());
    double sd = std::sqrt(var);

    if (scores.size() < 2) {
      t.z_step = false;
      t.lo = t.hi = scores.front();
      t.constant = true;
    } else if (sd == 0.0) {
      t.mean = mean;
      t.stddev = 1.0;  // zero spread maps every score to 0
      t.constant = true;
    } else {
      t.mean = mean;
      t.stddev = sd;
      double lo = (*std::min_element(scores.begin(), scores.end()) - mean) / sd;
      double hi = (*std::max_element(scores.begin(), scores.end()) - mean) / sd;
      t.lo = lo;
      t.hi = hi;
    }
    transforms[annotator] = t;
  }

  auto normalized = [&](const Rating& r) {
    const Transform& t = transforms.at(r.annotator);
    if (t.constant) return 0.5;
    double z = t.z_step ? (static_cast<double>(r.score) - t.mean) / t.stddev
                        : static_cast<double>(r.score);
    return (z - t.lo) / (t.hi - t.lo);
  };

  for (auto& rec : records) {
    double sum = 0.0;
    for (const auto& r : rec.ratings) sum += normalized(r);
    rec.gold = sum / static_cast<double>(rec.ratings.size());
  }
  return records;
}

namespace {

void check_pair(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("correlation: length mismatch");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("correlation: need at least two points");
  }
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys);
  const double n = static_cast<double>(xs.size());
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::domain_error("pearson: zero variance");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(values.size(), 0.0);
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() &&
           values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    // Tie block occupies ranks i+1 .. j+1; everyone gets the average.
    double rank = static_cast<double>(i + j + 2) / 2.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys);
  auto rx = mid_ranks(xs);
  auto ry = mid_ranks(ys);
  return pearson(rx, ry);
}

double cohen_kappa(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cohen_kappa: length mismatch");
  }
  if (a.empty()) throw std::invalid_argument("cohen_kappa: empty input");

  const double n = static_cast<double>(a.size());
  std::unordered_map<int, double> marginal_a, marginal_b;
  double agreements = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ++marginal_a[a[i]];
    ++marginal_b[b[i]];
    if (a[i] == b[i]) ++agreements;
  }

  double p_o = agreements / n;
  double p_e = 0.0;
  for (const auto& [cat, count_a] : marginal_a) {
    auto it = marginal_b.find(cat);
    if (it != marginal_b.end()) p_e += (count_a / n) * (it->second / n);
  }
  if (p_e >= 1.0) return p_o >= 1.0 ? 1.0 : 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

CorrelationReport correlation_report(std::span<const double> xs,
                                     std::span<const double> ys, uint64_t seed,
                                     int permutations) {
  CorrelationReport report;
  report.n = xs.size();
  report.pearson = pearson(xs, ys);
  report.spearman = spearman(xs, ys);

  // Two-sided permutation test: shuffle one side, count permuted |r| at or
  // above the observed |r|. The +1 in both numerator and denominator is the
  // standard exact-test estimator.
  SplitMix64 rng(seed);
  std::vector<double> shuffled(ys.begin(), ys.end());
  const double observed = std::abs(report.pearson);
  int at_least_as_extreme = 0;
  for (int p = 0; p < permutations; ++p) {
    shuffle(rng, shuffled);
    double r;
    try {
      r = pearson(xs, shuffled);
    } catch (const std::domain_error&) {
      r = 0.0;  // constant permutation of a tied sample
    }
    if (std::abs(r) >= observed) ++at_least_as_extreme;
  }
  report.p_value = static_cast<double>(at_least_as_extreme + 1) /
                   static_cast<double>(permutations + 1);
  report.significant = report.p_value <= 0.01;
  return report;
}

}  // namespace qmetric
