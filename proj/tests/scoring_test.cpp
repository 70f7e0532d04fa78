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

#include "qmetric/scoring.hpp"

#include <vector>

#include "doctest.h"
#include "qmetric/rng.hpp"
#include "test_util.hpp"

using namespace qmetric;

namespace {

std::vector<PairRecord> synthetic_corpus(size_t n, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<PairRecord> records;
  for (size_t i = 0; i < n; ++i) {
    std::string ref = testutil::random_question(rng);
    std::string hyp = testutil::degrade_question(rng, ref);
    records.push_back({"q" + std::to_string(i), hyp, {ref}});
  }
  return records;
}

bool same_rows(const std::vector<ScoreRow>& a, const std::vector<ScoreRow>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].id != b[i].id) return false;
    if (a[i].values != b[i].values) return false;  // bit-exact doubles
    if (a[i].p_avg != b[i].p_avg) return false;
    if (a[i].r_avg != b[i].r_avg) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the worked pair file scores 0.368 and 0.819 on bleu3") {
  std::vector<PairRecord> records = {
      {"s2", "Who was the director of ?", {"Who was the director of Titanic ?"}},
      {"s1", "director of Titanic ?", {"Who was the director of Titanic ?"}},
  };
  ScoreOptions options;
  options.metrics = {"bleu3"};
  ScoreResult result = score_corpus(records, options);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].values[0].second ==
        doctest::Approx(0.819).epsilon(1e-3));
  CHECK(result.rows[1].values[0].second ==
        doctest::Approx(0.368).epsilon(1e-3));
}

TEST_CASE("q metric with delta zero reproduces the base column") {
  auto records = synthetic_corpus(80, 10);
  ScoreOptions options;
  options.metrics = {"bleu1", "q-bleu1"};
  options.weights = WeightConfig::uniform(0.0, "bleu1");
  ScoreResult result = score_corpus(records, options);
  for (const auto& row : result.rows) {
    CHECK(row.values[0].second == row.values[1].second);
  }
}

TEST_CASE("every metric stays in range on random corpora") {
  auto records = synthetic_corpus(150, 11);
  ScoreOptions options;
  options.metrics = {"bleu1", "bleu4", "rouge-l", "meteor", "nist",
                     "q-bleu4", "q-nist", "q-meteor", "q-rouge-l"};
  options.weights = WeightConfig::uniform(0.5, "bleu4");
  options.components = true;
  ScoreResult result = score_corpus(records, options);
  for (const auto& row : result.rows) {
    for (const auto& [name, value] : row.values) {
      CHECK(value >= 0.0);
      if (name != "nist") CHECK(value <= 1.0 + 1e-12);
    }
    REQUIRE(row.p_avg.has_value());
    CHECK(*row.p_avg >= 0.0);
    CHECK(*row.p_avg <= 1.0);
    CHECK(*row.r_avg >= 0.0);
    CHECK(*row.r_avg <= 1.0);
  }
  CHECK(result.summary.records == records.size());
  REQUIRE(result.summary.values.size() == options.metrics.size());
}

TEST_CASE("identity corpus summary is 1 for bounded metrics") {
  std::vector<PairRecord> records;
  SplitMix64 rng(12);
  for (int i = 0; i < 20; ++i) {
    // At least four tokens, so the four-gram precision has a denominator.
    std::string q;
    do {
      q = testutil::random_question(rng);
    } while (tokenize(q).size() < 4);
    records.push_back({"id" + std::to_string(i), q, {q}});
  }
  ScoreOptions options;
  options.metrics = {"bleu4", "rouge-l", "q-bleu4"};
  options.weights = WeightConfig::uniform(0.5, "bleu4");
  ScoreResult result = score_corpus(records, options);
  CHECK(result.summary.values[0].second == doctest::Approx(1.0));
  CHECK(result.summary.values[1].second == doctest::Approx(1.0));
  CHECK(result.summary.values[2].second == doctest::Approx(1.0));
}

TEST_CASE("serial reference and OpenMP kernel agree bit for bit") {
  auto records = synthetic_corpus(300, 13);
  ScoreOptions options;
  options.metrics = {"bleu4", "rouge-l", "meteor", "nist", "q-bleu1"};
  options.weights = WeightConfig::uniform(0.7, "bleu1");
  options.components = true;

  ScoreResult serial = score_corpus_serial(records, options);
  ScoreResult parallel = score_corpus(records, options);
  CHECK(same_rows(serial.rows, parallel.rows));
  CHECK(serial.summary.values == parallel.summary.values);

  // Worker count must not leak into results.
  options.threads = 1;
  ScoreResult one = score_corpus(records, options);
  options.threads = 8;
  ScoreResult eight = score_corpus(records, options);
  CHECK(same_rows(one.rows, eight.rows));
  CHECK(one.summary.values == eight.summary.values);
}

TEST_CASE("unknown metrics and missing weights are usage errors") {
  auto records = synthetic_corpus(3, 14);
  ScoreOptions options;
  options.metrics = {"bleu9000"};
  CHECK_THROWS_AS(score_corpus(records, options), std::invalid_argument);

  options.metrics = {"q-bleu1"};
  options.weights.reset();
  CHECK_THROWS_AS(score_corpus(records, options), std::invalid_argument);

  options.metrics = {"bleu1"};
  CHECK_THROWS_AS(score_corpus({}, options), std::invalid_argument);
}

TEST_CASE("corpus bleu summary matches aggregate stats, not mean of rows") {
  std::vector<PairRecord> records = {
      {"a", "the cat", {"the cat sat on the mat"}},
      {"b", "a dog runs fast", {"a dog runs fast"}},
  };
  ScoreOptions options;
  options.metrics = {"bleu2"};
  ScoreResult result = score_corpus(records, options);

  TokenList h1 = tokenize("the cat");
  TokenList h2 = tokenize("a dog runs fast");
  std::vector<TokenList> r1 = {tokenize("the cat sat on the mat")};
  std::vector<TokenList> r2 = {tokenize("a dog runs fast")};
  std::vector<NgramStats> stats = {ngram_stats(h1, r1, 2),
                                   ngram_stats(h2, r2, 2)};
  CHECK(result.summary.values[0].second ==
        doctest::Approx(corpus_bleu(stats, 2)).epsilon(1e-12));

  double row_mean = (result.rows[0].values[0].second +
                     result.rows[1].values[0].second) / 2.0;
  CHECK(result.summary.values[0].second != doctest::Approx(row_mean));
}

TEST_CASE("known metric names") {
  CHECK(is_known_metric("bleu1"));
  CHECK(is_known_metric("q-nist"));
  CHECK(!is_known_metric("bleu5"));
  CHECK(!is_known_metric("bertscore"));
  CHECK(is_q_metric("q-bleu4"));
  CHECK(!is_q_metric("bleu4"));
  CHECK(known_metrics().size() == 14);
}
