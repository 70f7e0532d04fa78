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

// Serial reference vs OpenMP kernels on the two hot paths: record-parallel
// corpus scoring and candidate-parallel grid search.
//
//   ./qmetric_bench                      # all benchmarks
//   ./qmetric_bench --benchmark_filter=grid

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "qmetric/io.hpp"
#include "qmetric/rng.hpp"
#include "qmetric/scoring.hpp"
#include "qmetric/tuner.hpp"

namespace {

using namespace qmetric;

const std::vector<std::string> kTypes = {"Who", "What", "Where", "When",
                                         "Why", "How"};
const std::vector<std::string> kEntities = {"Titanic", "Paris", "Tesla",
                                            "Gandhi", "Avatar", "Boston"};
const std::vector<std::string> kContents = {"directed", "killed", "wrote",
                                            "painted", "invented", "votes"};
const std::vector<std::string> kFunctions = {"was", "the", "of", "in",
                                             "a",   "is",  "did"};

std::string synth_question(SplitMix64& rng) {
  std::string q = kTypes[rng.below(kTypes.size())];
  size_t body = 4 + rng.below(8);
  for (size_t i = 0; i < body; ++i) {
    switch (rng.below(4)) {
      case 0:
        q += " " + kEntities[rng.below(kEntities.size())];
        break;
      case 1:
        q += " " + kContents[rng.below(kContents.size())];
        break;
      default:
        q += " " + kFunctions[rng.below(kFunctions.size())];
        break;
    }
  }
  return q;
}

std::string degrade(SplitMix64& rng, const std::string& text) {
  TokenList toks = tokenize(text, true);
  std::string out;
  for (const auto& tok : toks.tokens) {
    if (rng.below(100) < 30) continue;
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

std::vector<PairRecord> corpus(size_t n) {
  SplitMix64 rng(1);
  std::vector<PairRecord> records;
  records.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    std::string ref = synth_question(rng);
    records.push_back({"b" + std::to_string(i), degrade(rng, ref), {ref}});
  }
  return records;
}

TuneInputs tuning_pool(size_t n) {
  SplitMix64 rng(2);
  const Lexicon lexicon = Lexicon::builtin();
  WeightConfig planted;
  planted.weights = {0.2, 0.3, 0.4, 0.1};
  planted.delta = 0.7;
  planted.base_metric = "bleu1";

  TuneInputs inputs;
  for (size_t i = 0; i < n; ++i) {
    std::string ref_text = synth_question(rng);
    std::string hyp_text = degrade(rng, ref_text);
    TokenList hyp = tokenize(hyp_text, true);
    TokenList ref = tokenize(ref_text, true);
    auto counts = match_counts(classify_tokens(hyp, lexicon),
                               classify_tokens(ref, lexicon));
    std::vector<TokenList> refs = {lowercased(ref)};
    double base = sentence_bleu(lowercased(hyp), refs, 1);
    double ans = answerability(counts, planted).answerability;
    inputs.counts.push_back(counts);
    inputs.base_scores.push_back(base);
    inputs.gold.push_back(q_metric(ans, base, planted.delta));
  }
  return inputs;
}

ScoreOptions scoring_options() {
  ScoreOptions options;
  options.metrics = {"bleu4", "rouge-l", "meteor", "q-bleu1"};
  options.weights = WeightConfig::uniform(0.7, "bleu1");
  return options;
}

void BM_score_serial(benchmark::State& state) {
  auto records = corpus(static_cast<size_t>(state.range(0)));
  auto options = scoring_options();
  for (auto _ : state) {
    auto result = score_corpus_serial(records, options);
    benchmark::DoNotOptimize(result.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_score_openmp(benchmark::State& state) {
  auto records = corpus(static_cast<size_t>(state.range(0)));
  auto options = scoring_options();
  for (auto _ : state) {
    auto result = score_corpus(records, options);
    benchmark::DoNotOptimize(result.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_grid_search_serial(benchmark::State& state) {
  auto inputs = tuning_pool(120);
  TuneConfig config;
  config.pool_size = 120;
  config.bag_size = 100;
  config.bags = 1;
  config.grid_step = 0.05;
  for (auto _ : state) {
    auto result = tune_weights_serial(inputs, config, "bleu1");
    benchmark::DoNotOptimize(result.config.delta);
  }
}

void BM_grid_search_openmp(benchmark::State& state) {
  auto inputs = tuning_pool(120);
  TuneConfig config;
  config.pool_size = 120;
  config.bag_size = 100;
  config.bags = 1;
  config.grid_step = 0.05;
  for (auto _ : state) {
    auto result = tune_weights(inputs, config, "bleu1");
    benchmark::DoNotOptimize(result.config.delta);
  }
  state.counters["threads"] = omp_get_max_threads();
}

BENCHMARK(BM_score_serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score_openmp)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_search_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_search_openmp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
