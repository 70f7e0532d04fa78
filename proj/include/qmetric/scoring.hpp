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

#ifndef QMETRIC_SCORING_HPP_
#define QMETRIC_SCORING_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmetric/answerability.hpp"
#include "qmetric/info_model.hpp"
#include "qmetric/io.hpp"
#include "qmetric/lexicon.hpp"
#include "qmetric/meteor.hpp"
#include "qmetric/ngram_stats.hpp"

namespace qmetric {

// Metric names accepted on the command line and in score output. Base
// metrics: bleu1..bleu4, rouge-l, meteor, nist. Prefixing "q-" yields the
// answerability-combined variant, which requires a WeightConfig.
bool is_known_metric(const std::string& name);
bool is_q_metric(const std::string& name);
const std::vector<std::string>& known_metrics();

struct ScoreOptions {
  std::vector<std::string> metrics;
  std::optional<WeightConfig> weights;  // required for q-* metrics
  bool strip_punct = true;
  // Metric matching is case-insensitive (tokens are lowercased before
  // n-gram/LCS/alignment computation); classification still sees the cased
  // forms.
  bool lowercase = true;
  // Emit the answerability components (p_avg, r_avg) alongside q-* scores.
  bool components = false;
  int nist_order = 5;
  int bleu_order_cap = 4;
  MeteorParams meteor_params;
  Smoothing bleu_smoothing = Smoothing::none();
  // External frequency corpus for NIST; when absent the model is built from
  // the reference side of the scored corpus.
  const InfoModel* info_model = nullptr;
  const Lexicon* lexicon = nullptr;  // builtin when null
  int threads = 0;                   // 0 = OpenMP default
};

struct ScoreRow {
  std::string id;
  // One entry per requested metric, in request order.
  std::vector<std::pair<std::string, double>> values;
  std::optional<double> p_avg;
  std::optional<double> r_avg;
};

struct CorpusSummary {
  // Per requested metric: corpus-aggregated BLEU for bleuN (clipped counts
  // summed, then the BLEU formula), arithmetic mean for everything else.
  std::vector<std::pair<std::string, double>> values;
  size_t records = 0;
};

struct ScoreResult {
  std::vector<ScoreRow> rows;  // input order, regardless of thread count
  CorpusSummary summary;
};

// Scores every record. Rows are computed independently (OpenMP across
// records) and the summary is folded serially from the rows, so output is
// identical for any thread count.
ScoreResult score_corpus(const std::vector<PairRecord>& records,
                         const ScoreOptions& options);

// Single-threaded reference implementation; must agree with score_corpus
// exactly.
ScoreResult score_corpus_serial(const std::vector<PairRecord>& records,
                                const ScoreOptions& options);

// NIST mapped to [0,1] for use inside the combined metric: the hypothesis
// score divided by the reference's self-score (capped at 1). Plain "nist"
// output stays unbounded.
double normalized_nist(const TokenList& hyp, const TokenList& ref,
                       const InfoModel& info, int order);

}  // namespace qmetric

#endif  // QMETRIC_SCORING_HPP_
