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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmetric/rouge.hpp"

namespace qmetric {

namespace {

const std::vector<std::string> kBaseMetrics = {
    "bleu1", "bleu2", "bleu3", "bleu4", "rouge-l", "meteor", "nist"};

int bleu_order_of(const std::string& name) {
  if (name.size() == 5 && name.rfind("bleu", 0) == 0 && name[4] >= '1' &&
      name[4] <= '9') {
    return name[4] - '0';
  }
  return 0;
}

std::string base_of(const std::string& name) {
  return is_q_metric(name) ? name.substr(2) : name;
}

// What a record costs to compute, shared across the metrics that need it.
struct RecordScores {
  NgramStats stats;           // up to the largest requested BLEU order
  double answerability = 0.0;
  double p_avg = 0.0;
  double r_avg = 0.0;
  std::map<std::string, double> base;  // base metric name -> score
};

struct Plan {
  int max_bleu_order = 0;
  bool need_rouge = false;
  bool need_meteor = false;
  bool need_nist = false;
  bool need_answerability = false;
  std::vector<std::string> base_needed;
};

Plan make_plan(const ScoreOptions& options) {
  Plan plan;
  for (const auto& name : options.metrics) {
    if (!is_known_metric(name)) {
      throw std::invalid_argument("unknown metric \"" + name + "\"");
    }
    if (is_q_metric(name)) {
      if (!options.weights) {
        throw std::invalid_argument("metric \"" + name +
                                    "\" requires a weight configuration");
      }
      plan.need_answerability = true;
    }
    std::string base = base_of(name);
    if (std::find(plan.base_needed.begin(), plan.base_needed.end(), base) ==
        plan.base_needed.end()) {
      plan.base_needed.push_back(base);
    }
    if (int order = bleu_order_of(base); order > 0) {
      plan.max_bleu_order = std::max(plan.max_bleu_order, order);
    } else if (base == "rouge-l") {
      plan.need_rouge = true;
    } else if (base == "meteor") {
      plan.need_meteor = true;
    } else if (base == "nist") {
      plan.need_nist = true;
    }
  }
  if (options.weights) options.weights->validate();
  return plan;
}

RecordScores score_record(const PairRecord& record, const Plan& plan,
                          const ScoreOptions& options, const Lexicon& lexicon,
                          const InfoModel* info) {
  RecordScores out;

  TokenList hyp_cased = tokenize(record.hypothesis, options.strip_punct);
  std::vector<TokenList> refs_cased;
  refs_cased.reserve(record.references.size());
  for (const auto& r : record.references) {
    refs_cased.push_back(tokenize(r, options.strip_punct));
  }

  TokenList hyp = options.lowercase ? lowercased(hyp_cased) : hyp_cased;
  std::vector<TokenList> refs;
  refs.reserve(refs_cased.size());
  for (const auto& r : refs_cased) {
    refs.push_back(options.lowercase ? lowercased(r) : r);
  }

  if (plan.max_bleu_order > 0) {
    out.stats = ngram_stats(hyp, refs, plan.max_bleu_order);
    for (const auto& base : plan.base_needed) {
      if (int order = bleu_order_of(base); order > 0) {
        out.base[base] = bleu(out.stats, order, options.bleu_smoothing);
      }
    }
  }

  // Multi-reference rule for single-reference metrics: best score over the
  // references.
  if (plan.need_rouge) {
    double best = 0.0;
    for (const auto& ref : refs) {
      best = std::max(best, rouge_l(hyp, ref));
    }
    out.base["rouge-l"] = best;
  }
  if (plan.need_meteor) {
    double best = 0.0;
    for (const auto& ref : refs) {
      best = std::max(best, meteor(hyp, ref, options.meteor_params));
    }
    out.base["meteor"] = best;
  }
  if (plan.need_nist) {
    double best = 0.0;
    double best_normalized = 0.0;
    for (const auto& ref : refs) {
      best = std::max(best, nist(hyp, ref, *info, options.nist_order));
      best_normalized = std::max(
          best_normalized, normalized_nist(hyp, ref, *info, options.nist_order));
    }
    out.base["nist"] = best;
    // The [0,1] rescaling feeds the combined metric only.
    out.base["nist:normalized"] = best_normalized;
  }

  if (plan.need_answerability) {
    ClassifiedQuestion hyp_classified = classify_tokens(hyp_cased, lexicon);
    double best_ans = 0.0;
    double best_p = 0.0;
    double best_r = 0.0;
    for (size_t r = 0; r < refs_cased.size(); ++r) {
      ClassifiedQuestion ref_classified =
          classify_tokens(refs_cased[r], lexicon);
      AnswerabilityScore score = answerability(
          match_counts(hyp_classified, ref_classified), *options.weights);
      if (r == 0 || score.answerability > best_ans) {
        best_ans = score.answerability;
        best_p = score.p_avg;
        best_r = score.r_avg;
      }
    }
    out.answerability = best_ans;
    out.p_avg = best_p;
    out.r_avg = best_r;
  }
  return out;
}

ScoreResult assemble(const std::vector<PairRecord>& records,
                     std::vector<RecordScores> scored, const Plan& plan,
                     const ScoreOptions& options) {
  ScoreResult result;
  result.rows.resize(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    ScoreRow& row = result.rows[i];
    row.id = records[i].id;
    for (const auto& name : options.metrics) {
      double value;
      if (is_q_metric(name)) {
        std::string base = base_of(name);
        double base_score = scored[i].base.at(
            base == "nist" ? "nist:normalized" : base);
        value = q_metric(scored[i].answerability, base_score,
                         options.weights->delta);
      } else {
        value = scored[i].base.at(name);
      }
      row.values.emplace_back(name, value);
    }
    if (options.components && plan.need_answerability) {
      row.p_avg = scored[i].p_avg;
      row.r_avg = scored[i].r_avg;
    }
  }

  // Corpus roll-up, folded serially in input order.
  result.summary.records = records.size();
  for (const auto& name : options.metrics) {
    double value = 0.0;
    if (int order = bleu_order_of(name); order > 0) {
      std::vector<NgramStats> stats;
      stats.reserve(scored.size());
      for (const auto& s : scored) stats.push_back(s.stats);
      value = corpus_bleu(stats, order, options.bleu_smoothing);
    } else {
      std::vector<double> column;
      column.reserve(result.rows.size());
      for (const auto& row : result.rows) {
        for (const auto& [n, v] : row.values) {
          if (n == name) column.push_back(v);
        }
      }
      value = corpus_q_metric(column);
    }
    result.summary.values.emplace_back(name, value);
  }
  return result;
}

ScoreResult run_scoring(const std::vector<PairRecord>& records,
                        const ScoreOptions& options, bool parallel) {
  Plan plan = make_plan(options);
  if (records.empty()) {
    throw std::invalid_argument("score_corpus: no records");
  }

  std::optional<Lexicon> builtin_lexicon;
  if (options.lexicon == nullptr) builtin_lexicon = Lexicon::builtin();
  const Lexicon& lexicon =
      options.lexicon != nullptr ? *options.lexicon : *builtin_lexicon;

  // NIST frequencies come from the reference side of this corpus unless an
  // external model was supplied.
  std::optional<InfoModel> local_info;
  const InfoModel* info = options.info_model;
  if (plan.need_nist && info == nullptr) {
    std::vector<TokenList> ref_sentences;
    for (const auto& rec : records) {
      for (const auto& r : rec.references) {
        TokenList ref = tokenize(r, options.strip_punct);
        ref_sentences.push_back(options.lowercase ? lowercased(ref) : ref);
      }
    }
    local_info = InfoModel::from_sentences(ref_sentences, options.nist_order);
    info = &*local_info;
  }

  std::vector<RecordScores> scored(records.size());
  if (parallel) {
    int num_threads =
        options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(num_threads)
    for (int64_t i = 0; i < static_cast<int64_t>(records.size()); ++i) {
      scored[static_cast<size_t>(i)] = score_record(
          records[static_cast<size_t>(i)], plan, options, lexicon, info);
    }
  } else {
    for (size_t i = 0; i < records.size(); ++i) {
      scored[i] = score_record(records[i], plan, options, lexicon, info);
    }
  }
  return assemble(records, std::move(scored), plan, options);
}

}  // namespace

bool is_q_metric(const std::string& name) {
  return name.rfind("q-", 0) == 0;
}

bool is_known_metric(const std::string& name) {
  std::string base = base_of(name);
  return std::find(kBaseMetrics.begin(), kBaseMetrics.end(), base) !=
         kBaseMetrics.end();
}

const std::vector<std::string>& known_metrics() {
  static const std::vector<std::string> all = [] {
    std::vector<std::string> names = kBaseMetrics;
    for (const auto& base : kBaseMetrics) names.push_back("q-" + base);
    return names;
  }();
  return all;
}

double normalized_nist(const TokenList& hyp, const TokenList& ref,
                       const InfoModel& info, int order) {
  double self = nist(ref, ref, info, order);
  if (self <= 0.0) return 0.0;
  return std::min(1.0, nist(hyp, ref, info, order) / self);
}

ScoreResult score_corpus(const std::vector<PairRecord>& records,
                         const ScoreOptions& options) {
  return run_scoring(records, options, /*parallel=*/true);
}

ScoreResult score_corpus_serial(const std::vector<PairRecord>& records,
                                const ScoreOptions& options) {
  return run_scoring(records, options, /*parallel=*/false);
}

}  // namespace qmetric
