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

// Command-line surface: score, perturb, tune, correlate, normalize.
// Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to
// stderr; results go to --out or stdout. Every run is a pure function of its
// inputs, flags and seed.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmetric/info_model.hpp"
#include "qmetric/io.hpp"
#include "qmetric/lexicon.hpp"
#include "qmetric/perturb.hpp"
#include "qmetric/rng.hpp"
#include "qmetric/rouge.hpp"
#include "qmetric/scoring.hpp"
#include "qmetric/stats.hpp"
#include "qmetric/tuner.hpp"
#include "qmetric/version.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace qmetric;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string hex_hash(uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

// Output sink: --out path or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct LexiconFlags {
  std::string function_words_path;
  std::string question_types_path;

  Lexicon make() const {
    if (function_words_path.empty() && question_types_path.empty()) {
      return Lexicon::builtin();
    }
    if (function_words_path.empty()) {
      return Lexicon::from_words(builtin_function_words(), {});
    }
    return Lexicon::load(function_words_path, question_types_path);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--lexicon", function_words_path,
                    "Function-word list file (one lowercase token per line); "
                    "defaults to the bundled inventory");
    cmd->add_option("--question-types", question_types_path,
                    "Question-type list file; defaults to the 7 wh-words, "
                    "whom, whose and how");
  }
};

// ---------------------------------------------------------------------------
// score

int cmd_score(const std::string& pairs_path, std::string metrics_csv,
              const std::string& weights_path, const std::string& out_path,
              const std::string& format, bool components, bool keep_punct,
              bool keep_case, const std::string& info_corpus_path,
              const std::string& synonyms_path, const LexiconFlags& lex_flags,
              double epsilon, int threads) {
  ScoreOptions options;
  std::stringstream csv(metrics_csv);
  std::string name;
  while (std::getline(csv, name, ',')) {
    if (!name.empty()) options.metrics.push_back(name);
  }
  if (options.metrics.empty()) {
    throw UsageError("--metrics needs at least one metric name");
  }
  for (const auto& m : options.metrics) {
    if (!is_known_metric(m)) {
      std::string known;
      for (const auto& k : known_metrics()) known += " " + k;
      throw UsageError("unknown metric \"" + m + "\"; known:" + known);
    }
  }
  bool any_q = std::any_of(options.metrics.begin(), options.metrics.end(),
                           [](const std::string& m) { return is_q_metric(m); });
  if (any_q && weights_path.empty()) {
    throw UsageError("q-* metrics need --weights");
  }
  if (!weights_path.empty()) options.weights = read_weights(weights_path);

  options.strip_punct = !keep_punct;
  options.lowercase = !keep_case;
  options.components = components;
  options.threads = threads;
  if (epsilon > 0.0) options.bleu_smoothing = Smoothing::add_epsilon(epsilon);

  Lexicon lexicon = lex_flags.make();
  options.lexicon = &lexicon;

  std::optional<InfoModel> info;
  if (!info_corpus_path.empty()) {
    info = InfoModel::from_file(info_corpus_path, options.nist_order,
                                options.strip_punct);
    options.info_model = &*info;
  }
  std::optional<SynonymTable> synonyms;
  if (!synonyms_path.empty()) {
    synonyms = SynonymTable::from_file(synonyms_path);
    options.meteor_params.synonyms = &*synonyms;
  }

  std::vector<PairRecord> records = read_pairs(pairs_path);
  ScoreResult result = score_corpus(records, options);

  Meta meta;
  meta.lexicon_hash = hex_hash(lexicon.content_hash());
  meta.flags["command"] = "score";
  meta.flags["metrics"] = metrics_csv;
  meta.flags["strip_punct"] = options.strip_punct ? "true" : "false";
  meta.flags["lowercase"] = options.lowercase ? "true" : "false";
  if (!weights_path.empty()) meta.flags["weights"] = weights_path;

  Output out(out_path);
  if (format == "tsv") {
    out.stream() << "# " << meta.to_json_line() << '\n';
    out.stream() << "id";
    for (const auto& m : options.metrics) out.stream() << '\t' << m;
    if (components) out.stream() << "\tp_avg\tr_avg";
    out.stream() << '\n';
    for (const auto& row : result.rows) {
      out.stream() << row.id;
      for (const auto& [n, v] : row.values) {
        out.stream() << '\t' << Json(v).dump();
      }
      if (components) {
        out.stream() << '\t' << Json(row.p_avg.value_or(0.0)).dump() << '\t'
                     << Json(row.r_avg.value_or(0.0)).dump();
      }
      out.stream() << '\n';
    }
    out.stream() << "# corpus";
    for (const auto& [n, v] : result.summary.values) {
      out.stream() << ' ' << n << '=' << Json(v).dump();
    }
    out.stream() << " records=" << result.summary.records << '\n';
  } else {
    out.stream() << meta.to_json_line() << '\n';
    for (const auto& row : result.rows) {
      Json obj;
      obj["id"] = row.id;
      for (const auto& [n, v] : row.values) obj[n] = v;
      if (components) {
        if (row.p_avg) obj["p_avg"] = *row.p_avg;
        if (row.r_avg) obj["r_avg"] = *row.r_avg;
      }
      out.stream() << obj.dump() << '\n';
    }
    Json summary;
    summary["records"] = result.summary.records;
    for (const auto& [n, v] : result.summary.values) summary[n] = v;
    Json wrapper;
    wrapper["_summary"] = summary;
    out.stream() << wrapper.dump() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// perturb

int cmd_perturb(const std::string& in_path, const std::string& noise_name,
                uint64_t seed, const std::string& mode_name, int max_drops,
                const std::string& out_path, bool keep_punct,
                const LexiconFlags& lex_flags) {
  NoiseKind kind = parse_noise_kind(noise_name);
  ContentDropMode mode;
  if (mode_name == "all") {
    mode = ContentDropMode::kAll;
  } else if (mode_name == "uniform-k") {
    mode = ContentDropMode::kUniformK;
  } else {
    throw UsageError("--mode must be all or uniform-k");
  }

  Lexicon lexicon = lex_flags.make();
  std::vector<QuestionRecord> questions = read_questions(in_path);

  Meta meta;
  meta.seed = seed;
  meta.lexicon_hash = hex_hash(lexicon.content_hash());
  meta.flags["command"] = "perturb";
  meta.flags["noise"] = noise_name;
  meta.flags["mode"] = mode_name;

  Output out(out_path);
  out.stream() << meta.to_json_line() << '\n';

  size_t unchanged = 0;
  for (const auto& record : questions) {
    ClassifiedQuestion q =
        classify_text(record.question, lexicon, !keep_punct);
    // Record-keyed sub-seed: output is independent of record order and of
    // any parallel splitting of the corpus.
    SplitMix64 rng(derive_subseed(seed, record.id));
    PerturbResult result = apply_noise(kind, q, lexicon, rng, mode, max_drops);
    if (!result.changed) ++unchanged;

    Json obj;
    obj["id"] = record.id;
    obj["hypothesis"] = result.tokens.joined();
    obj["references"] = Json::array({record.question});
    obj["changed"] = result.changed;
    out.stream() << obj.dump() << '\n';
  }
  std::cerr << "perturb: " << questions.size() << " questions, " << unchanged
            << " unchanged (no " << noise_name << " tokens)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// normalize

int cmd_normalize(const std::string& judgments_path, const std::string& format,
                  const std::string& out_path) {
  if (format != "jsonl") {
    // Import adapters for externally published judgment dumps hang off this
    // flag once their schemas are pinned down.
    throw UsageError("unsupported judgment format \"" + format +
                     "\" (supported: jsonl)");
  }
  auto records = normalize_scores(read_judgments(judgments_path));
  Meta meta;
  meta.flags["command"] = "normalize";
  Output out(out_path);
  write_judgments(out.stream(), records, meta);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tune

int cmd_tune(const std::string& judgments_path, const std::string& metric,
             size_t pool, size_t bag, size_t bags, double grid, uint64_t seed,
             int threads, const std::string& out_path, bool keep_punct,
             bool keep_case, const LexiconFlags& lex_flags) {
  if (is_q_metric(metric) || !is_known_metric(metric)) {
    throw UsageError("--metric must be a base metric (bleu1..bleu4, rouge-l, "
                     "meteor, nist)");
  }
  Lexicon lexicon = lex_flags.make();
  auto records = read_judgments(judgments_path);
  for (const auto& rec : records) {
    if (!rec.gold.has_value()) {
      throw std::runtime_error(
          "judgment record '" + rec.id +
          "' has no gold score; run `qmetric normalize` first");
    }
  }

  // Base metric scores and class match counts, aligned with the records.
  bool strip = !keep_punct;
  bool lower = !keep_case;
  std::optional<InfoModel> info;
  if (metric == "nist") {
    std::vector<TokenList> refs;
    for (const auto& rec : records) {
      TokenList toks = tokenize(rec.reference, strip);
      refs.push_back(lower ? lowercased(toks) : toks);
    }
    info = InfoModel::from_sentences(refs, 5);
  }

  TuneInputs inputs;
  for (const auto& rec : records) {
    TokenList hyp_cased = tokenize(rec.noisy, strip);
    TokenList ref_cased = tokenize(rec.reference, strip);
    TokenList hyp = lower ? lowercased(hyp_cased) : hyp_cased;
    TokenList ref = lower ? lowercased(ref_cased) : ref_cased;

    double base = 0.0;
    std::vector<TokenList> refs = {ref};
    if (metric == "rouge-l") {
      base = rouge_l(hyp, ref);
    } else if (metric == "meteor") {
      base = meteor(hyp, ref);
    } else if (metric == "nist") {
      // The combined metric needs a [0,1] base; NIST is rescaled by the
      // reference self-score.
      base = normalized_nist(hyp, ref, *info, 5);
    } else {
      base = sentence_bleu(hyp, refs, metric[4] - '0');
    }
    inputs.base_scores.push_back(base);
    inputs.gold.push_back(*rec.gold);
    inputs.counts.push_back(match_counts(classify_tokens(hyp_cased, lexicon),
                                         classify_tokens(ref_cased, lexicon)));
  }

  TuneConfig config;
  config.pool_size = pool;
  config.bag_size = bag;
  config.bags = bags;
  config.grid_step = grid;
  config.seed = seed;
  config.threads = threads;

  TuneResult result = tune_weights(inputs, config, metric);

  for (size_t b = 0; b < result.per_bag.size(); ++b) {
    std::cerr << "bag " << b << ": corr=" << result.per_bag[b].correlation
              << " delta=" << result.per_bag[b].delta << '\n';
  }

  Meta meta;
  meta.seed = seed;
  meta.lexicon_hash = hex_hash(lexicon.content_hash());
  meta.flags["command"] = "tune";
  meta.flags["metric"] = metric;
  meta.flags["pool"] = std::to_string(pool);
  meta.flags["bag"] = std::to_string(bag);
  meta.flags["bags"] = std::to_string(bags);
  meta.flags["grid"] = std::to_string(grid);

  Output out(out_path);
  write_weights(out.stream(), result.config, meta, &result.weight_stddev,
                &result.delta_stddev);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// correlate

std::vector<std::pair<std::string, double>> read_score_column(
    const std::string& path, const std::string& metric) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scores file: " + path);
  std::vector<std::pair<std::string, double>> column;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(path, line_number,
                       std::string("malformed JSON: ") + e.what());
    }
    if (obj.contains("_meta") || obj.contains("_summary")) continue;
    if (!obj.contains("id")) throw ParseError(path, line_number, "missing id");
    if (!obj.contains(metric)) {
      throw ParseError(path, line_number,
                       "score row lacks metric \"" + metric + "\"");
    }
    column.emplace_back(obj["id"].get<std::string>(),
                        obj[metric].get<double>());
  }
  return column;
}

int cmd_correlate(const std::string& scores_path, const std::string& metric,
                  const std::string& judgments_path, uint64_t seed,
                  int permutations, const std::string& out_path) {
  auto column = read_score_column(scores_path, metric);
  auto judgments = read_judgments(judgments_path);

  std::map<std::string, double> gold_by_id;
  for (const auto& rec : judgments) {
    if (!rec.gold.has_value()) {
      throw std::runtime_error(
          "judgment record '" + rec.id +
          "' has no gold score; run `qmetric normalize` first");
    }
    gold_by_id[rec.id] = *rec.gold;
  }

  std::vector<double> xs, ys;
  for (const auto& [id, score] : column) {
    auto it = gold_by_id.find(id);
    if (it == gold_by_id.end()) {
      throw std::runtime_error("id \"" + id + "\" has scores but no judgment");
    }
    xs.push_back(score);
    ys.push_back(it->second);
  }
  if (xs.size() != gold_by_id.size()) {
    throw std::runtime_error("judgment file has ids missing from the scores");
  }

  CorrelationReport report = correlation_report(xs, ys, seed, permutations);

  Meta meta;
  meta.seed = seed;
  meta.flags["command"] = "correlate";
  meta.flags["metric"] = metric;

  Json obj;
  obj["metric"] = metric;
  obj["n"] = report.n;
  obj["pearson"] = report.pearson;
  obj["spearman"] = report.spearman;
  obj["p_value"] = report.p_value;
  obj["significant"] = report.significant;
  obj["_meta"] = Json::parse(meta.to_json_line())["_meta"];

  Output out(out_path);
  out.stream() << obj.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Answerability-aware evaluation metrics for automatically "
               "generated questions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("qmetric ") + kVersion);

  // score
  auto* score = app.add_subcommand(
      "score", "Score hypothesis questions against references");
  std::string pairs_path, metrics_csv = "bleu4", weights_path, out_path;
  std::string format = "jsonl", info_corpus_path, synonyms_path;
  bool components = false, keep_punct = false, keep_case = false;
  double epsilon = 0.0;
  int threads = 0;
  LexiconFlags score_lexicon;
  score->add_option("--pairs", pairs_path,
                    "JSONL file of {id, hypothesis, references}")
      ->required();
  score->add_option("--metrics", metrics_csv,
                    "Comma-separated metric list (bleu1..4, rouge-l, meteor, "
                    "nist and q- prefixed variants)");
  score->add_option("--weights", weights_path,
                    "Weight configuration JSON (required for q-* metrics)");
  score->add_option("--out", out_path, "Output path (default stdout)");
  score->add_option("--format", format, "Output format: jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  score->add_flag("--components", components,
                  "Emit answerability components p_avg and r_avg");
  score->add_flag("--keep-punct", keep_punct,
                  "Keep punctuation tokens instead of stripping");
  score->add_flag("--keep-case", keep_case,
                  "Match tokens case-sensitively in the base metrics");
  score->add_option("--info-corpus", info_corpus_path,
                    "Plain-text corpus for NIST n-gram frequencies (default: "
                    "the reference side of the scored file)");
  score->add_option("--synonyms", synonyms_path,
                    "Tab-separated synonym pairs enabling the third matcher "
                    "stage of the alignment metric");
  score->add_option("--epsilon", epsilon,
                    "Add-epsilon smoothing for zero n-gram precisions "
                    "(default: no smoothing)");
  score->add_option("--threads", threads, "Worker threads (0 = default)");
  score_lexicon.attach(score);

  // perturb
  auto* perturb = app.add_subcommand(
      "perturb", "Apply systematic noise to clean questions");
  std::string perturb_in, noise_name, perturb_out, mode_name = "uniform-k";
  uint64_t perturb_seed = 0;
  int max_drops = 3;
  bool perturb_keep_punct = false;
  LexiconFlags perturb_lexicon;
  perturb->add_option("--in", perturb_in, "JSONL file of {id, question}")
      ->required();
  perturb
      ->add_option("--noise", noise_name,
                   "function-words | named-entities | content-words | "
                   "question-type")
      ->required();
  perturb->add_option("--seed", perturb_seed, "Master seed")->required();
  perturb->add_option("--mode", mode_name,
                      "Content-word drop mode: all or uniform-k");
  perturb->add_option("--max-entity-drops", max_drops,
                      "Cap on entities dropped per question");
  perturb->add_option("--out", perturb_out, "Output path (default stdout)");
  perturb->add_flag("--keep-punct", perturb_keep_punct,
                    "Keep punctuation tokens instead of stripping");
  perturb_lexicon.attach(perturb);

  // normalize
  auto* normalize = app.add_subcommand(
      "normalize", "Fill gold scores from per-annotator ratings");
  std::string norm_in, norm_out, norm_format = "jsonl";
  normalize->add_option("--judgments", norm_in, "Judgment JSONL file")
      ->required();
  normalize->add_option("--format", norm_format,
                        "Input format (only jsonl is implemented)");
  normalize->add_option("--out", norm_out, "Output path (default stdout)");

  // tune
  auto* tune = app.add_subcommand(
      "tune", "Fit class weights and delta to human judgments");
  std::string tune_in, tune_metric = "bleu1", tune_out;
  size_t pool = 300, bag = 200, bags = 20;
  double grid = 0.05;
  uint64_t tune_seed = 0;
  int tune_threads = 0;
  bool tune_keep_punct = false, tune_keep_case = false;
  LexiconFlags tune_lexicon;
  tune->add_option("--judgments", tune_in,
                   "Normalized judgment JSONL file (gold required)")
      ->required();
  tune->add_option("--metric", tune_metric, "Base metric to combine with");
  tune->add_option("--pool", pool, "Tuning pool size");
  tune->add_option("--bag", bag, "Records drawn per bag");
  tune->add_option("--bags", bags, "Number of bags");
  tune->add_option("--grid", grid, "Grid step over weights and delta");
  tune->add_option("--seed", tune_seed, "Bag-sampling seed");
  tune->add_option("--threads", tune_threads, "Worker threads (0 = default)");
  tune->add_option("--out", tune_out, "Weight file path (default stdout)");
  tune->add_flag("--keep-punct", tune_keep_punct, "Keep punctuation tokens");
  tune->add_flag("--keep-case", tune_keep_case,
                 "Match tokens case-sensitively in the base metric");
  tune_lexicon.attach(tune);

  // correlate
  auto* correlate = app.add_subcommand(
      "correlate", "Correlate a score column with gold judgments");
  std::string corr_scores, corr_metric, corr_judgments, corr_out;
  uint64_t corr_seed = 0;
  int permutations = 10000;
  correlate->add_option("--scores", corr_scores, "Score JSONL from `score`")
      ->required();
  correlate->add_option("--metric", corr_metric, "Score column to correlate")
      ->required();
  correlate
      ->add_option("--judgments", corr_judgments,
                   "Normalized judgment JSONL file (gold required)")
      ->required();
  correlate->add_option("--seed", corr_seed, "Permutation-test seed");
  correlate->add_option("--permutations", permutations,
                        "Permutation count for the significance test");
  correlate->add_option("--out", corr_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's fine-grained parse codes onto the documented usage
    // exit code; --help and --version stay successful.
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (score->parsed()) {
      return cmd_score(pairs_path, metrics_csv, weights_path, out_path, format,
                       components, keep_punct, keep_case, info_corpus_path,
                       synonyms_path, score_lexicon, epsilon, threads);
    }
    if (perturb->parsed()) {
      return cmd_perturb(perturb_in, noise_name, perturb_seed, mode_name,
                         max_drops, perturb_out, perturb_keep_punct,
                         perturb_lexicon);
    }
    if (normalize->parsed()) {
      return cmd_normalize(norm_in, norm_format, norm_out);
    }
    if (tune->parsed()) {
      return cmd_tune(tune_in, tune_metric, pool, bag, bags, grid, tune_seed,
                      tune_threads, tune_out, tune_keep_punct, tune_keep_case,
                      tune_lexicon);
    }
    if (correlate->parsed()) {
      return cmd_correlate(corr_scores, corr_metric, corr_judgments, corr_seed,
                           permutations, corr_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
