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

// End-to-end checks that drive the installed binary through temp files:
// perturb -> score -> normalize -> tune -> correlate.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qmetric/rng.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const char* kCli = QMETRIC_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qmetric_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(const std::string& args) {
  std::string cmd = std::string(kCli) + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

// Data lines (no _meta/_summary) of a JSONL file.
std::vector<Json> data_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<Json> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json obj = Json::parse(line);
    if (obj.contains("_meta") || obj.contains("_summary")) continue;
    rows.push_back(obj);
  }
  return rows;
}

}  // namespace

TEST_CASE("score command reproduces the worked example end to end") {
  TempDir dir;
  write_file(dir.file("pairs.jsonl"),
             R"({"id":"s2","hypothesis":"Who was the director of ?","references":["Who was the director of Titanic ?"]})"
             "\n"
             R"({"id":"s1","hypothesis":"director of Titanic ?","references":["Who was the director of Titanic ?"]})"
             "\n");
  REQUIRE(run("score --pairs " + dir.file("pairs.jsonl") +
              " --metrics bleu3,rouge-l --out " + dir.file("scores.jsonl")) ==
          0);
  auto rows = data_lines(dir.file("scores.jsonl"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["id"] == "s2");
  CHECK(rows[0]["bleu3"].get<double>() == doctest::Approx(0.819).epsilon(1e-3));
  CHECK(rows[1]["bleu3"].get<double>() == doctest::Approx(0.368).epsilon(1e-3));

  // Repeated invocation is byte-identical.
  REQUIRE(run("score --pairs " + dir.file("pairs.jsonl") +
              " --metrics bleu3,rouge-l --out " + dir.file("scores2.jsonl")) ==
          0);
  CHECK(slurp(dir.file("scores.jsonl")) == slurp(dir.file("scores2.jsonl")));

  // TSV emission.
  REQUIRE(run("score --pairs " + dir.file("pairs.jsonl") +
              " --metrics bleu3 --format tsv --out " + dir.file("scores.tsv")) ==
          0);
  std::string tsv = slurp(dir.file("scores.tsv"));
  CHECK(tsv.find("id\tbleu3") != std::string::npos);
  CHECK(tsv.find("# corpus") != std::string::npos);
}

TEST_CASE("usage and data error exit codes") {
  TempDir dir;
  write_file(dir.file("pairs.jsonl"),
             R"({"id":"a","hypothesis":"x","references":["y"]})" "\n");
  // Unknown metric: usage error.
  CHECK(run("score --pairs " + dir.file("pairs.jsonl") +
            " --metrics nosuchmetric") == 1);
  // q metric without weights: usage error.
  CHECK(run("score --pairs " + dir.file("pairs.jsonl") +
            " --metrics q-bleu1") == 1);
  // Missing required flag: usage error from the parser.
  CHECK(run("score") == 1);
  // Malformed data: data error.
  write_file(dir.file("bad.jsonl"), "{broken\n");
  CHECK(run("score --pairs " + dir.file("bad.jsonl") + " --metrics bleu1") ==
        2);
  // Unsupported judgment format: usage error.
  write_file(dir.file("j.jsonl"),
             R"({"id":"a","noisy":"x","reference":"y","ratings":[{"annotator":"a1","score":3}]})"
             "\n");
  CHECK(run("normalize --judgments " + dir.file("j.jsonl") +
            " --format csv") == 1);
}

TEST_CASE("perturb emits scoreable pairs deterministically") {
  TempDir dir;
  std::ostringstream questions;
  qmetric::SplitMix64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    Json obj;
    obj["id"] = "q" + std::to_string(i);
    obj["question"] = testutil::random_question(rng);
    questions << obj.dump() << '\n';
  }
  write_file(dir.file("questions.jsonl"), questions.str());

  for (const std::string noise :
       {"function-words", "named-entities", "content-words",
        "question-type"}) {
    std::string out_a = dir.file("noisy_a_" + noise + ".jsonl");
    std::string out_b = dir.file("noisy_b_" + noise + ".jsonl");
    REQUIRE(run("perturb --in " + dir.file("questions.jsonl") + " --noise " +
                noise + " --seed 99 --out " + out_a) == 0);
    REQUIRE(run("perturb --in " + dir.file("questions.jsonl") + " --noise " +
                noise + " --seed 99 --out " + out_b) == 0);
    CHECK(slurp(out_a) == slurp(out_b));

    auto rows = data_lines(out_a);
    REQUIRE(rows.size() == 50);
    for (const auto& row : rows) {
      CHECK(row.contains("changed"));
      CHECK(row["references"].size() == 1);
    }

    // The perturbed file feeds straight into score.
    REQUIRE(run("score --pairs " + out_a + " --metrics bleu1 --out " +
                dir.file("noisy_scores.jsonl")) == 0);
  }

  // A different seed changes at least one randomized output.
  std::string seeded = dir.file("noisy_seed7.jsonl");
  REQUIRE(run("perturb --in " + dir.file("questions.jsonl") +
              " --noise named-entities --seed 7 --out " + seeded) == 0);
  CHECK(slurp(seeded) !=
        slurp(dir.file("noisy_a_named-entities.jsonl")));
}

TEST_CASE("normalize, tune and correlate round-trip") {
  TempDir dir;

  // Synthetic judged corpus: two annotators whose ratings track answerability
  // of the degraded question.
  qmetric::SplitMix64 rng(515);
  auto planted = testutil::make_planted_pool(
      60, 515, {0.2, 0.3, 0.4, 0.1}, 0.7);
  std::ostringstream judgments;
  for (size_t i = 0; i < planted.inputs.size(); ++i) {
    double g = planted.inputs.gold[i];
    int score = 1 + static_cast<int>(g * 3.999);
    Json obj;
    obj["id"] = "j" + std::to_string(i);
    obj["noisy"] = planted.noisy[i];
    obj["reference"] = planted.reference[i];
    obj["ratings"] = Json::array({
        Json{{"annotator", "a1"}, {"score", score}},
        Json{{"annotator", "a2"},
             {"score", std::min(5, score + static_cast<int>(rng.below(2)))}},
    });
    judgments << obj.dump() << '\n';
  }
  write_file(dir.file("raw.jsonl"), judgments.str());

  // tune without gold fails with a data error.
  CHECK(run("tune --judgments " + dir.file("raw.jsonl") +
            " --pool 40 --bag 30 --bags 2 --grid 0.25 --seed 5") == 2);

  REQUIRE(run("normalize --judgments " + dir.file("raw.jsonl") + " --out " +
              dir.file("gold.jsonl")) == 0);
  auto normalized = data_lines(dir.file("gold.jsonl"));
  REQUIRE(normalized.size() == 60);
  for (const auto& row : normalized) {
    double g = row["gold"].get<double>();
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }

  REQUIRE(run("tune --judgments " + dir.file("gold.jsonl") +
              " --metric bleu1 --pool 40 --bag 30 --bags 2 --grid 0.25 "
              "--seed 5 --out " + dir.file("weights.json")) == 0);
  Json weights = Json::parse(slurp(dir.file("weights.json")));
  double total = 0.0;
  for (const auto& [key, value] : weights["weights"].items()) {
    total += value.get<double>();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(weights["base_metric"] == "bleu1");

  // Tuned weights feed q-scoring of the noisy/reference pairs.
  std::ostringstream pairs;
  for (size_t i = 0; i < planted.inputs.size(); ++i) {
    Json obj;
    obj["id"] = "j" + std::to_string(i);
    obj["hypothesis"] = planted.noisy[i];
    obj["references"] = Json::array({planted.reference[i]});
    pairs << obj.dump() << '\n';
  }
  write_file(dir.file("pairs.jsonl"), pairs.str());
  REQUIRE(run("score --pairs " + dir.file("pairs.jsonl") +
              " --metrics bleu1,q-bleu1 --weights " + dir.file("weights.json") +
              " --components --out " + dir.file("scores.jsonl")) == 0);

  REQUIRE(run("correlate --scores " + dir.file("scores.jsonl") +
              " --metric q-bleu1 --judgments " + dir.file("gold.jsonl") +
              " --seed 11 --permutations 2000 --out " +
              dir.file("report.json")) == 0);
  Json report = Json::parse(slurp(dir.file("report.json")));
  CHECK(report["n"] == 60);
  CHECK(report["pearson"].get<double>() > 0.5);
  CHECK(report["significant"].get<bool>());

  // Self-correlation of the gold column is exactly 1: score ids and
  // judgment ids align one to one.
  REQUIRE(run("correlate --scores " + dir.file("scores.jsonl") +
              " --metric bleu1 --judgments " + dir.file("gold.jsonl") +
              " --seed 11 --out " + dir.file("report2.json")) == 0);
  Json report2 = Json::parse(slurp(dir.file("report2.json")));
  CHECK(report2["n"] == 60);

  // Mismatched ids are a data error.
  write_file(dir.file("extra.jsonl"),
             slurp(dir.file("gold.jsonl")) +
                 R"({"id":"zzz","noisy":"x","reference":"y","ratings":[{"annotator":"a1","score":3}],"gold":0.5})"
                 "\n");
  CHECK(run("correlate --scores " + dir.file("scores.jsonl") +
            " --metric bleu1 --judgments " + dir.file("extra.jsonl") +
            " --seed 11") == 2);
}

TEST_CASE("score output is identical across thread counts") {
  TempDir dir;
  qmetric::SplitMix64 rng(77);
  std::ostringstream pairs;
  for (int i = 0; i < 1000; ++i) {
    std::string ref = testutil::random_question(rng);
    Json obj;
    obj["id"] = "p" + std::to_string(i);
    obj["hypothesis"] = testutil::degrade_question(rng, ref);
    obj["references"] = Json::array({ref});
    pairs << obj.dump() << '\n';
  }
  write_file(dir.file("pairs.jsonl"), pairs.str());

  std::string flags = " --metrics bleu4,meteor,nist --pairs " +
                      dir.file("pairs.jsonl");
  REQUIRE(run("score" + flags + " --threads 1 --out " + dir.file("t1.jsonl")) ==
          0);
  REQUIRE(run("score" + flags + " --threads 8 --out " + dir.file("t8.jsonl")) ==
          0);
  CHECK(slurp(dir.file("t1.jsonl")) == slurp(dir.file("t8.jsonl")));
}
