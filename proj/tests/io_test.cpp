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

#include "qmetric/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace qmetric;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content,
                    bool binary = false)
      : path(name) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("read_pairs accepts valid lines in order") {
  TempFile file("io_pairs_tmp.jsonl",
                R"({"id":"a","hypothesis":"who directed","references":["who directed titanic"]})"
                "\n\n"
                R"({"id":"b","hypothesis":"what year","references":["what year was it","which year"]})"
                "\n");
  auto records = read_pairs(file.path);
  REQUIRE(records.size() == 2);
  CHECK(records[0].id == "a");
  CHECK(records[0].references.size() == 1);
  CHECK(records[1].references.size() == 2);
}

TEST_CASE("read_pairs reports the offending line") {
  TempFile missing("io_pairs_missing_tmp.jsonl",
                   R"({"id":"a","hypothesis":"x","references":["y"]})"
                   "\n"
                   R"({"id":"b","hypothesis":"x"})"
                   "\n");
  try {
    read_pairs(missing.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("references") != std::string::npos);
  }

  TempFile malformed("io_pairs_bad_tmp.jsonl", "{not json}\n");
  CHECK_THROWS_AS(read_pairs(malformed.path), ParseError);

  TempFile dup("io_pairs_dup_tmp.jsonl",
               R"({"id":"a","hypothesis":"x","references":["y"]})"
               "\n"
               R"({"id":"a","hypothesis":"z","references":["w"]})"
               "\n");
  CHECK_THROWS_AS(read_pairs(dup.path), ParseError);

  CHECK_THROWS_AS(read_pairs("does_not_exist.jsonl"), ParseError);
}

TEST_CASE("CRLF and LF files parse identically") {
  std::string lf =
      R"({"id":"a","hypothesis":"who directed","references":["who directed titanic"]})"
      "\n";
  std::string crlf =
      R"({"id":"a","hypothesis":"who directed","references":["who directed titanic"]})"
      "\r\n";
  TempFile f_lf("io_lf_tmp.jsonl", lf, true);
  TempFile f_crlf("io_crlf_tmp.jsonl", crlf, true);
  CHECK(read_pairs(f_lf.path) == read_pairs(f_crlf.path));
}

TEST_CASE("pairs round-trip through write and read") {
  std::vector<PairRecord> records = {
      {"q1", "who was the director of", {"who was the director of titanic"}},
      {"q2", "strange \"quotes\", commas", {"ref with\ttab", "secondary"}},
  };
  Meta meta;
  meta.seed = 42;
  meta.lexicon_hash = "deadbeef";
  meta.flags["metrics"] = "bleu4";

  std::ostringstream out;
  write_pairs(out, records, meta);

  TempFile file("io_roundtrip_tmp.jsonl", out.str());
  auto reread = read_pairs(file.path);
  CHECK(reread == records);

  // The metadata line is first and carries the seed and lexicon hash.
  std::istringstream lines(out.str());
  std::string first;
  std::getline(lines, first);
  CHECK(first.find("\"_meta\"") != std::string::npos);
  CHECK(first.find("\"seed\":42") != std::string::npos);
  CHECK(first.find("deadbeef") != std::string::npos);

  // Byte-identical on rewrite.
  std::ostringstream again;
  write_pairs(again, reread, meta);
  CHECK(again.str() == out.str());
}

TEST_CASE("judgments round-trip with ratings and gold") {
  TempFile file(
      "io_judgments_tmp.jsonl",
      R"({"id":"j1","noisy":"who directed","reference":"who directed titanic","ratings":[{"annotator":"a1","score":4},{"annotator":"a2","score":5}]})"
      "\n"
      R"({"id":"j2","noisy":"what","reference":"what was it","ratings":[{"annotator":"a1","score":1}],"gold":0.25})"
      "\n");
  auto records = read_judgments(file.path);
  REQUIRE(records.size() == 2);
  CHECK(records[0].ratings.size() == 2);
  CHECK(!records[0].gold.has_value());
  CHECK(records[1].gold == doctest::Approx(0.25));

  std::ostringstream out;
  write_judgments(out, records, Meta{});
  TempFile rewritten("io_judgments_rt_tmp.jsonl", out.str());
  auto reread = read_judgments(rewritten.path);
  CHECK(reread.size() == 2);
  CHECK(reread[0].ratings[1].annotator == "a2");
  CHECK(reread[1].gold == doctest::Approx(0.25));
}

TEST_CASE("judgment schema violations carry line numbers") {
  TempFile bad_score(
      "io_judgments_bad_tmp.jsonl",
      R"({"id":"j1","noisy":"x","reference":"y","ratings":[{"annotator":"a","score":9}]})"
      "\n");
  try {
    read_judgments(bad_score.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("weight files round-trip and validate") {
  WeightConfig config;
  config.weights[static_cast<size_t>(TokenClass::kNamedEntity)] = 0.41;
  config.weights[static_cast<size_t>(TokenClass::kContentWord)] = 0.36;
  config.weights[static_cast<size_t>(TokenClass::kFunctionWord)] = 0.03;
  config.weights[static_cast<size_t>(TokenClass::kQuestionType)] = 0.20;
  config.delta = 0.66;
  config.base_metric = "bleu1";

  std::ostringstream out;
  write_weights(out, config, Meta{});
  TempFile file("io_weights_tmp.json", out.str());
  WeightConfig reread = read_weights(file.path);
  CHECK(reread.weights == config.weights);
  CHECK(reread.delta == config.delta);
  CHECK(reread.base_metric == "bleu1");

  TempFile invalid("io_weights_bad_tmp.json",
                   R"({"weights":{"named_entity":0.9,"content":0.9,)"
                   R"("question_type":0.1,"function":0.1},"delta":0.5})");
  CHECK_THROWS_AS(read_weights(invalid.path), ParseError);
}

TEST_CASE("questions reader enforces its schema") {
  TempFile file("io_questions_tmp.jsonl",
                R"({"id":"x","question":"Who killed Jane ?"})"
                "\n");
  auto records = read_questions(file.path);
  REQUIRE(records.size() == 1);
  CHECK(records[0].question == "Who killed Jane ?");

  TempFile bad("io_questions_bad_tmp.jsonl", R"({"id":"x"})" "\n");
  CHECK_THROWS_AS(read_questions(bad.path), ParseError);
}

TEST_CASE("meta lines are skipped wherever they appear") {
  TempFile file("io_meta_skip_tmp.jsonl",
                R"({"_meta":{"tool":"qmetric"}})"
                "\n"
                R"({"id":"a","hypothesis":"x","references":["y"]})"
                "\n"
                R"({"_meta":{"tool":"qmetric"}})"
                "\n");
  auto records = read_pairs(file.path);
  CHECK(records.size() == 1);
}
