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

#ifndef QMETRIC_IO_HPP_
#define QMETRIC_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmetric/answerability.hpp"
#include "qmetric/stats.hpp"

namespace qmetric {

// A data or schema problem in an input file; `line` is 1-based, 0 when the
// error is not tied to one line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, size_t line, const std::string& what)
      : std::runtime_error(path + (line > 0 ? ":" + std::to_string(line) : "") +
                           ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// One scoreable unit: a hypothesis question and its reference question(s).
// JSONL schema: {"id", "hypothesis", "references"}.
struct PairRecord {
  std::string id;
  std::string hypothesis;
  std::vector<std::string> references;

  bool operator==(const PairRecord&) const = default;
};

// Input to the perturbation command. JSONL schema: {"id", "question"}.
struct QuestionRecord {
  std::string id;
  std::string question;
};

// Every output file starts with one {"_meta": ...} line recording the tool
// version, seed, lexicon hash and flags, so results are reproducible from
// the file alone. Readers skip these lines wherever they appear. No
// timestamps: repeated runs must be byte-identical.
struct Meta {
  uint64_t seed = 0;
  std::string lexicon_hash;
  std::map<std::string, std::string> flags;

  std::string to_json_line() const;
};

std::vector<PairRecord> read_pairs(const std::string& path);
void write_pairs(std::ostream& out, const std::vector<PairRecord>& records,
                 const Meta& meta);

std::vector<QuestionRecord> read_questions(const std::string& path);

// Judgment rows: {"id", "noisy", "reference",
//                 "ratings": [{"annotator", "score"}, ...], "gold"?}.
// On the 1-5 rating scale, 1 means all important information is missing and
// the question is unanswerable; 5 means everything needed to answer is
// present. `gold` appears after normalization.
std::vector<JudgmentRecord> read_judgments(const std::string& path);
void write_judgments(std::ostream& out,
                     const std::vector<JudgmentRecord>& records,
                     const Meta& meta);

// Weight files: {"weights": {"named_entity", "content", "question_type",
// "function"}, "delta", "base_metric"}, plus optional diagnostics that
// readers ignore.
WeightConfig read_weights(const std::string& path);
void write_weights(std::ostream& out, const WeightConfig& config,
                   const Meta& meta,
                   const std::array<double, kNumTokenClasses>* weight_stddev =
                       nullptr,
                   const double* delta_stddev = nullptr);

}  // namespace qmetric

#endif  // QMETRIC_IO_HPP_
