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

#ifndef QMETRIC_INFO_MODEL_HPP_
#define QMETRIC_INFO_MODEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qmetric/tokens.hpp"

namespace qmetric {

// Corpus n-gram frequencies backing the NIST information weights. Immutable
// after construction; safe for parallel per-sentence scoring.
class InfoModel {
 public:
  static InfoModel from_sentences(std::span<const TokenList> sentences,
                                  int order);
  // Plain-text corpus, one sentence per line, tokenized with the default
  // tokenizer.
  static InfoModel from_file(const std::string& path, int order,
                             bool strip_punct = true);

  // Info weight of an n-gram: log2 of the count ratio between its (n-1)-gram
  // prefix and itself; for unigrams, log2(total_unigrams / count). N-grams
  // absent from the corpus contribute 0.
  double info(std::span<const std::string> ngram) const;

  int64_t count(std::span<const std::string> ngram) const;
  int64_t total_unigrams() const { return total_unigrams_; }
  int order() const { return order_; }

 private:
  InfoModel(int order) : order_(order) {}

  int order_;
  int64_t total_unigrams_ = 0;
  std::unordered_map<std::string, int64_t> counts_;
};

// NIST score of a hypothesis against a single reference: per order, the sum
// of info weights of clipped matching n-grams over the hypothesis n-gram
// count, summed across orders 1..order and scaled by the NIST brevity
// penalty (0.5 at a 2/3 length ratio). Nonnegative and unbounded above.
double nist(const TokenList& hyp, const TokenList& ref, const InfoModel& info,
            int order);

}  // namespace qmetric

#endif  // QMETRIC_INFO_MODEL_HPP_
