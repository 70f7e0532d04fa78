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

#include "qmetric/info_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qmetric {

namespace {

std::string join_ngram(std::span<const std::string> tokens) {
  std::string key;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) key += ' ';
    key += tokens[i];
  }
  return key;
}

// NIST brevity penalty exponent, chosen so the penalty is 1/2 when the
// hypothesis is 2/3 of the reference length.
const double kNistBeta = std::log(0.5) / (std::log(2.0 / 3.0) * std::log(2.0 / 3.0));

}  // namespace

InfoModel InfoModel::from_sentences(std::span<const TokenList> sentences,
                                    int order) {
  if (order < 1) throw std::invalid_argument("InfoModel: order must be >= 1");
  InfoModel model(order);
  for (const auto& sentence : sentences) {
    const auto& toks = sentence.tokens;
    model.total_unigrams_ += static_cast<int64_t>(toks.size());
    for (int n = 1; n <= order; ++n) {
      if (static_cast<int>(toks.size()) < n) break;
      for (size_t i = 0; i + static_cast<size_t>(n) <= toks.size(); ++i) {
        ++model.counts_[join_ngram({toks.data() + i, static_cast<size_t>(n)})];
      }
    }
  }
  return model;
}

InfoModel InfoModel::from_file(const std::string& path, int order,
                               bool strip_punct) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<TokenList> sentences;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    sentences.push_back(tokenize(line, strip_punct));
  }
  return from_sentences(sentences, order);
}

int64_t InfoModel::count(std::span<const std::string> ngram) const {
  auto it = counts_.find(join_ngram(ngram));
  return it == counts_.end() ? 0 : it->second;
}

double InfoModel::info(std::span<const std::string> ngram) const {
  if (ngram.empty()) return 0.0;
  int64_t full = count(ngram);
  if (full <= 0) return 0.0;
  if (ngram.size() == 1) {
    if (total_unigrams_ <= 0) return 0.0;
    return std::log2(static_cast<double>(total_unigrams_) /
                     static_cast<double>(full));
  }
  int64_t prefix = count(ngram.subspan(0, ngram.size() - 1));
  if (prefix <= 0) return 0.0;
  return std::log2(static_cast<double>(prefix) / static_cast<double>(full));
}

double nist(const TokenList& hyp, const TokenList& ref, const InfoModel& info,
            int order) {
  if (order < 1) throw std::invalid_argument("nist: order must be >= 1");
  if (hyp.empty() || ref.empty()) return 0.0;

  double score = 0.0;
  for (int n = 1; n <= order; ++n) {
    int64_t total_hyp = static_cast<int64_t>(hyp.size()) - n + 1;
    if (total_hyp <= 0) break;

    // Clipped matches: each reference occurrence is consumable once.
    std::unordered_map<std::string, int64_t> ref_counts;
    for (size_t i = 0; i + static_cast<size_t>(n) <= ref.size(); ++i) {
      std::string key = ref.tokens[i];
      for (size_t j = 1; j < static_cast<size_t>(n); ++j) {
        key += ' ';
        key += ref.tokens[i + j];
      }
      ++ref_counts[key];
    }

    double info_sum = 0.0;
    for (size_t i = 0; i + static_cast<size_t>(n) <= hyp.size(); ++i) {
      std::span<const std::string> ngram{hyp.tokens.data() + i,
                                         static_cast<size_t>(n)};
      auto it = ref_counts.find(join_ngram(ngram));
      if (it != ref_counts.end() && it->second > 0) {
        --it->second;
        info_sum += info.info(ngram);
      }
    }
    score += info_sum / static_cast<double>(total_hyp);
  }

  double ratio = static_cast<double>(hyp.size()) / static_cast<double>(ref.size());
  double log_ratio = std::log(std::min(ratio, 1.0));
  double brevity = std::exp(kNistBeta * log_ratio * log_ratio);
  return score * brevity;
}

}  // namespace qmetric
