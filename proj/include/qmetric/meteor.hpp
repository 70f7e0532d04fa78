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

#ifndef QMETRIC_METEOR_HPP_
#define QMETRIC_METEOR_HPP_

#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qmetric/tokens.hpp"

namespace qmetric {

// Optional synonym resource for the third matcher stage. File format:
// tab-separated word pairs, one per line, '#' comments allowed. Relations
// are symmetric and matched on lowercase forms.
class SynonymTable {
 public:
  static SynonymTable from_file(const std::string& path);

  void add(std::string_view a, std::string_view b);
  bool related(std::string_view a, std::string_view b) const;
  size_t size() const { return pairs_.size(); }

 private:
  std::unordered_set<std::string> pairs_;
};

struct MeteorParams {
  double alpha = 0.9;      // precision/recall balance, in (0,1)
  double gamma = 0.5;      // fragmentation penalty weight, in [0,1]
  double beta_frag = 3.0;  // fragmentation exponent, > 0

  // Per-stage match weights. Exact matches count fully; stem (and synonym)
  // matches contribute a reduced weight to precision and recall.
  double exact_weight = 1.0;
  double stem_weight = 0.6;
  double synonym_weight = 0.6;

  // Synonym stage runs only when a table is supplied.
  const SynonymTable* synonyms = nullptr;
};

struct MeteorAlignment {
  // (hypothesis index, reference index), in hypothesis order.
  std::vector<std::pair<int, int>> pairs;
  // Matches per stage: [exact, stem, synonym].
  std::vector<int> stage_matches;
  int total_matches = 0;
  double weighted_matches = 0.0;
  int chunks = 0;
};

// Word alignment over the matcher stages (exact, then Porter stem, then
// synonyms when available). Among alignments that maximize the per-stage
// match counts in stage order, the one with the fewest chunks wins;
// remaining ties go to the lexicographically smallest pair list, which makes
// the result unique and deterministic.
MeteorAlignment meteor_align(const std::vector<std::string>& hyp,
                             const std::vector<std::string>& ref,
                             const MeteorParams& params = {});

// METEOR score: with m weighted matches, P = m/|hyp|, R = m/|ref|,
// F = PR / (alpha P + (1-alpha) R), reduced by the fragmentation penalty
// gamma * (chunks / matches)^beta_frag. Zero when nothing aligns.
double meteor(const TokenList& hyp, const TokenList& ref,
              const MeteorParams& params = {});

}  // namespace qmetric

#endif  // QMETRIC_METEOR_HPP_
