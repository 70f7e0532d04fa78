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

#include "qmetric/rouge.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qmetric {

size_t lcs_length(const TokenList& a, const TokenList& b) {
  const size_t n = a.size();
  const size_t m = b.size();
  if (n == 0 || m == 0) return 0;

  // Two rolling rows keep memory at O(|b|).
  std::vector<size_t> prev(m + 1, 0);
  std::vector<size_t> curr(m + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      if (a.tokens[i - 1] == b.tokens[j - 1]) {
        curr[j] = prev[j - 1] + 1;
      } else {
        curr[j] = std::max(prev[j], curr[j - 1]);
      }
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

double rouge_l(const TokenList& hyp, const TokenList& ref, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("rouge_l: beta must be > 0");
  if (hyp.empty() || ref.empty()) return 0.0;

  const double lcs = static_cast<double>(lcs_length(hyp, ref));
  if (lcs == 0.0) return 0.0;

  const double p = lcs / static_cast<double>(hyp.size());
  const double r = lcs / static_cast<double>(ref.size());
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

}  // namespace qmetric
