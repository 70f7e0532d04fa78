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

#ifndef QMETRIC_ROUGE_HPP_
#define QMETRIC_ROUGE_HPP_

#include <cstddef>

#include "qmetric/tokens.hpp"

namespace qmetric {

// Length of the longest common subsequence, O(|a| * |b|) dynamic program.
size_t lcs_length(const TokenList& a, const TokenList& b);

// ROUGE-L: LCS-based F-measure with P = LCS/|hyp|, R = LCS/|ref| and
// F = (1 + beta^2) P R / (R + beta^2 P). Zero when either side is empty or
// nothing is shared. beta must be > 0.
double rouge_l(const TokenList& hyp, const TokenList& ref, double beta = 1.0);

}  // namespace qmetric

#endif  // QMETRIC_ROUGE_HPP_
