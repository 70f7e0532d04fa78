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

#ifndef QMETRIC_RNG_HPP_
#define QMETRIC_RNG_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

namespace qmetric {

// SplitMix64 (Steele, Lea & Flood 2014). Every randomized operation in the
// toolkit draws from this generator so that a (seed, input) pair produces
// byte-identical output on every platform. OS entropy is never used
// implicitly.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection sampling. bound must be > 0.
  uint64_t below(uint64_t bound);

  // Uniform double in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// FNV-1a over the bytes of a string.
uint64_t fnv1a64(std::string_view bytes);

// Sub-seed for one record in a corpus-wide randomized operation. Records are
// independent, so parallel processing and processing order cannot change any
// record's output.
uint64_t derive_subseed(uint64_t master_seed, std::string_view record_id);

// k distinct indices drawn uniformly from [0, n), in draw order
// (partial Fisher-Yates). Requires k <= n.
std::vector<size_t> sample_without_replacement(SplitMix64& rng, size_t n,
                                               size_t k);

template <typename T>
void shuffle(SplitMix64& rng, std::vector<T>& values) {
  for (size_t i = values.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace qmetric

#endif  // QMETRIC_RNG_HPP_
