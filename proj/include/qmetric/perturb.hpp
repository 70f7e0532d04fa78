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

#ifndef QMETRIC_PERTURB_HPP_
#define QMETRIC_PERTURB_HPP_

#include <string_view>

#include "qmetric/lexicon.hpp"
#include "qmetric/rng.hpp"
#include "qmetric/tokens.hpp"

namespace qmetric {

// The four systematic noise procedures.
enum class NoiseKind {
  kDropFunctionWords,
  kDropNamedEntities,
  kDropContentWords,
  kReplaceQuestionType,
};

NoiseKind parse_noise_kind(std::string_view name);
std::string_view noise_kind_name(NoiseKind kind);

enum class ContentDropMode { kAll, kUniformK };

struct PerturbResult {
  TokenList tokens;
  // False when the question lacked the targeted class and was returned
  // unchanged; callers report these, they are never silent.
  bool changed = false;
};

// Removes every function word, preserving order. Deterministic.
PerturbResult drop_function_words(const ClassifiedQuestion& q);

// Removes k named entities, k uniform on [1, min(max_drops, #entities)],
// positions chosen uniformly without replacement. No-op when the question
// has no named entities.
PerturbResult drop_named_entities(const ClassifiedQuestion& q, SplitMix64& rng,
                                  int max_drops = 3);

// Removes content words: all of them, or k uniform on [1, #content] at
// uniformly chosen positions. No-op when the question has no content words.
PerturbResult drop_content_words(
    const ClassifiedQuestion& q, SplitMix64& rng,
    ContentDropMode mode = ContentDropMode::kUniformK);

// Replaces the first question-type token with a different type drawn
// uniformly from the lexicon, preserving the original token's leading-letter
// casing. No-op when the question has no question-type token.
PerturbResult replace_question_type(const ClassifiedQuestion& q,
                                    const Lexicon& lexicon, SplitMix64& rng);

PerturbResult apply_noise(NoiseKind kind, const ClassifiedQuestion& q,
                          const Lexicon& lexicon, SplitMix64& rng,
                          ContentDropMode mode = ContentDropMode::kUniformK,
                          int max_entity_drops = 3);

}  // namespace qmetric

#endif  // QMETRIC_PERTURB_HPP_
