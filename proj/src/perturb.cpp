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

#include "qmetric/perturb.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmetric {

namespace {

std::vector<size_t> positions_of(const ClassifiedQuestion& q, TokenClass cls) {
  std::vector<size_t> positions;
  for (size_t i = 0; i < q.size(); ++i) {
    if (q.classes[i] == cls) positions.push_back(i);
  }
  return positions;
}

PerturbResult remove_positions(const ClassifiedQuestion& q,
                               std::vector<size_t> positions) {
  std::sort(positions.begin(), positions.end());
  PerturbResult result;
  result.changed = !positions.empty();
  size_t next = 0;
  for (size_t i = 0; i < q.size(); ++i) {
    if (next < positions.size() && positions[next] == i) {
      ++next;
      continue;
    }
    result.tokens.tokens.push_back(q.tokens.tokens[i]);
  }
  result.tokens.original_text = result.tokens.joined();
  return result;
}

PerturbResult unchanged(const ClassifiedQuestion& q) {
  PerturbResult result;
  result.tokens = q.tokens;
  result.changed = false;
  return result;
}

}  // namespace

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "function-words") return NoiseKind::kDropFunctionWords;
  if (name == "named-entities") return NoiseKind::kDropNamedEntities;
  if (name == "content-words") return NoiseKind::kDropContentWords;
  if (name == "question-type") return NoiseKind::kReplaceQuestionType;
  throw std::invalid_argument("unknown noise kind: " + std::string(name));
}

std::string_view noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kDropFunctionWords:
      return "function-words";
    case NoiseKind::kDropNamedEntities:
      return "named-entities";
    case NoiseKind::kDropContentWords:
      return "content-words";
    case NoiseKind::kReplaceQuestionType:
      return "question-type";
  }
  return "unknown";
}

PerturbResult drop_function_words(const ClassifiedQuestion& q) {
  auto positions = positions_of(q, TokenClass::kFunctionWord);
  if (positions.empty()) return unchanged(q);
  return remove_positions(q, std::move(positions));
}

PerturbResult drop_named_entities(const ClassifiedQuestion& q, SplitMix64& rng,
                                  int max_drops) {
  if (max_drops < 1) {
    throw std::invalid_argument("drop_named_entities: max_drops must be >= 1");
  }
  auto positions = positions_of(q, TokenClass::kNamedEntity);
  if (positions.empty()) return unchanged(q);

  size_t cap = std::min<size_t>(static_cast<size_t>(max_drops),
                                positions.size());
  size_t k = 1 + static_cast<size_t>(rng.below(cap));
  auto picks = sample_without_replacement(rng, positions.size(), k);

  std::vector<size_t> chosen;
  chosen.reserve(k);
  for (size_t p : picks) chosen.push_back(positions[p]);
  return remove_positions(q, std::move(chosen));
}

PerturbResult drop_content_words(const ClassifiedQuestion& q, SplitMix64& rng,
                                 ContentDropMode mode) {
  auto positions = positions_of(q, TokenClass::kContentWord);
  if (positions.empty()) return unchanged(q);

  if (mode == ContentDropMode::kAll) {
    return remove_positions(q, std::move(positions));
  }
  size_t k = 1 + static_cast<size_t>(rng.below(positions.size()));
  auto picks = sample_without_replacement(rng, positions.size(), k);
  std::vector<size_t> chosen;
  chosen.reserve(k);
  for (size_t p : picks) chosen.push_back(positions[p]);
  return remove_positions(q, std::move(chosen));
}

PerturbResult replace_question_type(const ClassifiedQuestion& q,
                                    const Lexicon& lexicon, SplitMix64& rng) {
  auto positions = positions_of(q, TokenClass::kQuestionType);
  if (positions.empty()) return unchanged(q);

  const size_t pos = positions.front();
  const std::string& original_lowered = q.lowered[pos];

  std::vector<std::string> alternatives;
  for (const auto& type : lexicon.question_types_sorted()) {
    if (type != original_lowered) alternatives.push_back(type);
  }
  if (alternatives.empty()) return unchanged(q);

  std::string replacement =
      alternatives[static_cast<size_t>(rng.below(alternatives.size()))];

  // Preserve the original token's leading-letter casing.
  const std::string& original = q.tokens.tokens[pos];
  if (!original.empty() && original[0] >= 'A' && original[0] <= 'Z' &&
      replacement[0] >= 'a' && replacement[0] <= 'z') {
    replacement[0] = static_cast<char>(replacement[0] - 'a' + 'A');
  }

  PerturbResult result;
  result.tokens = q.tokens;
  result.tokens.tokens[pos] = std::move(replacement);
  result.tokens.original_text = result.tokens.joined();
  result.changed = true;
  return result;
}

PerturbResult apply_noise(NoiseKind kind, const ClassifiedQuestion& q,
                          const Lexicon& lexicon, SplitMix64& rng,
                          ContentDropMode mode, int max_entity_drops) {
  switch (kind) {
    case NoiseKind::kDropFunctionWords:
      return drop_function_words(q);
    case NoiseKind::kDropNamedEntities:
      return drop_named_entities(q, rng, max_entity_drops);
    case NoiseKind::kDropContentWords:
      return drop_content_words(q, rng, mode);
    case NoiseKind::kReplaceQuestionType:
      return replace_question_type(q, lexicon, rng);
  }
  throw std::invalid_argument("apply_noise: unknown noise kind");
}

}  // namespace qmetric
