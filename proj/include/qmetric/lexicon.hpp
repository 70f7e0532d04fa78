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

#ifndef QMETRIC_LEXICON_HPP_
#define QMETRIC_LEXICON_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qmetric/tokens.hpp"

namespace qmetric {

// The four answerability classes. Every token of a classified question
// carries exactly one.
enum class TokenClass : uint8_t {
  kQuestionType = 0,
  kNamedEntity = 1,
  kContentWord = 2,
  kFunctionWord = 3,
};

inline constexpr size_t kNumTokenClasses = 4;

inline constexpr std::array<TokenClass, kNumTokenClasses> kAllTokenClasses = {
    TokenClass::kQuestionType, TokenClass::kNamedEntity,
    TokenClass::kContentWord, TokenClass::kFunctionWord};

// Stable short names used in weight files and score output.
std::string_view token_class_name(TokenClass cls);

// Function-word and question-type inventories. Question-type entries are
// removed from the function-word set at construction, so the two sets are
// always disjoint. Immutable after construction and safe to share across
// threads.
class Lexicon {
 public:
  // Bundled defaults: the versioned English function-word list shipped under
  // data/ (compiled in) and the wh-word question types
  // {who, whom, whose, what, which, when, where, why, how}.
  static Lexicon builtin();

  // Lexicon files are UTF-8, one lowercase token per line; '#'-prefixed
  // comment lines and blank lines are ignored. An empty question-type path
  // keeps the default types.
  static Lexicon load(const std::string& function_words_path,
                      const std::string& question_types_path = "");

  static Lexicon from_words(std::vector<std::string> function_words,
                            std::vector<std::string> question_types);

  bool is_function_word(std::string_view lowered) const {
    return function_words_.count(std::string(lowered)) > 0;
  }
  bool is_question_type(std::string_view lowered) const {
    return question_types_.count(std::string(lowered)) > 0;
  }

  // Question types in lexicographic order; perturbation draws index into
  // this, which keeps replacement deterministic for a fixed seed.
  const std::vector<std::string>& question_types_sorted() const {
    return question_types_sorted_;
  }

  size_t function_word_count() const { return function_words_.size(); }

  // FNV-1a over the sorted entries, recorded in output metadata so scored
  // files are traceable to the exact lexicon.
  uint64_t content_hash() const { return content_hash_; }

 private:
  Lexicon() = default;
  void finalize();

  std::unordered_set<std::string> function_words_;
  std::unordered_set<std::string> question_types_;
  std::vector<std::string> question_types_sorted_;
  uint64_t content_hash_ = 0;
};

// The default question-type inventory.
const std::vector<std::string>& default_question_types();

// The bundled function-word list (lowercase, sorted). data/function_words.txt
// mirrors this; a test keeps the two in sync.
const std::vector<std::string>& builtin_function_words();

// A question with one class per token. `lowered` holds the lowercase forms
// used for all matching.
struct ClassifiedQuestion {
  TokenList tokens;
  std::vector<std::string> lowered;
  std::vector<TokenClass> classes;

  size_t size() const { return tokens.size(); }
  bool has_class(TokenClass cls) const;
  size_t count_class(TokenClass cls) const;
};

// Class assignment, first rule wins:
//   1. lowercase form is a question type        -> kQuestionType
//   2. first character is an ASCII uppercase    -> kNamedEntity
//   3. lowercase form is a function word        -> kFunctionWord
//   4. otherwise                                -> kContentWord
// Rule 2 mirrors the capitalization heuristic the corpora support; a
// capitalized sentence-initial word that is neither a question type nor a
// function word is treated as a named entity.
ClassifiedQuestion classify_tokens(const TokenList& tokens,
                                   const Lexicon& lexicon);

// tokenize + classify in one step.
ClassifiedQuestion classify_text(std::string_view text, const Lexicon& lexicon,
                                 bool strip_punct = true);

}  // namespace qmetric

#endif  // QMETRIC_LEXICON_HPP_
