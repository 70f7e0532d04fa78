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

#ifndef QMETRIC_TOKENS_HPP_
#define QMETRIC_TOKENS_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace qmetric {

// A tokenized sentence. Tokens are never empty and never contain whitespace,
// so joining with single spaces and re-tokenizing is idempotent.
struct TokenList {
  std::vector<std::string> tokens;
  std::string original_text;

  size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  // Tokens joined with single spaces.
  std::string joined() const;

  bool operator==(const TokenList& other) const {
    return tokens == other.tokens;
  }
};

// Whitespace tokenizer. With strip_punct (the default), tokens made entirely
// of punctuation are dropped and leading/trailing punctuation is trimmed from
// the rest; interior punctuation ("don't", "u.s.a") is preserved. Punctuation
// and whitespace are ASCII; multi-byte UTF-8 sequences pass through as
// ordinary letters. Empty input gives an empty TokenList.
TokenList tokenize(std::string_view text, bool strip_punct = true);

// ASCII lowercasing, used everywhere tokens are matched case-insensitively.
std::string ascii_lower(std::string_view word);
std::vector<std::string> ascii_lower(const std::vector<std::string>& words);

// TokenList over the lowercased forms, for case-insensitive metric scoring.
TokenList lowercased(const TokenList& tokens);

}  // namespace qmetric

#endif  // QMETRIC_TOKENS_HPP_
