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

#include "qmetric/tokens.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "qmetric/rng.hpp"
#include "test_util.hpp"

using namespace qmetric;

TEST_CASE("tokenize strips punctuation-only tokens") {
  TokenList toks = tokenize("Who was the director of Titanic ?");
  CHECK(toks.tokens == std::vector<std::string>{"Who", "was", "the",
                                                "director", "of", "Titanic"});
  CHECK(toks.original_text == "Who was the director of Titanic ?");
}

TEST_CASE("tokenize on empty and blank input") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t \n ").empty());
  CHECK(tokenize("?!...").empty());
}

TEST_CASE("tokenize keeps punctuation when asked") {
  TokenList toks = tokenize("director of Titanic ?", /*strip_punct=*/false);
  CHECK(toks.tokens ==
        std::vector<std::string>{"director", "of", "Titanic", "?"});
}

TEST_CASE("tokenize trims outer but keeps inner punctuation") {
  TokenList toks = tokenize("What's «1981?» (don't) u.s.a.");
  // Multi-byte characters are not ASCII punctuation and survive.
  CHECK(toks.tokens ==
        std::vector<std::string>{"What's", "«1981?»", "don't", "u.s.a"});
}

TEST_CASE("tokens never empty or whitespace-bearing") {
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    std::string text;
    for (size_t j = 0; j < rng.below(60); ++j) {
      text += static_cast<char>(32 + rng.below(95));
    }
    for (bool strip : {true, false}) {
      for (const auto& tok : tokenize(text, strip).tokens) {
        CHECK(!tok.empty());
        CHECK(tok.find_first_of(" \t\r\n\f\v") == std::string::npos);
      }
    }
  }
}

TEST_CASE("join and re-tokenize is idempotent") {
  SplitMix64 rng(12);
  for (int i = 0; i < 200; ++i) {
    std::string text;
    for (size_t j = 0; j < rng.below(60); ++j) {
      text += static_cast<char>(32 + rng.below(95));
    }
    for (bool strip : {true, false}) {
      TokenList once = tokenize(text, strip);
      TokenList twice = tokenize(once.joined(), strip);
      CHECK(once.tokens == twice.tokens);
    }
  }
}

TEST_CASE("ascii_lower touches only A-Z") {
  CHECK(ascii_lower("Titanic") == "titanic");
  CHECK(ascii_lower("O2") == "o2");
  CHECK(ascii_lower("déjà") == "déjà");
}
