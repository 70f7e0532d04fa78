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

namespace qmetric {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  if (u >= 128) return false;
  return (u >= '!' && u <= '/') || (u >= ':' && u <= '@') ||
         (u >= '[' && u <= '`') || (u >= '{' && u <= '~');
}

// Trim leading/trailing punctuation; empty result means the token was all
// punctuation and should be dropped.
std::string_view strip_outer_punct(std::string_view tok) {
  size_t begin = 0;
  size_t end = tok.size();
  while (begin < end && is_punct(tok[begin])) ++begin;
  while (end > begin && is_punct(tok[end - 1])) --end;
  return tok.substr(begin, end - begin);
}

}  // namespace

std::string TokenList::joined() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

TokenList tokenize(std::string_view text, bool strip_punct) {
  TokenList result;
  result.original_text.assign(text);
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i == start) continue;
    std::string_view tok = text.substr(start, i - start);
    if (strip_punct) {
      tok = strip_outer_punct(tok);
      if (tok.empty()) continue;
    }
    result.tokens.emplace_back(tok);
  }
  return result;
}

std::string ascii_lower(std::string_view word) {
  std::string out(word);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> ascii_lower(const std::vector<std::string>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(ascii_lower(w));
  return out;
}

TokenList lowercased(const TokenList& tokens) {
  TokenList out;
  out.original_text = tokens.original_text;
  out.tokens = ascii_lower(tokens.tokens);
  return out;
}

}  // namespace qmetric
