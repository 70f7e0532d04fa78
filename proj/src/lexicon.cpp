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

#include "qmetric/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "qmetric/rng.hpp"

namespace qmetric {

namespace {

// The NLTK English stopword inventory (179 entries), frozen here so results
// do not depend on an installed NLP toolkit.
const char* const kFunctionWords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
    "you're", "you've", "you'll", "you'd", "your", "yours", "yourself",
    "yourselves", "he", "him", "his", "himself", "she", "she's", "her",
    "hers", "herself", "it", "it's", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
    "that", "that'll", "these", "those", "am", "is", "are", "was", "were",
    "be", "been", "being", "have", "has", "had", "having", "do", "does",
    "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because",
    "as", "until", "while", "of", "at", "by", "for", "with", "about",
    "against", "between", "into", "through", "during", "before", "after",
    "above", "below", "to", "from", "up", "down", "in", "out", "on", "off",
    "over", "under", "again", "further", "then", "once", "here", "there",
    "when", "where", "why", "how", "all", "any", "both", "each", "few",
    "more", "most", "other", "some", "such", "no", "nor", "not", "only",
    "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
    "just", "don", "don't", "should", "should've", "now", "d", "ll", "m",
    "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
    "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn",
    "hasn't", "haven", "haven't", "isn", "isn't", "ma", "mightn",
    "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
    "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won",
    "won't", "wouldn", "wouldn't"};

const char* const kQuestionTypes[] = {"who",   "whom",  "whose", "what",
                                      "which", "when",  "where", "why",
                                      "how"};

bool has_whitespace(std::string_view word) {
  return word.find_first_of(" \t\r\n\f\v") != std::string_view::npos;
}

std::vector<std::string> read_word_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open lexicon file: " + path);
  }
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.push_back(line);
  }
  return words;
}

}  // namespace

std::string_view token_class_name(TokenClass cls) {
  switch (cls) {
    case TokenClass::kQuestionType:
      return "question_type";
    case TokenClass::kNamedEntity:
      return "named_entity";
    case TokenClass::kContentWord:
      return "content";
    case TokenClass::kFunctionWord:
      return "function";
  }
  return "unknown";
}

const std::vector<std::string>& default_question_types() {
  static const std::vector<std::string> types(std::begin(kQuestionTypes),
                                              std::end(kQuestionTypes));
  return types;
}

const std::vector<std::string>& builtin_function_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w(std::begin(kFunctionWords),
                               std::end(kFunctionWords));
    std::sort(w.begin(), w.end());
    return w;
  }();
  return words;
}

void Lexicon::finalize() {
  // Question types trump function words: remove overlaps so the two sets are
  // disjoint and classification has a unique answer.
  for (const auto& qt : question_types_) function_words_.erase(qt);

  question_types_sorted_.assign(question_types_.begin(),
                                question_types_.end());
  std::sort(question_types_sorted_.begin(), question_types_sorted_.end());

  std::vector<std::string> sorted_fw(function_words_.begin(),
                                     function_words_.end());
  std::sort(sorted_fw.begin(), sorted_fw.end());
  uint64_t h = fnv1a64("qmetric-lexicon");
  for (const auto& w : sorted_fw) h ^= fnv1a64(w) * 0x9E3779B97F4A7C15ULL;
  for (const auto& w : question_types_sorted_) h ^= fnv1a64(w);
  content_hash_ = h;
}

Lexicon Lexicon::from_words(std::vector<std::string> function_words,
                            std::vector<std::string> question_types) {
  Lexicon lex;
  for (auto& w : function_words) {
    if (w.empty() || has_whitespace(w)) {
      throw std::invalid_argument("lexicon entry empty or has whitespace: '" +
                                  w + "'");
    }
    lex.function_words_.insert(ascii_lower(w));
  }
  for (auto& w : question_types) {
    if (w.empty() || has_whitespace(w)) {
      throw std::invalid_argument("lexicon entry empty or has whitespace: '" +
                                  w + "'");
    }
    lex.question_types_.insert(ascii_lower(w));
  }
  if (lex.question_types_.empty()) {
    throw std::invalid_argument("lexicon needs at least one question type");
  }
  lex.finalize();
  return lex;
}

Lexicon Lexicon::builtin() {
  return from_words(builtin_function_words(), default_question_types());
}

Lexicon Lexicon::load(const std::string& function_words_path,
                      const std::string& question_types_path) {
  std::vector<std::string> types = question_types_path.empty()
                                       ? default_question_types()
                                       : read_word_file(question_types_path);
  return from_words(read_word_file(function_words_path), std::move(types));
}

bool ClassifiedQuestion::has_class(TokenClass cls) const {
  return std::find(classes.begin(), classes.end(), cls) != classes.end();
}

size_t ClassifiedQuestion::count_class(TokenClass cls) const {
  return static_cast<size_t>(std::count(classes.begin(), classes.end(), cls));
}

ClassifiedQuestion classify_tokens(const TokenList& tokens,
                                   const Lexicon& lexicon) {
  ClassifiedQuestion out;
  out.tokens = tokens;
  out.lowered = ascii_lower(tokens.tokens);
  out.classes.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& cased = tokens.tokens[i];
    const std::string& low = out.lowered[i];
    TokenClass cls;
    if (lexicon.is_question_type(low)) {
      cls = TokenClass::kQuestionType;
    } else if (!cased.empty() && cased[0] >= 'A' && cased[0] <= 'Z') {
      cls = TokenClass::kNamedEntity;
    } else if (lexicon.is_function_word(low)) {
      cls = TokenClass::kFunctionWord;
    } else {
      cls = TokenClass::kContentWord;
    }
    out.classes.push_back(cls);
  }
  return out;
}

ClassifiedQuestion classify_text(std::string_view text, const Lexicon& lexicon,
                                 bool strip_punct) {
  return classify_tokens(tokenize(text, strip_punct), lexicon);
}

}  // namespace qmetric
