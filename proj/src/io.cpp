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

#include "qmetric/io.hpp"

#include <fstream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"
#include "qmetric/version.hpp"

namespace qmetric {

namespace {

using Json = nlohmann::ordered_json;

// Calls fn(line_number, parsed_object) for every data line; blank lines and
// {"_meta": ...} lines are skipped.
template <typename Fn>
void for_each_jsonl(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(path, line_number,
                       std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) {
      throw ParseError(path, line_number, "expected a JSON object");
    }
    if (obj.contains("_meta")) continue;
    fn(line_number, obj);
  }
}

const Json& require_field(const std::string& path, size_t line,
                          const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path, line, std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::string require_string(const std::string& path, size_t line,
                           const Json& obj, const char* key) {
  const Json& v = require_field(path, line, obj, key);
  if (!v.is_string()) {
    throw ParseError(path, line, std::string("field \"") + key +
                                     "\" must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

std::string Meta::to_json_line() const {
  Json meta;
  meta["tool"] = "qmetric";
  meta["version"] = kVersion;
  meta["seed"] = seed;
  meta["lexicon_hash"] = lexicon_hash;
  Json flag_obj = Json::object();
  for (const auto& [k, v] : flags) flag_obj[k] = v;
  meta["flags"] = flag_obj;
  Json wrapper;
  wrapper["_meta"] = meta;
  return wrapper.dump();
}

std::vector<PairRecord> read_pairs(const std::string& path) {
  std::vector<PairRecord> records;
  std::unordered_set<std::string> seen_ids;
  for_each_jsonl(path, [&](size_t line, const Json& obj) {
    PairRecord rec;
    rec.id = require_string(path, line, obj, "id");
    rec.hypothesis = require_string(path, line, obj, "hypothesis");
    const Json& refs = require_field(path, line, obj, "references");
    if (!refs.is_array() || refs.empty()) {
      throw ParseError(path, line,
                       "field \"references\" must be a non-empty array");
    }
    for (const Json& r : refs) {
      if (!r.is_string()) {
        throw ParseError(path, line, "references must be strings");
      }
      rec.references.push_back(r.get<std::string>());
    }
    if (!seen_ids.insert(rec.id).second) {
      throw ParseError(path, line, "duplicate id \"" + rec.id + "\"");
    }
    records.push_back(std::move(rec));
  });
  return records;
}

void write_pairs(std::ostream& out, const std::vector<PairRecord>& records,
                 const Meta& meta) {
  out << meta.to_json_line() << '\n';
  for (const auto& rec : records) {
    Json obj;
    obj["id"] = rec.id;
    obj["hypothesis"] = rec.hypothesis;
    obj["references"] = rec.references;
    out << obj.dump() << '\n';
  }
}

std::vector<QuestionRecord> read_questions(const std::string& path) {
  std::vector<QuestionRecord> records;
  std::unordered_set<std::string> seen_ids;
  for_each_jsonl(path, [&](size_t line, const Json& obj) {
    QuestionRecord rec;
    rec.id = require_string(path, line, obj, "id");
    rec.question = require_string(path, line, obj, "question");
    if (!seen_ids.insert(rec.id).second) {
      throw ParseError(path, line, "duplicate id \"" + rec.id + "\"");
    }
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<JudgmentRecord> read_judgments(const std::string& path) {
  std::vector<JudgmentRecord> records;
  std::unordered_set<std::string> seen_ids;
  for_each_jsonl(path, [&](size_t line, const Json& obj) {
    JudgmentRecord rec;
    rec.id = require_string(path, line, obj, "id");
    rec.noisy = require_string(path, line, obj, "noisy");
    rec.reference = require_string(path, line, obj, "reference");
    const Json& ratings = require_field(path, line, obj, "ratings");
    if (!ratings.is_array() || ratings.empty()) {
      throw ParseError(path, line,
                       "field \"ratings\" must be a non-empty array");
    }
    for (const Json& r : ratings) {
      if (!r.is_object() || !r.contains("annotator") || !r.contains("score") ||
          !r["score"].is_number_integer()) {
        throw ParseError(path, line,
                         "ratings must be {\"annotator\", \"score\"} objects");
      }
      Rating rating;
      rating.annotator = r["annotator"].get<std::string>();
      rating.score = r["score"].get<int>();
      if (rating.score < 1 || rating.score > 5) {
        throw ParseError(path, line, "rating score outside 1..5");
      }
      rec.ratings.push_back(std::move(rating));
    }
    if (obj.contains("gold")) {
      double g = obj["gold"].get<double>();
      if (g < 0.0 || g > 1.0) {
        throw ParseError(path, line, "gold outside [0,1]");
      }
      rec.gold = g;
    }
    if (!seen_ids.insert(rec.id).second) {
      throw ParseError(path, line, "duplicate id \"" + rec.id + "\"");
    }
    records.push_back(std::move(rec));
  });
  return records;
}

void write_judgments(std::ostream& out,
                     const std::vector<JudgmentRecord>& records,
                     const Meta& meta) {
  out << meta.to_json_line() << '\n';
  for (const auto& rec : records) {
    Json obj;
    obj["id"] = rec.id;
    obj["noisy"] = rec.noisy;
    obj["reference"] = rec.reference;
    Json ratings = Json::array();
    for (const auto& r : rec.ratings) {
      Json rating;
      rating["annotator"] = r.annotator;
      rating["score"] = r.score;
      ratings.push_back(rating);
    }
    obj["ratings"] = ratings;
    if (rec.gold) obj["gold"] = *rec.gold;
    out << obj.dump() << '\n';
  }
}

WeightConfig read_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  Json obj;
  try {
    obj = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path, 0, std::string("malformed JSON: ") + e.what());
  }

  WeightConfig config;
  if (!obj.contains("weights") || !obj["weights"].is_object()) {
    throw ParseError(path, 0, "missing \"weights\" object");
  }
  const Json& w = obj["weights"];
  for (TokenClass cls : kAllTokenClasses) {
    std::string key(token_class_name(cls));
    if (!w.contains(key)) {
      throw ParseError(path, 0, "missing weight \"" + key + "\"");
    }
    config.weights[static_cast<size_t>(cls)] = w[key].get<double>();
  }
  if (!obj.contains("delta")) throw ParseError(path, 0, "missing \"delta\"");
  config.delta = obj["delta"].get<double>();
  config.base_metric = obj.value("base_metric", std::string{});
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, 0, e.what());
  }
  return config;
}

namespace {

// File key order: named_entity, content, question_type, function.
constexpr std::array<TokenClass, kNumTokenClasses> kWeightFileOrder = {
    TokenClass::kNamedEntity, TokenClass::kContentWord,
    TokenClass::kQuestionType, TokenClass::kFunctionWord};

}  // namespace

void write_weights(std::ostream& out, const WeightConfig& config,
                   const Meta& meta,
                   const std::array<double, kNumTokenClasses>* weight_stddev,
                   const double* delta_stddev) {
  Json obj;
  Json weights;
  for (TokenClass cls : kWeightFileOrder) {
    weights[std::string(token_class_name(cls))] =
        config.weights[static_cast<size_t>(cls)];
  }
  obj["weights"] = weights;
  obj["delta"] = config.delta;
  obj["base_metric"] = config.base_metric;
  if (weight_stddev != nullptr) {
    Json sd;
    for (TokenClass cls : kWeightFileOrder) {
      sd[std::string(token_class_name(cls))] =
          (*weight_stddev)[static_cast<size_t>(cls)];
    }
    obj["weight_stddev"] = sd;
  }
  if (delta_stddev != nullptr) obj["delta_stddev"] = *delta_stddev;
  obj["_meta"] = Json::parse(meta.to_json_line())["_meta"];
  out << obj.dump(2) << '\n';
}

}  // namespace qmetric
