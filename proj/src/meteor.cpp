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

#include "qmetric/meteor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qmetric/porter.hpp"

namespace qmetric {

namespace {

constexpr int kNumStages = 3;  // exact, stem, synonym

// Node cap for the exact alignment search. Questions are short, so the cap
// is only reached on adversarial inputs (long runs of one repeated token);
// those fall back to a deterministic greedy leftmost alignment.
constexpr long kSearchBudget = 200000;

struct Candidate {
  int ref_index;
  int stage;
};

int count_chunks(const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) return 0;
  int chunks = 1;
  for (size_t k = 1; k < pairs.size(); ++k) {
    bool contiguous = pairs[k].first == pairs[k - 1].first + 1 &&
                      pairs[k].second == pairs[k - 1].second + 1;
    if (!contiguous) ++chunks;
  }
  return chunks;
}

class AlignmentSearch {
 public:
  AlignmentSearch(std::vector<std::vector<Candidate>> candidates,
                  size_t ref_size)
      : candidates_(std::move(candidates)), ref_used_(ref_size, false) {}

  MeteorAlignment run() {
    search(0);
    if (budget_ <= 0) {
      // Budget blown: rebuild the answer greedily, stage by stage, leftmost
      // hypothesis word to leftmost free reference word.
      return greedy();
    }
    MeteorAlignment out;
    out.pairs = best_pairs_;
    out.stage_matches = best_counts_;
    out.chunks = best_chunks_;
    return out;
  }

 private:
  // Lexicographic objective: per-stage counts (stage order), then fewer
  // chunks, then the smaller pair list.
  bool better_than_best(const std::vector<int>& counts, int chunks,
                        const std::vector<std::pair<int, int>>& pairs) const {
    if (counts != best_counts_) return counts > best_counts_;
    if (chunks != best_chunks_) return chunks < best_chunks_;
    return pairs < best_pairs_;
  }

  void search(size_t hyp_index) {
    if (--budget_ <= 0) return;
    if (hyp_index == candidates_.size()) {
      int chunks = count_chunks(current_pairs_);
      if (!has_best_ ||
          better_than_best(current_counts_, chunks, current_pairs_)) {
        has_best_ = true;
        best_counts_ = current_counts_;
        best_chunks_ = chunks;
        best_pairs_ = current_pairs_;
      }
      return;
    }

    // Matches still reachable from here; stop early when even matching every
    // remaining word cannot reach the best total.
    if (has_best_) {
      int optimistic = total_matches();
      for (size_t i = hyp_index; i < candidates_.size(); ++i) {
        for (const auto& cand : candidates_[i]) {
          if (!ref_used_[static_cast<size_t>(cand.ref_index)]) {
            ++optimistic;
            break;
          }
        }
      }
      int best_total = 0;
      for (int c : best_counts_) best_total += c;
      if (optimistic < best_total) return;
    }

    for (const auto& cand : candidates_[hyp_index]) {
      if (ref_used_[static_cast<size_t>(cand.ref_index)]) continue;
      ref_used_[static_cast<size_t>(cand.ref_index)] = true;
      current_pairs_.emplace_back(static_cast<int>(hyp_index), cand.ref_index);
      ++current_counts_[static_cast<size_t>(cand.stage)];
      search(hyp_index + 1);
      --current_counts_[static_cast<size_t>(cand.stage)];
      current_pairs_.pop_back();
      ref_used_[static_cast<size_t>(cand.ref_index)] = false;
    }
    // Leaving this word unmatched is always a branch; maximality is enforced
    // by the objective, not the search order.
    search(hyp_index + 1);
  }

  int total_matches() const {
    int t = 0;
    for (int c : current_counts_) t += c;
    return t;
  }

  MeteorAlignment greedy() {
    MeteorAlignment out;
    out.stage_matches.assign(kNumStages, 0);
    std::vector<bool> used(ref_used_.size(), false);
    std::vector<int> match_of(candidates_.size(), -1);
    for (int stage = 0; stage < kNumStages; ++stage) {
      for (size_t i = 0; i < candidates_.size(); ++i) {
        if (match_of[i] >= 0) continue;
        for (const auto& cand : candidates_[i]) {
          if (cand.stage != stage || used[static_cast<size_t>(cand.ref_index)]) {
            continue;
          }
          match_of[i] = cand.ref_index;
          used[static_cast<size_t>(cand.ref_index)] = true;
          ++out.stage_matches[static_cast<size_t>(stage)];
          break;
        }
      }
    }
    for (size_t i = 0; i < match_of.size(); ++i) {
      if (match_of[i] >= 0) {
        out.pairs.emplace_back(static_cast<int>(i), match_of[i]);
      }
    }
    out.chunks = count_chunks(out.pairs);
    return out;
  }

  std::vector<std::vector<Candidate>> candidates_;
  std::vector<bool> ref_used_;
  std::vector<std::pair<int, int>> current_pairs_;
  std::vector<int> current_counts_ = std::vector<int>(kNumStages, 0);

  bool has_best_ = false;
  std::vector<int> best_counts_ = std::vector<int>(kNumStages, -1);
  int best_chunks_ = 0;
  std::vector<std::pair<int, int>> best_pairs_;
  long budget_ = kSearchBudget;
};

}  // namespace

SynonymTable SynonymTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open synonym file: " + path);
  SynonymTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("synonym line missing tab separator: " + line);
    }
    table.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return table;
}

void SynonymTable::add(std::string_view a, std::string_view b) {
  std::string la = ascii_lower(a);
  std::string lb = ascii_lower(b);
  if (la > lb) std::swap(la, lb);
  pairs_.insert(la + "\t" + lb);
}

bool SynonymTable::related(std::string_view a, std::string_view b) const {
  std::string la = ascii_lower(a);
  std::string lb = ascii_lower(b);
  if (la > lb) std::swap(la, lb);
  return pairs_.count(la + "\t" + lb) > 0;
}

MeteorAlignment meteor_align(const std::vector<std::string>& hyp,
                             const std::vector<std::string>& ref,
                             const MeteorParams& params) {
  std::vector<std::string> hyp_stems(hyp.size());
  std::vector<std::string> ref_stems(ref.size());
  for (size_t i = 0; i < hyp.size(); ++i) hyp_stems[i] = porter_stem(hyp[i]);
  for (size_t j = 0; j < ref.size(); ++j) ref_stems[j] = porter_stem(ref[j]);

  // Each pair is assigned the strongest stage that covers it.
  std::vector<std::vector<Candidate>> candidates(hyp.size());
  for (size_t i = 0; i < hyp.size(); ++i) {
    for (size_t j = 0; j < ref.size(); ++j) {
      int stage = -1;
      if (hyp[i] == ref[j]) {
        stage = 0;
      } else if (hyp_stems[i] == ref_stems[j]) {
        stage = 1;
      } else if (params.synonyms != nullptr &&
                 params.synonyms->related(hyp[i], ref[j])) {
        stage = 2;
      }
      if (stage >= 0) {
        candidates[i].push_back({static_cast<int>(j), stage});
      }
    }
  }

  MeteorAlignment result =
      AlignmentSearch(std::move(candidates), ref.size()).run();
  result.total_matches = static_cast<int>(result.pairs.size());
  const double stage_weights[kNumStages] = {
      params.exact_weight, params.stem_weight, params.synonym_weight};
  result.weighted_matches = 0.0;
  for (int s = 0; s < kNumStages; ++s) {
    result.weighted_matches +=
        stage_weights[s] * result.stage_matches[static_cast<size_t>(s)];
  }
  return result;
}

double meteor(const TokenList& hyp, const TokenList& ref,
              const MeteorParams& params) {
  if (params.alpha <= 0.0 || params.alpha >= 1.0) {
    throw std::invalid_argument("meteor: alpha must be in (0,1)");
  }
  if (params.gamma < 0.0 || params.gamma > 1.0) {
    throw std::invalid_argument("meteor: gamma must be in [0,1]");
  }
  if (params.beta_frag <= 0.0) {
    throw std::invalid_argument("meteor: beta_frag must be > 0");
  }
  if (hyp.empty() || ref.empty()) return 0.0;

  MeteorAlignment alignment = meteor_align(hyp.tokens, ref.tokens, params);
  if (alignment.total_matches == 0) return 0.0;

  const double m = alignment.weighted_matches;
  const double p = m / static_cast<double>(hyp.size());
  const double r = m / static_cast<double>(ref.size());
  const double denom = params.alpha * p + (1.0 - params.alpha) * r;
  if (denom <= 0.0) return 0.0;
  const double f = p * r / denom;

  const double frag = static_cast<double>(alignment.chunks) /
                      static_cast<double>(alignment.total_matches);
  const double penalty = params.gamma * std::pow(frag, params.beta_frag);
  return f * (1.0 - penalty);
}

}  // namespace qmetric
