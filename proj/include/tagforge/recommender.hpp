// Copyright 2026 The tagforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TAGFORGE_RECOMMENDER_HPP_
#define TAGFORGE_RECOMMENDER_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tagforge/errors.hpp"
#include "tagforge/profiles.hpp"

namespace tagforge {

// Cosine of the angle between two non-negative vectors; 0 if either is
// the zero vector.
inline double CosineSimilarity(std::span<const double> p,
                               std::span<const double> q) {
  if (p.size() != q.size()) {
    throw ValidationError("cosine similarity of vectors of different length");
  }
  double dot = 0.0;
  double pp = 0.0;
  double qq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    dot += p[i] * q[i];
    pp += p[i] * p[i];
    qq += q[i] * q[i];
  }
  if (pp == 0.0 || qq == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(pp) * std::sqrt(qq)), 0.0, 1.0);
}

inline double CosineSimilarity(const Profile& p, const Profile& q) {
  RequireSameCategories(p, q);
  return CosineSimilarity(p.components(), q.components());
}

struct RankedEntry {
  std::string item;
  double score;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

// Top-V recommendations for one user, best first.
struct RankedList {
  std::string user;
  std::vector<RankedEntry> entries;
  std::size_t v = 0;
};

struct Candidate {
  std::string item;
  Profile profile;
};

// Indices of the `v` best scores: descending by score, ties by ascending
// index. Callers keep candidates sorted by identifier so that index order
// is identifier order.
inline std::vector<std::size_t> TopIndices(std::span<const double> scores,
                                           std::size_t v) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min(v, order.size());
  auto better = [&scores](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(keep),
                    order.end(), better);
  order.resize(keep);
  return order;
}

inline RankedList RankItems(const Profile& user_profile,
                            std::span<const Candidate> candidates,
                            std::size_t v, std::string user = {}) {
  if (v == 0) throw ValidationError("V must be positive");
  if (candidates.empty()) throw ValidationError("no candidate items to rank");
  std::vector<const Candidate*> sorted;
  sorted.reserve(candidates.size());
  for (const Candidate& c : candidates) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(),
            [](const Candidate* a, const Candidate* b) {
              return a->item < b->item;
            });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k]->item == sorted[k - 1]->item) {
      throw ValidationError("duplicate candidate item '" + sorted[k]->item +
                            "'");
    }
  }
  std::vector<double> scores(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    scores[k] = CosineSimilarity(user_profile, sorted[k]->profile);
  }
  RankedList out{std::move(user), {}, v};
  for (std::size_t k : TopIndices(scores, v)) {
    out.entries.push_back({sorted[k]->item, scores[k]});
  }
  return out;
}

// JSON-lines record: {"user": ..., "items": [...], "scores": [...]}.
inline nlohmann::json ToJson(const RankedList& list) {
  nlohmann::json items = nlohmann::json::array();
  nlohmann::json scores = nlohmann::json::array();
  for (const RankedEntry& e : list.entries) {
    items.push_back(e.item);
    scores.push_back(e.score);
  }
  return {{"user", list.user}, {"items", items}, {"scores", scores}};
}

}  // namespace tagforge

#endif  // TAGFORGE_RECOMMENDER_HPP_
