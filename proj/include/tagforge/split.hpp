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

#ifndef TAGFORGE_SPLIT_HPP_
#define TAGFORGE_SPLIT_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tagforge/errors.hpp"
#include "tagforge/folksonomy.hpp"
#include "tagforge/rng.hpp"

namespace tagforge {

enum class Part { kTrain, kTest };

// Assignment of every (user, item) pair of a folksonomy to the training
// or the test side.
class SplitAssignment {
 public:
  SplitAssignment() = default;
  explicit SplitAssignment(std::uint64_t seed) : seed_(seed) {}

  void Set(const std::string& user, const std::string& item, Part part) {
    parts_[user][item] = part;
  }

  std::optional<Part> Get(const std::string& user,
                          const std::string& item) const {
    auto u = parts_.find(user);
    if (u == parts_.end()) return std::nullopt;
    auto i = u->second.find(item);
    if (i == u->second.end()) return std::nullopt;
    return i->second;
  }

  // Items of `user` on the given side, ascending by identifier.
  std::vector<std::string> Items(const std::string& user, Part part) const {
    std::vector<std::string> out;
    auto u = parts_.find(user);
    if (u == parts_.end()) return out;
    for (const auto& [item, p] : u->second) {
      if (p == part) out.push_back(item);
    }
    return out;
  }

  std::uint64_t seed() const { return seed_; }

  bool operator==(const SplitAssignment& other) const {
    return parts_ == other.parts_;
  }

 private:
  std::uint64_t seed_ = 0;
  std::map<std::string, std::map<std::string, Part>> parts_;
};

// Number of training items for a user with `distinct_items` items:
// ceil(fraction * n), but at least one item is held out when n >= 2.
inline std::size_t TrainingItemCount(std::size_t distinct_items,
                                     double fraction) {
  if (distinct_items <= 1) return distinct_items;
  // The epsilon keeps e.g. 0.8 * 10 from rounding up to 9.
  const double raw = std::ceil(fraction * static_cast<double>(distinct_items) -
                               1e-9);
  const std::size_t train = static_cast<std::size_t>(std::max(raw, 1.0));
  return std::min(train, distinct_items - 1);
}

// Per-user split of distinct items. Users are visited in ascending
// identifier order and each user's sorted item list is shuffled with one
// shared SplitMix64 stream; the first TrainingItemCount items train.
inline SplitAssignment MakeSplit(const Folksonomy& f, std::uint64_t seed,
                                 double train_fraction = 0.8) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("split fraction must lie in (0, 1)");
  }
  std::vector<std::vector<std::uint32_t>> items_of(f.users().size());
  for (const IndexedAnnotation& a : f.annotations()) {
    items_of[a.user].push_back(a.item);
  }
  SplitMix64 rng(seed);
  SplitAssignment split(seed);
  for (std::size_t u = 0; u < items_of.size(); ++u) {
    std::vector<std::uint32_t>& items = items_of[u];
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    Shuffle(items, rng);
    const std::size_t train = TrainingItemCount(items.size(), train_fraction);
    for (std::size_t k = 0; k < items.size(); ++k) {
      split.Set(f.users()[u], f.items()[items[k]],
                k < train ? Part::kTrain : Part::kTest);
    }
  }
  return split;
}

}  // namespace tagforge

#endif  // TAGFORGE_SPLIT_HPP_
