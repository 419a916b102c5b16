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

#ifndef TAGFORGE_PROFILES_HPP_
#define TAGFORGE_PROFILES_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tagforge/errors.hpp"
#include "tagforge/folksonomy.hpp"
#include "tagforge/split.hpp"

namespace tagforge {

// Components of a valid Profile sum to one within this tolerance.
inline constexpr double kSimplexTolerance = 1e-9;

// A probability mass function over a CategorySet. Users, items, the
// population, and forgery strategies are all represented by this type.
class Profile {
 public:
  // Validates that `components` lies on the simplex (each >= 0, sum within
  // kSimplexTolerance of 1) and renormalizes away the residual.
  static Profile FromComponents(CategorySetPtr categories,
                                std::vector<double> components) {
    CheckLength(*categories, components.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (!(components[i] >= 0.0) || !std::isfinite(components[i])) {
        throw ValidationError("profile component " + std::to_string(i) +
                              " is negative or not finite");
      }
      sum += components[i];
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      throw ValidationError("profile components sum to " +
                            std::to_string(sum) + ", not 1");
    }
    for (double& c : components) c /= sum;
    return Profile(std::move(categories), std::move(components));
  }

  // Normalizes non-negative weights (not all zero) to a PMF.
  static Profile FromWeights(CategorySetPtr categories,
                             std::span<const double> weights) {
    CheckLength(*categories, weights.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
        throw ValidationError("weight " + std::to_string(i) +
                              " is negative or not finite");
      }
      sum += weights[i];
    }
    if (!(sum > 0.0)) throw ValidationError("all weights are zero");
    std::vector<double> components(weights.begin(), weights.end());
    for (double& c : components) c /= sum;
    return Profile(std::move(categories), std::move(components));
  }

  static Profile FromCounts(CategorySetPtr categories,
                            std::span<const std::uint64_t> counts) {
    std::vector<double> weights(counts.begin(), counts.end());
    return FromWeights(std::move(categories), weights);
  }

  static Profile Uniform(CategorySetPtr categories) {
    const std::size_t n = categories->size();
    return Profile(std::move(categories),
                   std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  const CategorySet& categories() const { return *categories_; }
  const CategorySetPtr& category_set() const { return categories_; }
  std::span<const double> components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }

  bool SameCategories(const Profile& other) const {
    return categories_ == other.categories_ ||
           *categories_ == *other.categories_;
  }

 private:
  Profile(CategorySetPtr categories, std::vector<double> components)
      : categories_(std::move(categories)),
        components_(std::move(components)) {}

  static void CheckLength(const CategorySet& categories, std::size_t n) {
    if (n != categories.size()) {
      throw ValidationError("expected " + std::to_string(categories.size()) +
                            " components, got " + std::to_string(n));
    }
  }

  CategorySetPtr categories_;
  std::vector<double> components_;
};

inline void RequireSameCategories(const Profile& p, const Profile& q) {
  if (!p.SameCategories(q)) {
    throw ValidationError("profiles are defined over different category sets");
  }
}

// True iff every component is >= 0 and the sum is within `tolerance` of 1.
inline bool IsOnSimplex(std::span<const double> v,
                        double tolerance = kSimplexTolerance) {
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

inline Profile UserProfile(const Folksonomy& f, std::string_view user) {
  const std::optional<std::size_t> index = f.FindUser(user);
  if (!index) {
    throw ValidationError("user '" + std::string(user) +
                          "' has no annotations; profile undefined");
  }
  return Profile::FromCounts(f.category_set(), f.UserCounts(*index));
}

inline Profile ItemProfile(const Folksonomy& f, std::string_view item) {
  const std::optional<std::size_t> index = f.FindItem(item);
  if (!index) {
    throw ValidationError("item '" + std::string(item) +
                          "' has no annotations; profile undefined");
  }
  return Profile::FromCounts(f.category_set(), f.ItemCounts(*index));
}

enum class PopulationMode {
  kTagWeighted,   // relative frequency over all annotations
  kUserAveraged,  // unweighted mean of the user profiles
};

// Population profile. With `smoothing`, epsilon is added to every
// component before renormalizing (for datasets with empty categories).
inline Profile PopulationProfile(
    const Folksonomy& f, PopulationMode mode = PopulationMode::kTagWeighted,
    std::optional<double> smoothing = std::nullopt) {
  const std::size_t L = f.num_categories();
  std::vector<double> weights(L, 0.0);
  if (mode == PopulationMode::kTagWeighted) {
    for (const IndexedAnnotation& a : f.annotations()) weights[a.category] += 1;
  } else {
    for (std::size_t u = 0; u < f.users().size(); ++u) {
      const Profile p = Profile::FromCounts(f.category_set(), f.UserCounts(u));
      for (std::size_t l = 0; l < L; ++l) weights[l] += p[l];
    }
  }
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  if (smoothing) {
    if (!(*smoothing > 0.0)) {
      throw ValidationError("smoothing epsilon must be positive");
    }
    for (double& w : weights) w += *smoothing;
  }
  return Profile::FromWeights(f.category_set(), weights);
}

// The sub-folksonomy of annotations whose (user, item) pair is TRAIN.
inline Folksonomy RestrictToTraining(const Folksonomy& f,
                                     const SplitAssignment& split) {
  std::vector<Annotation> kept;
  for (const IndexedAnnotation& a : f.annotations()) {
    const std::string& user = f.users()[a.user];
    const std::string& item = f.items()[a.item];
    const std::optional<Part> part = split.Get(user, item);
    if (!part) {
      throw ValidationError("split does not cover pair (" + user + ", " +
                            item + ")");
    }
    if (*part == Part::kTrain) kept.push_back(f.Expand(a));
  }
  if (kept.empty()) {
    throw ValidationError(
        "split leaves no training annotations; profiles are undefined");
  }
  return Folksonomy(f.category_set(), kept);
}

inline nlohmann::json ToJson(const Profile& p) {
  return {{"categories", p.categories().labels()},
          {"components", std::vector<double>(p.components().begin(),
                                             p.components().end())}};
}

}  // namespace tagforge

#endif  // TAGFORGE_PROFILES_HPP_
