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

#ifndef TAGFORGE_SIMPLEXOPT_HPP_
#define TAGFORGE_SIMPLEXOPT_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "tagforge/errors.hpp"
#include "tagforge/privacy.hpp"
#include "tagforge/profiles.hpp"

namespace tagforge {

// Result of the optimized forgery program
//
//   minimize_r  D((1 - rho) p + rho r || population)  over PMFs r.
struct OptimalForgery {
  Profile strategy;   // r*
  Profile apparent;   // t* = (1 - rho) p + rho r*
  double objective;   // D(t* || population), bits
  double lambda;      // water level; 0 by convention when rho = 0
  int iterations;     // bisection steps
};

inline constexpr int kMaxBisectionSteps = 200;
inline constexpr double kWaterFillTolerance = 1e-12;
inline constexpr double kKktTolerance = 1e-7;

namespace internal {

inline void CheckRho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw ValidationError("forgery rate rho must lie in [0, 1], got " +
                          std::to_string(rho));
  }
}

// sum_i max(floor_i, level * population_i)
inline double WaterFillSum(const std::vector<double>& floor,
                           std::span<const double> population, double level) {
  double sum = 0.0;
  for (std::size_t i = 0; i < floor.size(); ++i) {
    sum += std::max(floor[i], level * population[i]);
  }
  return sum;
}

}  // namespace internal

// Solves the program through its KKT conditions. Writing t = (1-rho) p +
// rho r, the feasible set is {t : t >= (1-rho) p, sum t = 1} and the
// minimizer has the water-filling form
//
//   t*_i = max((1 - rho) p_i, lambda * population_i),
//
// with lambda the unique level at which t* sums to one. Lambda is
// bracketed in [0, 2 / min_i population_i] and bisected; the active set
// found that way then yields lambda in closed form.
inline OptimalForgery SolveOptimalForgery(const Profile& p,
                                          const Profile& population,
                                          double rho) {
  RequireSameCategories(p, population);
  internal::CheckRho(rho);
  const std::size_t L = p.size();
  std::span<const double> pop = population.components();

  if (rho == 0.0) {
    // Any r is optimal; the population is returned as a fixed placeholder.
    return {population, p, KlDivergence(p, population), 0.0, 0};
  }
  if (rho == 1.0) {
    // The floor vanishes and t* = population exactly (lambda = 1).
    return {population, population, 0.0, 1.0, 0};
  }

  std::vector<double> floor(L);
  double min_positive = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < L; ++i) {
    floor[i] = (1.0 - rho) * p[i];
    if (pop[i] > 0.0) {
      min_positive = std::min(min_positive, pop[i]);
    } else if (floor[i] > 0.0) {
      throw NumericError(
          "population profile is zero on category '" +
          p.categories().label(i) +
          "' where the user has mass; every forgery strategy has infinite "
          "risk");
    }
  }

  double lo = 0.0;
  double hi = 2.0 / min_positive;
  double lo_sum = internal::WaterFillSum(floor, pop, lo);
  double hi_sum = internal::WaterFillSum(floor, pop, hi);
  if (!(lo_sum <= 1.0 + kWaterFillTolerance && hi_sum >= 1.0)) {
    throw NumericError("water-filling bracket does not contain the root");
  }
  double level = hi;
  int steps = 0;
  while (steps < kMaxBisectionSteps) {
    ++steps;
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    const double sum = internal::WaterFillSum(floor, pop, mid);
    if (sum < lo_sum || sum > hi_sum) {
      throw NumericError("water-filling sum is not monotone in lambda");
    }
    level = mid;
    if (std::abs(sum - 1.0) <= kWaterFillTolerance) break;
    if (sum < 1.0) {
      lo = mid;
      lo_sum = sum;
    } else {
      hi = mid;
      hi_sum = sum;
    }
  }

  // Closed-form level on the active set {i : level * pop_i > floor_i}.
  double active_mass = 0.0;
  double inactive_floor = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    if (pop[i] > 0.0 && level * pop[i] > floor[i]) {
      active_mass += pop[i];
    } else {
      inactive_floor += floor[i];
    }
  }
  if (active_mass > 0.0) {
    const double exact = (1.0 - inactive_floor) / active_mass;
    bool consistent = exact > 0.0;
    for (std::size_t i = 0; i < L && consistent; ++i) {
      const bool active = pop[i] > 0.0 && level * pop[i] > floor[i];
      if (active && exact * pop[i] < floor[i]) consistent = false;
      if (!active && exact * pop[i] > floor[i]) consistent = false;
    }
    if (consistent) level = exact;
  }

  std::vector<double> strategy(L);
  double strategy_sum = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    const double t = std::max(floor[i], level * pop[i]);
    strategy[i] = std::max(0.0, (t - floor[i]) / rho);
    strategy_sum += strategy[i];
  }
  for (double& r : strategy) r /= strategy_sum;
  std::vector<double> apparent(L);
  for (std::size_t i = 0; i < L; ++i) {
    apparent[i] = floor[i] + rho * strategy[i];
  }

  Profile strategy_profile =
      Profile::FromComponents(p.category_set(), std::move(strategy));
  Profile apparent_profile =
      Profile::FromComponents(p.category_set(), std::move(apparent));
  const double objective = KlDivergence(apparent_profile, population);
  return {std::move(strategy_profile), std::move(apparent_profile), objective,
          level, steps};
}

// Optimality certificate. With g_i = rho (log2(t_i / pop_i) + 1 / ln 2)
// the partial derivative of the objective in r_i, checks that g_i equals
// a common value nu on the support of r and is >= nu - tol elsewhere.
// The apparent profile is recomputed from result.strategy.
inline bool VerifyKkt(const OptimalForgery& result, const Profile& p,
                      const Profile& population, double rho,
                      double tolerance = kKktTolerance) {
  const Profile& r = result.strategy;
  if (!r.SameCategories(p) || !p.SameCategories(population)) return false;
  if (!(rho >= 0.0 && rho <= 1.0)) return false;
  if (!IsOnSimplex(r.components())) return false;
  if (rho == 0.0) return true;

  const std::size_t L = p.size();
  std::vector<double> gradient(L, std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> in_domain(L, false);
  for (std::size_t i = 0; i < L; ++i) {
    const double t = (1.0 - rho) * p[i] + rho * r[i];
    if (population[i] <= 0.0) {
      if (t > 0.0) return false;  // infinite objective
      continue;
    }
    in_domain[i] = true;
    gradient[i] = t > 0.0 ? rho * (std::log2(t / population[i]) +
                                   1.0 / std::numbers::ln2)
                          : -std::numeric_limits<double>::infinity();
  }

  double nu = 0.0;
  int support = 0;
  for (std::size_t i = 0; i < L; ++i) {
    if (in_domain[i] && r[i] > 0.0) {
      nu += gradient[i];
      ++support;
    }
  }
  if (support == 0) return false;
  nu /= support;
  for (std::size_t i = 0; i < L; ++i) {
    if (!in_domain[i]) continue;
    if (r[i] > 0.0) {
      if (!(std::abs(gradient[i] - nu) <= tolerance)) return false;
    } else if (!(gradient[i] >= nu - tolerance)) {
      return false;
    }
  }
  return true;
}

}  // namespace tagforge

#endif  // TAGFORGE_SIMPLEXOPT_HPP_
