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

#ifndef TAGFORGE_FORGERY_HPP_
#define TAGFORGE_FORGERY_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagforge/errors.hpp"
#include "tagforge/folksonomy.hpp"
#include "tagforge/profiles.hpp"
#include "tagforge/simplexopt.hpp"

namespace tagforge {

enum class Strategy { kOptimized, kTmn, kUniform };

inline std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kOptimized:
      return "optimized";
    case Strategy::kTmn:
      return "tmn";
    case Strategy::kUniform:
      return "uniform";
  }
  return "unknown";
}

inline Strategy ParseStrategy(std::string_view name) {
  if (name == "optimized") return Strategy::kOptimized;
  if (name == "tmn") return Strategy::kTmn;
  if (name == "uniform") return Strategy::kUniform;
  throw ConfigError("unknown strategy '" + std::string(name) +
                    "' (expected optimized, tmn or uniform)");
}

// One forgery strategy at one forgery rate. A user applies exactly one
// strategy at a time.
class ForgeryConfig {
 public:
  ForgeryConfig(Strategy strategy, double rho,
                std::optional<Profile> tmn_distribution = std::nullopt)
      : strategy_(strategy),
        rho_(rho),
        tmn_distribution_(std::move(tmn_distribution)) {
    internal::CheckRho(rho);
    if (strategy == Strategy::kTmn && !tmn_distribution_) {
      throw ConfigError("the tmn strategy requires a TMN distribution");
    }
  }

  Strategy strategy() const { return strategy_; }
  double rho() const { return rho_; }
  const std::optional<Profile>& tmn_distribution() const {
    return tmn_distribution_;
  }

  ForgeryConfig WithRho(double rho) const {
    return ForgeryConfig(strategy_, rho, tmn_distribution_);
  }

 private:
  Strategy strategy_;
  double rho_;
  std::optional<Profile> tmn_distribution_;
};

// The forgery strategy r a config resolves to for user profile `p`.
inline Profile ResolveStrategy(const Profile& p, const Profile& population,
                               const ForgeryConfig& config) {
  switch (config.strategy()) {
    case Strategy::kOptimized:
      return SolveOptimalForgery(p, population, config.rho()).strategy;
    case Strategy::kTmn:
      RequireSameCategories(p, *config.tmn_distribution());
      return *config.tmn_distribution();
    case Strategy::kUniform:
      return Profile::Uniform(p.category_set());
  }
  throw ValidationError("unknown strategy");
}

// Apparent profile t = (1 - rho) p + rho r. At rho = 0 this is p itself
// for every strategy, and at rho = 1 it is r itself.
inline Profile ApparentProfile(const Profile& p, const Profile& population,
                               const ForgeryConfig& config) {
  RequireSameCategories(p, population);
  const double rho = config.rho();
  if (rho == 0.0) return p;
  if (config.strategy() == Strategy::kOptimized) {
    return SolveOptimalForgery(p, population, rho).apparent;
  }
  Profile r = ResolveStrategy(p, population, config);
  if (rho == 1.0) return r;
  std::vector<double> t(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    t[i] = (1.0 - rho) * p[i] + rho * r[i];
  }
  return Profile::FromComponents(p.category_set(), std::move(t));
}

// Reads a TMN distribution: one `label<TAB>weight` row per category, in
// any order, every category exactly once. Weights are normalized.
inline Profile LoadTmnDistribution(const std::string& path,
                                   const CategorySetPtr& categories) {
  std::ifstream in = internal::OpenForRead(path);
  std::vector<double> weights(categories->size(), 0.0);
  std::vector<bool> seen(categories->size(), false);
  std::string line;
  std::size_t line_number = 0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_number;
    internal::StripCarriageReturn(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = internal::SplitTabs(line);
    if (fields.size() != 2) {
      throw ParseError("expected 'label<TAB>weight'", line_number);
    }
    const std::optional<std::size_t> index = categories->Find(fields[0]);
    if (!index) {
      throw ValidationError("line " + std::to_string(line_number) +
                            ": unknown category '" + fields[0] + "'");
    }
    if (seen[*index]) {
      throw ValidationError("category '" + fields[0] + "' listed twice");
    }
    double weight = 0.0;
    std::size_t consumed = 0;
    try {
      weight = std::stod(fields[1], &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != fields[1].size() || fields[1].empty()) {
      throw ParseError("weight '" + fields[1] + "' is not a number",
                       line_number);
    }
    if (!(weight >= 0.0)) {
      throw ValidationError("line " + std::to_string(line_number) +
                            ": negative weight for '" + fields[0] + "'");
    }
    seen[*index] = true;
    weights[*index] = weight;
    ++rows;
  }
  if (rows != categories->size()) {
    throw ValidationError("TMN distribution has " + std::to_string(rows) +
                          " rows, expected " +
                          std::to_string(categories->size()));
  }
  return Profile::FromWeights(categories, weights);
}

inline void WriteTmnDistribution(const Profile& w, const std::string& path) {
  std::ofstream out = internal::OpenForWrite(path);
  char buffer[64];
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", w[i]);
    out << w.categories().label(i) << '\t' << buffer << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace tagforge

#endif  // TAGFORGE_FORGERY_HPP_
