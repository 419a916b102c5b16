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

#ifndef TAGFORGE_EVALUATION_HPP_
#define TAGFORGE_EVALUATION_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tagforge/errors.hpp"
#include "tagforge/folksonomy.hpp"
#include "tagforge/forgery.hpp"
#include "tagforge/privacy.hpp"
#include "tagforge/profiles.hpp"
#include "tagforge/recommender.hpp"
#include "tagforge/split.hpp"

namespace tagforge {

// Fraction of the first V ranked items that are relevant. The
// denominator is V even when the list is shorter.
inline double PrecisionAtV(const RankedList& ranked,
                           const std::set<std::string>& relevant,
                           std::size_t v) {
  if (v == 0) throw ValidationError("V must be positive");
  const std::size_t n = std::min(v, ranked.entries.size());
  std::size_t hits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (relevant.count(ranked.entries[k].item) > 0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(v);
}

// Per-user row of one (strategy, rho) cell.
struct UserOutcome {
  std::string user;
  double initial_risk = 0.0;  // bits
  double final_risk = 0.0;    // bits, may be +inf
  std::vector<std::size_t> hits;  // parallel to the sweep's V list
  std::size_t test_size = 0;
};

// Fraction of users whose final risk strictly exceeds their initial risk.
inline double CountRiskIncreases(std::span<const UserOutcome> outcomes) {
  if (outcomes.empty()) throw ValidationError("no user outcomes");
  std::size_t increased = 0;
  for (const UserOutcome& o : outcomes) {
    if (o.final_risk > o.initial_risk) ++increased;
  }
  return static_cast<double>(increased) /
         static_cast<double>(outcomes.size());
}

struct SweepResult {
  Strategy strategy = Strategy::kOptimized;
  double rho = 0.0;
  double mean_initial_risk = 0.0;  // over users with finite R0
  double mean_final_risk = 0.0;    // over users with finite R
  // Mean of (R0 - R) / R0 over users with finite positive R0 and finite R.
  double mean_risk_reduction = 0.0;
  double frac_users_risk_increased = 0.0;
  // (V, mean P@V over users with at least one test item).
  std::vector<std::pair<std::size_t, double>> precision;
  std::size_t num_users_evaluated = 0;  // users in the P@V average
  std::size_t num_infinite_risk = 0;

  double PrecisionAt(std::size_t v) const {
    for (const auto& [pv, value] : precision) {
      if (pv == v) return value;
    }
    throw ValidationError("no P@" + std::to_string(v) + " in sweep result");
  }
};

enum class CandidatePool {
  kGlobal,   // union of every user's test items
  kPerUser,  // the global pool minus the user's own training items
};

struct SweepOptions {
  PopulationMode population_mode = PopulationMode::kTagWeighted;
  std::optional<double> smoothing;
  CandidatePool candidate_pool = CandidatePool::kGlobal;
  std::size_t threads = 1;
};

struct SweepOutput {
  std::vector<SweepResult> results;
  // outcomes[k] holds the per-user rows behind results[k], users ascending.
  std::vector<std::vector<UserOutcome>> outcomes;
};

// Aggregates one cell. Users are summed in the given order, so results
// do not depend on how the per-user work was scheduled.
inline SweepResult Aggregate(Strategy strategy, double rho,
                             std::span<const UserOutcome> outcomes,
                             std::span<const std::size_t> v_list) {
  SweepResult r;
  r.strategy = strategy;
  r.rho = rho;
  double initial_sum = 0.0;
  std::size_t initial_n = 0;
  double final_sum = 0.0;
  std::size_t final_n = 0;
  double reduction_sum = 0.0;
  std::size_t reduction_n = 0;
  std::vector<double> precision_sum(v_list.size(), 0.0);
  for (const UserOutcome& o : outcomes) {
    if (std::isfinite(o.initial_risk)) {
      initial_sum += o.initial_risk;
      ++initial_n;
    }
    if (std::isfinite(o.final_risk)) {
      final_sum += o.final_risk;
      ++final_n;
    } else {
      ++r.num_infinite_risk;
    }
    if (std::isfinite(o.initial_risk) && o.initial_risk > 0.0 &&
        std::isfinite(o.final_risk)) {
      reduction_sum += (o.initial_risk - o.final_risk) / o.initial_risk;
      ++reduction_n;
    }
    if (o.test_size > 0) {
      ++r.num_users_evaluated;
      for (std::size_t k = 0; k < v_list.size(); ++k) {
        precision_sum[k] += static_cast<double>(o.hits[k]) /
                            static_cast<double>(v_list[k]);
      }
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto mean = [nan](double sum, std::size_t n) {
    return n > 0 ? sum / static_cast<double>(n) : nan;
  };
  r.mean_initial_risk = mean(initial_sum, initial_n);
  r.mean_final_risk = mean(final_sum, final_n);
  r.mean_risk_reduction = mean(reduction_sum, reduction_n);
  r.frac_users_risk_increased =
      outcomes.empty() ? nan : CountRiskIncreases(outcomes);
  for (std::size_t k = 0; k < v_list.size(); ++k) {
    r.precision.emplace_back(v_list[k],
                             mean(precision_sum[k], r.num_users_evaluated));
  }
  return r;
}

namespace internal {

// Runs body(i) for i in [0, n) on up to `threads` workers and rethrows
// the first exception raised.
template <typename Body>
void ParallelFor(std::size_t n, std::size_t threads, Body&& body) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  }
  for (std::thread& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace internal

// The full experiment grid. Item profiles and the population profile come
// from the training annotations only; the population is not recomputed
// under forgery. Each user is ranked against the candidate pool with the
// apparent profile, and hits are the user's own test items in the top V.
inline SweepOutput RunSweep(const Folksonomy& f, const SplitAssignment& split,
                            std::span<const ForgeryConfig> strategies,
                            std::span<const double> rho_grid,
                            std::span<const std::size_t> v_list,
                            const SweepOptions& options = {}) {
  if (strategies.empty()) throw ConfigError("no strategies to sweep");
  if (rho_grid.empty()) throw ConfigError("empty rho grid");
  if (v_list.empty()) throw ConfigError("empty V list");
  for (double rho : rho_grid) internal::CheckRho(rho);
  for (std::size_t v : v_list) {
    if (v == 0) throw ConfigError("V must be positive");
  }
  const std::size_t max_v = *std::max_element(v_list.begin(), v_list.end());

  const Folksonomy train = RestrictToTraining(f, split);
  const Profile population = PopulationProfile(
      train, options.population_mode, options.smoothing);
  const std::size_t num_users = f.users().size();

  // Candidate pool, ascending by identifier.
  std::set<std::string> pool_set;
  std::vector<std::vector<std::string>> test_items(num_users);
  for (std::size_t u = 0; u < num_users; ++u) {
    test_items[u] = split.Items(f.users()[u], Part::kTest);
    pool_set.insert(test_items[u].begin(), test_items[u].end());
  }
  const std::vector<std::string> pool(pool_set.begin(), pool_set.end());
  auto pool_index = [&pool](const std::string& item) -> std::optional<std::size_t> {
    auto it = std::lower_bound(pool.begin(), pool.end(), item);
    if (it == pool.end() || *it != item) return std::nullopt;
    return static_cast<std::size_t>(it - pool.begin());
  };
  // Items without training annotations keep an all-zero vector and score 0.
  const std::size_t L = f.num_categories();
  std::vector<double> pool_vectors(pool.size() * L, 0.0);
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (std::optional<std::size_t> i = train.FindItem(pool[k])) {
      const Profile q = Profile::FromCounts(train.category_set(),
                                            train.ItemCounts(*i));
      std::copy(q.components().begin(), q.components().end(),
                pool_vectors.begin() + static_cast<long>(k * L));
    }
  }

  std::vector<ForgeryConfig> cells;
  for (const ForgeryConfig& s : strategies) {
    for (double rho : rho_grid) cells.push_back(s.WithRho(rho));
  }
  std::vector<std::vector<UserOutcome>> outcomes(
      cells.size(), std::vector<UserOutcome>(num_users));

  internal::ParallelFor(num_users, options.threads, [&](std::size_t u) {
    const std::string& user = f.users()[u];
    const std::optional<std::size_t> train_user = train.FindUser(user);
    if (!train_user) {
      throw ValidationError("user '" + user + "' has no training annotations");
    }
    const Profile actual =
        Profile::FromCounts(train.category_set(), train.UserCounts(*train_user));
    const double initial = KlDivergence(actual, population);

    std::vector<std::size_t> candidates;
    if (options.candidate_pool == CandidatePool::kGlobal) {
      candidates.resize(pool.size());
      std::iota(candidates.begin(), candidates.end(), std::size_t{0});
    } else {
      std::vector<bool> excluded(pool.size(), false);
      for (const std::string& item : split.Items(user, Part::kTrain)) {
        if (std::optional<std::size_t> k = pool_index(item)) excluded[*k] = true;
      }
      for (std::size_t k = 0; k < pool.size(); ++k) {
        if (!excluded[k]) candidates.push_back(k);
      }
    }
    std::vector<std::size_t> relevant;
    for (const std::string& item : test_items[u]) {
      relevant.push_back(*pool_index(item));
    }
    std::sort(relevant.begin(), relevant.end());

    std::vector<double> scores(candidates.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Profile apparent = ApparentProfile(actual, population, cells[c]);
      UserOutcome& out = outcomes[c][u];
      out.user = user;
      out.initial_risk = initial;
      out.final_risk = KlDivergence(apparent, population);
      out.test_size = relevant.size();
      out.hits.assign(v_list.size(), 0);
      if (relevant.empty()) continue;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        scores[k] = CosineSimilarity(
            apparent.components(),
            std::span<const double>(pool_vectors.data() + candidates[k] * L, L));
      }
      const std::vector<std::size_t> top = TopIndices(scores, max_v);
      for (std::size_t rank = 0; rank < top.size(); ++rank) {
        if (!std::binary_search(relevant.begin(), relevant.end(),
                                candidates[top[rank]])) {
          continue;
        }
        for (std::size_t k = 0; k < v_list.size(); ++k) {
          if (rank < v_list[k]) ++out.hits[k];
        }
      }
    }
  });

  SweepOutput output;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    output.results.push_back(Aggregate(cells[c].strategy(), cells[c].rho(),
                                       outcomes[c], v_list));
  }
  output.outcomes = std::move(outcomes);
  return output;
}

// Forgery-rate grid from a spec such as "0,0.1,0.5" or "0:1:0.05", or a
// comma-separated mix of both. Values are snapped to 1e-12, sorted, and
// deduplicated.
inline std::vector<double> ParseRhoGrid(const std::string& spec) {
  std::vector<double> grid;
  auto parse_number = [&spec](const std::string& token) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (token.empty() || consumed != token.size()) {
      throw ConfigError("bad number '" + token + "' in rho grid '" + spec +
                        "'");
    }
    return value;
  };
  auto snap = [](double x) { return std::round(x * 1e12) / 1e12; };
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string::npos) comma = spec.size();
    const std::string token = spec.substr(start, comma - start);
    start = comma + 1;
    if (token.find(':') == std::string::npos) {
      grid.push_back(snap(parse_number(token)));
      continue;
    }
    const std::size_t c1 = token.find(':');
    const std::size_t c2 = token.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      throw ConfigError("range '" + token + "' must be start:stop:step");
    }
    const double lo = parse_number(token.substr(0, c1));
    const double hi = parse_number(token.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_number(token.substr(c2 + 1));
    if (!(step > 0.0) || hi < lo) {
      throw ConfigError("range '" + token + "' needs step > 0 and stop >= start");
    }
    const auto steps = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= steps; ++k) {
      grid.push_back(snap(lo + static_cast<double>(k) * step));
    }
  }
  for (double rho : grid) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
      throw ConfigError("rho " + std::to_string(rho) + " outside [0, 1]");
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// 0 to 1 in steps of 0.05, plus 0 to 0.25 in steps of 0.0125.
inline constexpr const char* kDefaultRhoGrid = "0:1:0.05,0:0.25:0.0125";

// Fixed 12-significant-digit rendering used by every CSV writer.
inline std::string FormatNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  return buffer;
}

inline std::string SweepCsvHeader(std::span<const std::size_t> v_list) {
  std::string header =
      "strategy,rho,mean_initial_risk_bits,mean_final_risk_bits,"
      "mean_risk_reduction,frac_users_risk_increased";
  for (std::size_t v : v_list) header += ",p_at_" + std::to_string(v);
  header += ",num_users_evaluated,num_infinite_risk";
  return header;
}

inline void WriteSweepCsv(std::ostream& out,
                          std::span<const SweepResult> results,
                          std::span<const std::size_t> v_list) {
  out << SweepCsvHeader(v_list) << '\n';
  for (const SweepResult& r : results) {
    out << StrategyName(r.strategy) << ',' << FormatNumber(r.rho) << ','
        << FormatNumber(r.mean_initial_risk) << ','
        << FormatNumber(r.mean_final_risk) << ','
        << FormatNumber(r.mean_risk_reduction) << ','
        << FormatNumber(r.frac_users_risk_increased);
    for (std::size_t v : v_list) out << ',' << FormatNumber(r.PrecisionAt(v));
    out << ',' << r.num_users_evaluated << ',' << r.num_infinite_risk << '\n';
  }
}

inline nlohmann::json ToJson(const UserOutcome& o,
                             std::span<const std::size_t> v_list) {
  nlohmann::json hits = nlohmann::json::object();
  for (std::size_t k = 0; k < v_list.size(); ++k) {
    hits[std::to_string(v_list[k])] = o.hits[k];
  }
  auto number = [](double x) -> nlohmann::json {
    if (std::isfinite(x)) return x;
    return FormatNumber(x);
  };
  return {{"user", o.user},
          {"initial_risk_bits", number(o.initial_risk)},
          {"final_risk_bits", number(o.final_risk)},
          {"hits", hits},
          {"test_size", o.test_size}};
}

}  // namespace tagforge

#endif  // TAGFORGE_EVALUATION_HPP_
