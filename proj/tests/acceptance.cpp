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

// Acceptance suite. Prints one PASS / FAIL / SKIPPED line per criterion
// and exits non-zero if any criterion fails.
//
// Criterion 6 needs the HetRec 2011 Delicious data mapped to 11 first-level
// categories. Point TAGFORGE_HETREC_DATA at the annotation TSV and
// TAGFORGE_HETREC_CATEGORIES at the category file to enable it.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tagforge/cli.hpp"
#include "tagforge/tagforge.hpp"
#include "test_util.hpp"

namespace tagforge::acceptance {
namespace {

using ::tagforge::testing::Categories;
using ::tagforge::testing::RandomPmf;
using ::tagforge::testing::RandomProfile;

enum class Verdict { kPass, kFail, kSkipped };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome Pass(std::string detail) { return {Verdict::kPass, std::move(detail)}; }
Outcome Fail(std::string detail) { return {Verdict::kFail, std::move(detail)}; }

std::string Num(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

// The desk-scale stand-in for the Delicious data: 200 users, 2000 items,
// 11 categories, Dirichlet concentration 0.3. The base measure is skewed
// (Zipf exponent 2) so that, as in real folksonomies, the population
// profile is far from uniform.
SynthSpec AcceptanceSynthSpec() {
  SynthSpec spec;
  spec.num_users = 200;
  spec.num_items = 2000;
  spec.num_categories = 11;
  spec.annotations_per_user = 100;
  spec.concentration = 0.3;
  spec.skew = 2.0;
  spec.seed = 20240611;
  return spec;
}
constexpr std::uint64_t kSplitSeed = 7;
constexpr const char* kAcceptanceSynthFlag =
    "users=200,items=2000,categories=11,per-user=100,concentration=0.3,"
    "skew=2,seed=20240611";

double Objective(const Profile& p, const Profile& pop, double rho,
                 std::span<const double> r) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = (1 - rho) * p[i] + rho * r[i];
    if (t > 0) d += t * std::log2(t / pop[i]);
  }
  return d;
}

// 1. Optimizer correctness.
Outcome OptimizerCorrectness() {
  std::mt19937_64 gen(1001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_gap = -INFINITY;
  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t L = 2 + static_cast<std::size_t>(gen() % 7);  // 2..8
    const auto cats = Categories(L);
    const Profile p = RandomProfile(cats, gen, 0.25);
    const Profile pop = RandomProfile(cats, gen);
    const double rho = unit(gen);
    const OptimalForgery result = SolveOptimalForgery(p, pop, rho);
    if (!VerifyKkt(result, p, pop, rho)) {
      return Fail("KKT check failed on instance " + std::to_string(instance));
    }
    double best_sampled = INFINITY;
    for (int k = 0; k < 10000; ++k) {
      // Mix dense and sparse random strategies.
      const std::vector<double> r = RandomPmf(L, gen, k % 2 ? 0.4 : 0.0);
      best_sampled = std::min(best_sampled, Objective(p, pop, rho, r));
    }
    worst_gap = std::max(worst_gap, result.objective - best_sampled);
    if (result.objective > best_sampled + 1e-9) {
      return Fail("instance " + std::to_string(instance) + ": objective " +
                  Num(result.objective) + " > sampled " + Num(best_sampled));
    }
  }
  return Pass("100 instances, max(objective - best sampled) = " + Num(worst_gap));
}

struct SyntheticRun {
  Folksonomy f;
  SplitAssignment split;
  Profile population;
  Profile w;
};

SyntheticRun MakeSyntheticRun() {
  Folksonomy f = Synthesize(AcceptanceSynthSpec());
  SplitAssignment split = MakeSplit(f, kSplitSeed);
  Profile population = PopulationProfile(RestrictToTraining(f, split));
  // TMN distribution with 0.8 on the least popular category.
  std::size_t rarest = 0;
  for (std::size_t l = 1; l < population.size(); ++l) {
    if (population[l] < population[rarest]) rarest = l;
  }
  std::vector<double> weights(f.num_categories(), 0.02);
  weights[rarest] = 0.8;
  Profile w = Profile::FromWeights(f.category_set(), weights);
  return {std::move(f), std::move(split), std::move(population), std::move(w)};
}

// 2. rho = 1 limit.
Outcome FullRateLimit(const SyntheticRun& run) {
  for (double x : run.population.components()) {
    if (!(x > 0.0)) return Fail("population profile is not strictly positive");
  }
  const std::vector<ForgeryConfig> strategies = {
      ForgeryConfig(Strategy::kOptimized, 0.0)};
  const std::vector<double> grid = {1.0};
  const std::vector<std::size_t> v = {30, 50};
  const SweepOutput out = RunSweep(run.f, run.split, strategies, grid, v);
  const double risk = out.results[0].mean_final_risk;
  if (!(risk <= 1e-9)) return Fail("mean final risk " + Num(risk) + " > 1e-9");
  return Pass("mean final risk at rho = 1: " + Num(risk) + " bits");
}

// 3. Monotone optimized risk over the 21-point grid.
Outcome Monotonicity(const SyntheticRun& run) {
  const std::vector<ForgeryConfig> strategies = {
      ForgeryConfig(Strategy::kOptimized, 0.0)};
  const std::vector<double> grid = ParseRhoGrid("0:1:0.05");
  if (grid.size() != 21) return Fail("grid does not have 21 points");
  const std::vector<std::size_t> v = {30, 50};
  const SweepOutput out = RunSweep(run.f, run.split, strategies, grid, v);
  double max_step = -INFINITY;
  for (std::size_t k = 1; k < out.results.size(); ++k) {
    const double step =
        out.results[k].mean_final_risk - out.results[k - 1].mean_final_risk;
    max_step = std::max(max_step, step);
    if (step > 1e-9) {
      return Fail("risk rises by " + Num(step) + " at rho = " +
                  Num(out.results[k].rho));
    }
  }
  return Pass("R(0) = " + Num(out.results.front().mean_final_risk) +
              " -> R(1) = " + Num(out.results.back().mean_final_risk) +
              " bits, max consecutive difference " + Num(max_step));
}

// 4. TMN and uniform forgery backfire at high rates.
Outcome AdverseStrategies(const SyntheticRun& run) {
  const std::vector<ForgeryConfig> strategies = {
      ForgeryConfig(Strategy::kTmn, 0.0, run.w),
      ForgeryConfig(Strategy::kUniform, 0.0)};
  const std::vector<double> grid = {0.05, 1.0};
  const std::vector<std::size_t> v = {30, 50};
  const SweepOutput out = RunSweep(run.f, run.split, strategies, grid, v);
  std::string detail;
  bool ok = true;
  for (std::size_t s = 0; s < 2; ++s) {
    if (s > 0) detail += "; ";
    const SweepResult& low = out.results[2 * s];
    const SweepResult& high = out.results[2 * s + 1];
    const double increased = CountRiskIncreases(out.outcomes[2 * s + 1]);
    const bool pass = high.mean_final_risk > low.mean_final_risk && increased > 0.5;
    ok = ok && pass;
    detail += std::string(StrategyName(high.strategy)) + ": R(0.05) = " +
              Num(low.mean_final_risk) + ", R(1) = " + Num(high.mean_final_risk) +
              ", increased at rho=1: " + Num(increased);
  }
  return ok ? Pass(detail) : Fail(detail);
}

// 5. Utility sanity on a hand-checked 5-user fixture.
//
// Training annotations (category A = 0, B = 1) and test sets:
//   u1: a A, b A          -> (1, 0)      test {c}
//   u2: c B, d B          -> (0, 1)      test {a}
//   u3: a A, c B          -> (.5, .5)    test {b, d}
//   u4: b A, b A, d B     -> (2/3, 1/3)  test {e}
//   u5: e A               -> (1, 0)      no test items
// Item profiles: a, b, e = (1, 0); c, d = (0, 1). Rankings (ties by id):
//   u1: a b e c d   u2: c d a b e   u3: a b c d e   u4: a b e c d
// Hits: P@2 = (0 + 0 + 1/2 + 0) / 4 = 0.125,
//       P@3 = (0 + 1/3 + 1/3 + 1/3) / 4 = 0.25,
//       P@30 = (1 + 1 + 2 + 1) / (30 * 4) = 1/24, P@50 = 5 / 200 = 0.025.
Outcome UtilitySanity() {
  const auto cats = MakeCategorySet({"A", "B"});
  struct Row {
    const char* user;
    const char* item;
    std::size_t category;
    Part part;
  };
  const std::vector<Row> rows = {
      {"u1", "a", 0, Part::kTrain}, {"u1", "b", 0, Part::kTrain},
      {"u1", "c", 1, Part::kTest},  {"u2", "c", 1, Part::kTrain},
      {"u2", "d", 1, Part::kTrain}, {"u2", "a", 0, Part::kTest},
      {"u3", "a", 0, Part::kTrain}, {"u3", "c", 1, Part::kTrain},
      {"u3", "b", 0, Part::kTest},  {"u3", "d", 1, Part::kTest},
      {"u4", "b", 0, Part::kTrain}, {"u4", "b", 0, Part::kTrain},
      {"u4", "d", 1, Part::kTrain}, {"u4", "e", 0, Part::kTest},
      {"u5", "e", 0, Part::kTrain}};
  std::vector<Annotation> annotations;
  SplitAssignment split;
  for (const Row& r : rows) {
    annotations.push_back({r.user, r.item, r.category});
    split.Set(r.user, r.item, r.part);
  }
  const Folksonomy f(cats, annotations);
  const Profile w = Profile::FromComponents(cats, {0.8, 0.2});
  const std::vector<ForgeryConfig> strategies = {
      ForgeryConfig(Strategy::kOptimized, 0.0),
      ForgeryConfig(Strategy::kTmn, 0.0, w),
      ForgeryConfig(Strategy::kUniform, 0.0)};
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  const std::vector<std::size_t> v = {2, 3, 30, 50};
  const SweepOutput out = RunSweep(f, split, strategies, grid, v);

  const std::vector<std::pair<std::size_t, double>> expected = {
      {2, 0.125}, {3, 0.25}, {30, 1.0 / 24.0}, {50, 0.025}};
  for (std::size_t s = 0; s < 3; ++s) {
    const SweepResult& r = out.results[3 * s];  // rho = 0
    if (r.num_users_evaluated != 4) return Fail("expected 4 evaluated users");
    for (const auto& [vv, value] : expected) {
      if (r.PrecisionAt(vv) != value) {
        return Fail(std::string(StrategyName(r.strategy)) + " P@" +
                    std::to_string(vv) + " = " + Num(r.PrecisionAt(vv)) +
                    ", hand count " + Num(value));
      }
    }
    if (r.PrecisionAt(30) != out.results[0].PrecisionAt(30) ||
        r.PrecisionAt(50) != out.results[0].PrecisionAt(50)) {
      return Fail("P@V at rho = 0 differs between strategies");
    }
  }
  for (const SweepResult& r : out.results) {
    for (const auto& [vv, value] : r.precision) {
      if (!(value >= 0.0 && value <= 1.0)) return Fail("P@V outside [0, 1]");
    }
  }
  return Pass("P@2 = 0.125, P@3 = 0.25, P@30 = 1/24, P@50 = 0.025 for all "
              "three strategies at rho = 0");
}

// 6. Real-data reproduction (optional).
Outcome DatasetReproduction() {
  const char* data = std::getenv("TAGFORGE_HETREC_DATA");
  const char* categories = std::getenv("TAGFORGE_HETREC_CATEGORIES");
  if (!data || !categories || !std::filesystem::exists(data) ||
      !std::filesystem::exists(categories)) {
    return {Verdict::kSkipped,
            "HetRec Delicious data not found (set TAGFORGE_HETREC_DATA and "
            "TAGFORGE_HETREC_CATEGORIES)"};
  }
  const Folksonomy f = LoadAnnotations(data, LoadCategories(categories));
  const StatsReport s = DatasetStats(f);
  std::string detail = "users " + std::to_string(s.num_users) + ", items " +
                       std::to_string(s.num_items) + ", categories " +
                       std::to_string(s.num_categories) + ", tuples " +
                       std::to_string(s.num_item_category_tuples);
  if (s.num_users != 1867 || s.num_items != 69226 || s.num_categories != 11 ||
      s.num_item_category_tuples != 98998) {
    return Fail(detail + " (expected 1867 / 69226 / 11 / 98998)");
  }
  const SplitAssignment split = MakeSplit(f, kSplitSeed);
  const std::vector<ForgeryConfig> strategies = {
      ForgeryConfig(Strategy::kOptimized, 0.0)};
  const std::vector<double> grid = {0.0, 0.1};
  const std::vector<std::size_t> v = {30, 50};
  SweepOptions options;
  options.threads = std::max(1u, std::thread::hardware_concurrency());
  const SweepOutput out = RunSweep(f, split, strategies, grid, v, options);
  const double reduction = out.results[1].mean_risk_reduction;
  detail += "; reduction at rho=0.1: " + Num(reduction);
  bool ok = reduction >= 0.24 && reduction <= 0.44;
  for (std::size_t vv : v) {
    const double p0 = out.results[0].PrecisionAt(vv);
    const double p1 = out.results[1].PrecisionAt(vv);
    const double degradation = p0 > 0 ? (p0 - p1) / p0 : NAN;
    detail += ", P@" + std::to_string(vv) + " degradation " + Num(degradation);
    ok = ok && degradation >= 0.0 && degradation <= 0.2;
  }
  return ok ? Pass(detail) : Fail(detail);
}

// 7. Metric identities.
Outcome MetricIdentities() {
  std::mt19937_64 gen(7007);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t L = 2 + static_cast<std::size_t>(gen() % 15);
    const auto cats = Categories(L);
    const Profile p = RandomProfile(cats, gen, 0.2);
    const Profile q = RandomProfile(cats, gen);
    if (KlDivergence(p, q) < 0.0) return Fail("negative divergence");
    if (KlDivergence(p, p) != 0.0) return Fail("D(p||p) != 0");
    const double gap = std::abs(Entropy(p) - (std::log2(static_cast<double>(L)) -
                                              KlDivergence(p, Profile::Uniform(cats))));
    worst = std::max(worst, gap);
    if (gap > 1e-12) return Fail("entropy identity off by " + Num(gap));
  }
  return Pass("1000 profiles, max entropy-identity error " + Num(worst));
}

// 8. Byte-identical CLI output, two runs each at 1 and 8 threads, on the
// criterion 3 workload. Each run must take less than twice criterion 3.
Outcome EndToEndDeterminism(double criterion3_seconds) {
  using Clock = std::chrono::steady_clock;
  testing::TempDir dir;
  std::vector<std::string> outputs;
  double slowest = 0.0;
  for (const char* threads : {"1", "1", "8", "8"}) {
    const std::string out = dir.File("run" + std::to_string(outputs.size()));
    const auto start = Clock::now();
    const int code = cli::Main(
        {"tagforge", "sweep", "--synth", kAcceptanceSynthFlag, "--strategies",
         "optimized", "--rho-grid", "0:1:0.05", "--seed", "7", "--threads",
         threads, "--out", out});
    slowest = std::max(
        slowest, std::chrono::duration<double>(Clock::now() - start).count());
    if (code != 0) return Fail("sweep exited with " + std::to_string(code));
    outputs.push_back(testing::ReadFile(out + "/sweep.csv"));
  }
  if (outputs[0].empty()) return Fail("empty CSV");
  for (const std::string& csv : outputs) {
    if (csv != outputs[0]) return Fail("CSV differs between runs");
  }
  const std::string detail = "4 runs (threads 1, 1, 8, 8), " +
                             std::to_string(outputs[0].size()) +
                             " identical bytes, slowest run " + Num(slowest) +
                             " s vs limit " + Num(2.0 * criterion3_seconds) + " s";
  return slowest < 2.0 * criterion3_seconds ? Pass(detail) : Fail(detail);
}

struct Criterion {
  int id;
  std::string name;
  double time_limit_seconds;  // <= 0: no limit
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace tagforge::acceptance

int main() {
  using namespace tagforge::acceptance;
  using Clock = std::chrono::steady_clock;

  const auto setup_start = Clock::now();
  const SyntheticRun run = MakeSyntheticRun();
  const double setup_seconds =
      std::chrono::duration<double>(Clock::now() - setup_start).count();

  // Criterion 3 is timed including synthesis and split, the same work a
  // CLI sweep does.
  double criterion3_seconds = 60.0;
  const std::vector<Criterion> criteria = {
      {1, "optimizer correctness", 10.0, OptimizerCorrectness},
      {2, "rho = 1 limit", 0.0, [&] { return FullRateLimit(run); }},
      {3, "monotone optimized risk", 60.0, [&] { return Monotonicity(run); }},
      {4, "TMN/uniform backfire", 60.0, [&] { return AdverseStrategies(run); }},
      {5, "utility sanity", 5.0, UtilitySanity},
      {6, "dataset reproduction", 0.0, DatasetReproduction},
      {7, "metric identities", 5.0, MetricIdentities},
      {8, "end-to-end determinism", 0.0,
       [&] { return EndToEndDeterminism(criterion3_seconds); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = Fail(std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.id == 3) criterion3_seconds = seconds + setup_seconds;
    const double limit = c.time_limit_seconds;
    if (outcome.verdict == Verdict::kPass && limit > 0.0 && seconds > limit) {
      outcome = Fail(outcome.detail + " [too slow: " + Num(seconds) + " s > " +
                     Num(limit) + " s]");
    }
    const char* tag = outcome.verdict == Verdict::kPass   ? "PASS"
                      : outcome.verdict == Verdict::kFail ? "FAIL"
                                                          : "SKIPPED";
    if (outcome.verdict == Verdict::kFail) ++failures;
    std::cout << "[" << tag << "] criterion " << c.id << " (" << c.name << "): "
              << outcome.detail << " (" << Num(seconds) << " s)" << std::endl;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria passed or skipped"
                              : "acceptance: " + std::to_string(failures) +
                                    " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
