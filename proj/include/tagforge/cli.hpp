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

#ifndef TAGFORGE_CLI_HPP_
#define TAGFORGE_CLI_HPP_

// Command-line front end: ingest, synth, sweep, report.
//
// Exit codes: 0 success, 2 configuration error, 3 data error (I/O,
// parsing, validation), 4 numeric error, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tagforge/errors.hpp"
#include "tagforge/evaluation.hpp"
#include "tagforge/folksonomy.hpp"
#include "tagforge/forgery.hpp"
#include "tagforge/profiles.hpp"
#include "tagforge/split.hpp"

namespace tagforge::cli {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

inline int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return kExitConfig;
    case ErrorKind::kValidation:
    case ErrorKind::kParse:
    case ErrorKind::kIo:
      return kExitData;
    case ErrorKind::kNumeric:
      return kExitNumeric;
  }
  return kExitOther;
}

// Everything a sweep run depends on.
struct RunConfig {
  std::string data_path;
  std::optional<SynthSpec> synth_spec;
  std::string categories_path;
  std::string tmn_dist_path;
  std::vector<Strategy> strategies = {Strategy::kOptimized, Strategy::kTmn,
                                      Strategy::kUniform};
  std::vector<double> rho_grid = ParseRhoGrid(kDefaultRhoGrid);
  std::uint64_t seed = 1;
  double split_fraction = 0.8;
  std::vector<std::size_t> top_v = {30, 50};
  std::string output_dir = ".";
  PopulationMode population_mode = PopulationMode::kTagWeighted;
  std::optional<double> smoothing_epsilon;
  CandidatePool candidate_pool = CandidatePool::kGlobal;
  std::size_t threads = 1;
  bool per_user_dump = false;
  bool verbose = false;
};

namespace internal {

inline std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    out.push_back(first == std::string::npos
                      ? std::string()
                      : token.substr(first, last - first + 1));
  }
  return out;
}

inline std::vector<Strategy> ParseStrategies(const std::string& s) {
  std::vector<Strategy> out;
  for (const std::string& name : SplitComma(s)) {
    const Strategy strategy = ParseStrategy(name);
    if (std::find(out.begin(), out.end(), strategy) != out.end()) {
      throw ConfigError("strategy '" + name + "' listed twice");
    }
    out.push_back(strategy);
  }
  if (out.empty()) throw ConfigError("no strategies given");
  return out;
}

inline std::vector<std::size_t> ParseTopList(const std::string& s) {
  std::vector<std::size_t> out;
  for (const std::string& token : SplitComma(s)) {
    std::size_t consumed = 0;
    long value = 0;
    try {
      value = std::stol(token, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (token.empty() || consumed != token.size() || value <= 0) {
      throw ConfigError("bad V '" + token + "' in --top");
    }
    out.push_back(static_cast<std::size_t>(value));
  }
  if (out.empty()) throw ConfigError("empty --top list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline PopulationMode ParsePopulationMode(const std::string& s) {
  if (s == "tag_weighted") return PopulationMode::kTagWeighted;
  if (s == "user_averaged") return PopulationMode::kUserAveraged;
  throw ConfigError("unknown population mode '" + s +
                    "' (expected tag_weighted or user_averaged)");
}

inline std::string PopulationModeName(PopulationMode mode) {
  return mode == PopulationMode::kTagWeighted ? "tag_weighted"
                                              : "user_averaged";
}

inline CandidatePool ParseCandidatePool(const std::string& s) {
  if (s == "global") return CandidatePool::kGlobal;
  if (s == "per-user") return CandidatePool::kPerUser;
  throw ConfigError("unknown candidate pool '" + s +
                    "' (expected global or per-user)");
}

inline double ParseDouble(const std::string& key, const std::string& text) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (text.empty() || consumed != text.size()) {
    throw ConfigError("bad number '" + text + "' for " + key);
  }
  return value;
}

inline std::size_t ParseCount(const std::string& key, const std::string& text) {
  const double value = ParseDouble(key, text);
  if (!(value >= 1.0) || value != std::floor(value)) {
    throw ConfigError(key + " must be a positive integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

// "users=200,items=2000,categories=11,per-user=100,concentration=0.3,
//  skew=2,seed=7"; omitted keys keep their SynthSpec defaults.
inline SynthSpec ParseSynthSpec(const std::string& text, std::uint64_t seed) {
  SynthSpec spec;
  spec.seed = seed;
  for (const std::string& field : SplitComma(text)) {
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("synth field '" + field + "' is not key=value");
    }
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "users") {
      spec.num_users = ParseCount(key, value);
    } else if (key == "items") {
      spec.num_items = ParseCount(key, value);
    } else if (key == "categories") {
      spec.num_categories = ParseCount(key, value);
    } else if (key == "per-user") {
      spec.annotations_per_user = ParseCount(key, value);
    } else if (key == "concentration") {
      spec.concentration = ParseDouble(key, value);
    } else if (key == "skew") {
      spec.skew = ParseDouble(key, value);
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else {
      throw ConfigError("unknown synth field '" + key + "'");
    }
  }
  return spec;
}

inline nlohmann::json SynthSpecJson(const SynthSpec& s) {
  return {{"users", s.num_users},
          {"items", s.num_items},
          {"categories", s.num_categories},
          {"per_user", s.annotations_per_user},
          {"concentration", s.concentration},
          {"skew", s.skew},
          {"seed", s.seed}};
}

inline std::string Hex(std::uint64_t value) {
  char buffer[20];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

inline void EnsureDirectory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

inline std::string JoinPath(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

inline void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out = tagforge::internal::OpenForWrite(path);
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

// Reads a flat `key = value` file. '#' starts a comment line.
inline std::vector<std::pair<std::string, std::string>> ReadConfigFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_number = 0;
  auto trim = [](const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_number;
    const std::string trimmed = trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": expected 'key = value'");
    }
    std::string key = trim(trimmed.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    entries.emplace_back(key, trim(trimmed.substr(eq + 1)));
  }
  return entries;
}

// Config entries become leading `--key=value` arguments; options take
// their last occurrence, so explicit flags override the file.
inline std::vector<std::string> ExpandConfig(std::vector<std::string> args) {
  std::optional<std::string> config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config_path || rest.size() < 2) return rest;
  std::vector<std::string> expanded(rest.begin(), rest.begin() + 2);
  for (const auto& [key, value] : ReadConfigFile(*config_path)) {
    expanded.push_back("--" + key + "=" + value);
  }
  expanded.insert(expanded.end(), rest.begin() + 2, rest.end());
  return expanded;
}

inline Folksonomy LoadDataset(const RunConfig& config) {
  if (config.synth_spec) return Synthesize(*config.synth_spec);
  return LoadAnnotations(config.data_path,
                         LoadCategories(config.categories_path));
}

inline void RequireExactlyOneSource(const RunConfig& config) {
  const bool has_data = !config.data_path.empty();
  const bool has_synth = config.synth_spec.has_value();
  if (has_data == has_synth) {
    throw ConfigError("give exactly one of --data or --synth");
  }
  if (has_data && config.categories_path.empty()) {
    throw ConfigError("--data requires --categories");
  }
}

}  // namespace internal

inline StatsReport CmdIngest(const RunConfig& config) {
  if (config.data_path.empty() || config.categories_path.empty()) {
    throw ConfigError("ingest requires --data and --categories");
  }
  const Folksonomy f = internal::LoadDataset(config);
  const StatsReport stats = DatasetStats(f);
  internal::EnsureDirectory(config.output_dir);
  nlohmann::json json = ToJson(stats);
  json["dataset_hash"] = internal::Hex(DatasetFingerprint(f));
  internal::WriteText(internal::JoinPath(config.output_dir, "stats.json"),
                      json.dump(2) + "\n");
  return stats;
}

// Writes annotations.tsv, categories.txt and stats.json.
inline StatsReport CmdSynth(const SynthSpec& spec,
                            const std::string& output_dir) {
  const Folksonomy f = Synthesize(spec);
  internal::EnsureDirectory(output_dir);
  WriteAnnotations(f, internal::JoinPath(output_dir, "annotations.tsv"));
  WriteCategories(f.categories(),
                  internal::JoinPath(output_dir, "categories.txt"));
  const StatsReport stats = DatasetStats(f);
  nlohmann::json json = ToJson(stats);
  json["dataset_hash"] = internal::Hex(DatasetFingerprint(f));
  json["synth"] = internal::SynthSpecJson(spec);
  internal::WriteText(internal::JoinPath(output_dir, "stats.json"),
                      json.dump(2) + "\n");
  return stats;
}

// Runs the experiment grid; writes sweep.csv, manifest.json and, when
// requested, per_user.jsonl.
inline SweepOutput CmdSweep(const RunConfig& config) {
  internal::RequireExactlyOneSource(config);
  if (!(config.split_fraction > 0.0 && config.split_fraction < 1.0)) {
    throw ConfigError("--split must lie in (0, 1)");
  }
  if (config.threads == 0) throw ConfigError("--threads must be >= 1");
  if (config.smoothing_epsilon && !(*config.smoothing_epsilon > 0.0)) {
    throw ConfigError("--smoothing must be positive");
  }
  const Folksonomy f = internal::LoadDataset(config);

  std::optional<Profile> tmn;
  const bool wants_tmn =
      std::find(config.strategies.begin(), config.strategies.end(),
                Strategy::kTmn) != config.strategies.end();
  if (wants_tmn) {
    if (config.tmn_dist_path.empty()) {
      std::cerr << "warning: no --tmn-dist given; the tmn strategy uses the "
                   "uniform placeholder distribution\n";
      tmn = Profile::Uniform(f.category_set());
    } else {
      tmn = LoadTmnDistribution(config.tmn_dist_path, f.category_set());
    }
  }
  std::vector<ForgeryConfig> strategies;
  for (Strategy s : config.strategies) {
    strategies.emplace_back(s, 0.0, s == Strategy::kTmn ? tmn : std::nullopt);
  }

  if (config.verbose) {
    std::cout << "dataset: " << f.users().size() << " users, "
              << f.items().size() << " items, " << f.num_annotations()
              << " annotations\n";
  }
  const SplitAssignment split = MakeSplit(f, config.seed, config.split_fraction);
  SweepOptions options;
  options.population_mode = config.population_mode;
  options.smoothing = config.smoothing_epsilon;
  options.candidate_pool = config.candidate_pool;
  options.threads = config.threads;
  SweepOutput output = RunSweep(f, split, strategies, config.rho_grid,
                                config.top_v, options);
  if (config.verbose) {
    std::cout << "sweep: " << output.results.size() << " cells done\n";
  }

  internal::EnsureDirectory(config.output_dir);
  {
    std::ostringstream csv;
    WriteSweepCsv(csv, output.results, config.top_v);
    internal::WriteText(internal::JoinPath(config.output_dir, "sweep.csv"),
                        csv.str());
  }
  if (config.per_user_dump) {
    std::ostringstream jsonl;
    for (std::size_t c = 0; c < output.results.size(); ++c) {
      for (const UserOutcome& o : output.outcomes[c]) {
        nlohmann::json row = ToJson(o, config.top_v);
        row["strategy"] = StrategyName(output.results[c].strategy);
        row["rho"] = output.results[c].rho;
        jsonl << row.dump() << '\n';
      }
    }
    internal::WriteText(internal::JoinPath(config.output_dir, "per_user.jsonl"),
                        jsonl.str());
  }

  nlohmann::json manifest;
  manifest["tool"] = "tagforge";
  manifest["version"] = kToolVersion;
  manifest["dataset_hash"] = internal::Hex(DatasetFingerprint(f));
  if (config.synth_spec) {
    manifest["dataset"] = {{"synth", internal::SynthSpecJson(*config.synth_spec)}};
  } else {
    manifest["dataset"] = {{"data", config.data_path},
                           {"categories", config.categories_path}};
  }
  manifest["seed"] = config.seed;
  manifest["split_fraction"] = config.split_fraction;
  manifest["rho_grid"] = config.rho_grid;
  manifest["top_v"] = config.top_v;
  manifest["risk_units"] = "bits (log base 2)";
  manifest["population_mode"] = internal::PopulationModeName(config.population_mode);
  manifest["smoothing_epsilon"] =
      config.smoothing_epsilon ? nlohmann::json(*config.smoothing_epsilon)
                               : nlohmann::json(nullptr);
  manifest["candidate_pool"] =
      config.candidate_pool == CandidatePool::kGlobal ? "global" : "per-user";
  nlohmann::json strategy_json = nlohmann::json::array();
  for (const ForgeryConfig& s : strategies) {
    nlohmann::json entry = {{"name", StrategyName(s.strategy())}};
    if (s.tmn_distribution()) {
      entry["tmn_distribution"] = ToJson(*s.tmn_distribution());
      entry["tmn_source"] =
          config.tmn_dist_path.empty() ? "uniform placeholder" : config.tmn_dist_path;
    }
    strategy_json.push_back(entry);
  }
  manifest["strategies"] = strategy_json;
  internal::WriteText(internal::JoinPath(config.output_dir, "manifest.json"),
                      manifest.dump(2) + "\n");
  return output;
}

// Splits a sweep CSV into one tidy file per figure family:
// risk_vs_rho.csv, utility_vs_rho.csv, risk_increase_vs_rho.csv.
// Returns the number of data rows.
inline std::size_t CmdReport(const std::string& sweep_csv,
                             const std::string& output_dir) {
  std::ifstream in = tagforge::internal::OpenForRead(sweep_csv);
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("sweep CSV '" + sweep_csv + "' is empty");
  }
  tagforge::internal::StripCarriageReturn(line);
  const std::vector<std::string> header = internal::SplitComma(line);
  const std::vector<std::string> leading = {
      "strategy", "rho", "mean_initial_risk_bits", "mean_final_risk_bits",
      "mean_risk_reduction", "frac_users_risk_increased"};
  const bool schema_ok =
      header.size() >= leading.size() + 3 &&
      std::equal(leading.begin(), leading.end(), header.begin()) &&
      header[header.size() - 2] == "num_users_evaluated" &&
      header.back() == "num_infinite_risk" &&
      std::all_of(header.begin() + static_cast<long>(leading.size()),
                  header.end() - 2, [](const std::string& h) {
                    return h.rfind("p_at_", 0) == 0;
                  });
  if (!schema_ok) {
    throw ValidationError("'" + sweep_csv + "' does not follow the sweep schema");
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    tagforge::internal::StripCarriageReturn(line);
    if (line.empty()) continue;
    std::vector<std::string> fields = internal::SplitComma(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " columns, found " + std::to_string(fields.size()),
                       line_number);
    }
    ParseStrategy(fields[0]);
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) {
    throw ValidationError("sweep CSV '" + sweep_csv + "' has no data rows");
  }

  auto emit = [&](const std::string& name, const std::vector<std::size_t>& cols) {
    std::string text;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      text += (k ? "," : "") + header[cols[k]];
    }
    text += '\n';
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < cols.size(); ++k) {
        text += (k ? "," : "") + row[cols[k]];
      }
      text += '\n';
    }
    internal::WriteText(internal::JoinPath(output_dir, name), text);
  };
  internal::EnsureDirectory(output_dir);
  const std::size_t n = header.size();
  emit("risk_vs_rho.csv", {0, 1, 2, 3, 4, n - 1});
  std::vector<std::size_t> utility = {0, 1};
  for (std::size_t k = leading.size(); k < n - 2; ++k) utility.push_back(k);
  utility.push_back(n - 2);
  emit("utility_vs_rho.csv", utility);
  emit("risk_increase_vs_rho.csv", {0, 1, 5});
  return rows.size();
}

// Entry point shared by the tagforge binary and the tests.
inline int Main(std::vector<std::string> args) {
  try {
    args = internal::ExpandConfig(std::move(args));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  }

  CLI::App app{"tagforge: tag-forgery privacy/utility evaluation"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--config", "flat key = value file; flags override it");

  RunConfig config;
  std::string strategies = "optimized,tmn,uniform";
  std::string rho_grid = kDefaultRhoGrid;
  std::string top = "30,50";
  std::string population_mode = "tag_weighted";
  std::string candidate_pool = "global";
  std::string synth;
  double smoothing = 0.0;
  std::string report_input;

  CLI::App* ingest = app.add_subcommand("ingest", "load a dataset and write stats.json");
  ingest->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  ingest->add_option("--data", config.data_path, "annotation TSV")->required();
  ingest->add_option("--categories", config.categories_path, "category file")->required();
  ingest->add_option("--out", config.output_dir, "output directory");

  SynthSpec synth_spec;
  CLI::App* synth_cmd = app.add_subcommand("synth", "write a synthetic folksonomy");
  synth_cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  synth_cmd->add_option("--users", synth_spec.num_users)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--items", synth_spec.num_items)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--num-categories", synth_spec.num_categories)->check(CLI::Range(2, 1 << 20));
  synth_cmd->add_option("--per-user", synth_spec.annotations_per_user)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--concentration", synth_spec.concentration)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--skew", synth_spec.skew)->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", synth_spec.seed);
  synth_cmd->add_option("--out", config.output_dir, "output directory");

  CLI::App* sweep = app.add_subcommand("sweep", "run the privacy/utility sweep");
  sweep->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sweep->add_option("--data", config.data_path, "annotation TSV");
  sweep->add_option("--synth", synth, "synthetic dataset, e.g. users=200,items=2000,concentration=0.3");
  sweep->add_option("--categories", config.categories_path, "category file");
  sweep->add_option("--tmn-dist", config.tmn_dist_path, "TMN distribution (label<TAB>weight)");
  sweep->add_option("--strategies", strategies, "comma list of optimized,tmn,uniform");
  sweep->add_option("--rho-grid", rho_grid, "comma list and/or start:stop:step ranges");
  sweep->add_option("--seed", config.seed, "split (and default synth) seed");
  sweep->add_option("--split", config.split_fraction, "training fraction per user");
  sweep->add_option("--top", top, "comma list of V");
  sweep->add_option("--out", config.output_dir, "output directory");
  sweep->add_option("--population-mode", population_mode, "tag_weighted or user_averaged");
  CLI::Option* smoothing_opt =
      sweep->add_option("--smoothing", smoothing, "additive epsilon on the population profile");
  sweep->add_option("--candidate-pool", candidate_pool, "global or per-user");
  sweep->add_option("--threads", config.threads, "worker threads");
  sweep->add_flag("--per-user-dump", config.per_user_dump, "also write per_user.jsonl");
  sweep->add_flag("--verbose", config.verbose, "progress on stdout");

  CLI::App* report = app.add_subcommand("report", "split a sweep CSV into figure data files");
  report->add_option("sweep_csv", report_input, "sweep.csv")->required();
  report->add_option("--out", config.output_dir, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*ingest) {
      CmdIngest(config);
    } else if (*synth_cmd) {
      CmdSynth(synth_spec, config.output_dir);
    } else if (*sweep) {
      config.strategies = internal::ParseStrategies(strategies);
      config.rho_grid = ParseRhoGrid(rho_grid);
      config.top_v = internal::ParseTopList(top);
      config.population_mode = internal::ParsePopulationMode(population_mode);
      config.candidate_pool = internal::ParseCandidatePool(candidate_pool);
      if (smoothing_opt->count() > 0) config.smoothing_epsilon = smoothing;
      if (!synth.empty()) {
        config.synth_spec = internal::ParseSynthSpec(synth, config.seed);
      }
      CmdSweep(config);
    } else if (*report) {
      CmdReport(report_input, config.output_dir);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOk;
}

}  // namespace tagforge::cli

#endif  // TAGFORGE_CLI_HPP_
