// Copyright 2026 The OMG-RFTL Authors.
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

#ifndef OMG_HARNESS_H_
#define OMG_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omg/adversaries.h"
#include "omg/learners.h"
#include "omg/metrics.h"

namespace omg {

inline constexpr const char* kToolVersion = "1.0.0";

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericFailure = 3;

enum class Algorithm { kOmgRftl, kBanditOmgRftl, kHedgeSelfplay, kSpRftlCustom };

const char* AlgorithmName(Algorithm a);
Algorithm ParseAlgorithm(const std::string& name);

enum class OutputFormat { kCsv, kJsonl, kBoth };

// Overrides from the [params] section. Unset fields fall back to the
// algorithm's default schedule.
struct ParamOverrides {
  std::optional<Schedule> schedule;
  std::optional<double> eta;
  std::optional<double> floor;
  std::optional<double> eta_h;
};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kOmgRftl;
  // horizon and seed are filled in per cell.
  AdversarySpec adversary;
  ParamOverrides params;
  std::vector<long> horizons;
  std::vector<std::uint64_t> seeds;
  double solver_eps = kComparatorEps;
  std::string output_dir = "omg_out";
  OutputFormat output_format = OutputFormat::kCsv;
  bool ne_regret_running = false;
  // Raw text the config was parsed from; hashed into the manifest.
  std::string source_text;

  // Throws ConfigError on any inconsistency.
  void Validate() const;
};

// Parses the key = value format with [adversary] and [params] sections.
// Errors name the source, line and field.
ExperimentConfig ParseConfig(std::string_view text,
                             std::string_view source_name = "<config>");
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Learner parameters the cell (algorithm, T) will use.
LearnerParams ResolveParams(const ExperimentConfig& config, long horizon);

struct CellResult {
  long horizon = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::string warning;

  std::vector<RoundSummary> rounds;
  // Filled when config.ne_regret_running is set.
  std::vector<double> ne_regret_running;

  double comparator = 0.0;
  // Comparator over the learner's floored simplexes; NaN without a floor.
  double comparator_restricted = 0.0;
  double ne_regret = 0.0;
  double ne_regret_mixed = 0.0;
  IndividualRegrets regrets;
  double cum_payoff = 0.0;
  double cum_mixed_payoff = 0.0;
  Matrix matrix_sum;

  double eta = 0.0;
  double floor = 0.0;
  // Last iterate (x_{T+1}, y_{T+1}).
  std::optional<MixedStrategy> final_x;
  std::optional<MixedStrategy> final_y;

  // Per-round iterate-movement check of full-information learners.
  long stability_checks = 0;
  long stability_violations = 0;
  double worst_stability_ratio = 0.0;
  double mean_inner_iterations = 0.0;

  std::int64_t wall_ns = 0;
};

// Runs one (T, seed) cell. Generators are keyed by (seed, T), so a cell does
// not depend on which other cells the config contains. Solver failures are
// reported through ok/error rather than thrown.
CellResult RunCell(const ExperimentConfig& config, long horizon,
                   std::uint64_t seed);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  int jobs = 1;
  std::optional<std::uint64_t> seed_override;
  bool record_timing = false;
};

struct RunOutcome {
  std::filesystem::path out_dir;
  std::vector<CellResult> cells;
  int failed_cells = 0;
};

// Every (T, seed) cell of the config, in config order, on a pool of
// `jobs` threads.
std::vector<CellResult> RunAllCells(const ExperimentConfig& config,
                                    const RunOptions& options);

// Runs all cells and writes results.csv / results.jsonl and manifest.json.
RunOutcome Run(const ExperimentConfig& config, const RunOptions& options);

// One CSV line per round plus a summary line per cell, header first.
// wall_ns is written as 0 unless record_timing is set.
std::vector<std::vector<std::string>> ResultTable(
    const ExperimentConfig& config, const std::vector<CellResult>& cells,
    bool record_timing);

const std::vector<std::string>& ResultColumns();

struct ReplayReport {
  bool pass = false;
  std::string detail;
};

// Re-runs `config` and compares every column except wall_ns against the
// recording, bit for bit. Throws ConfigError if the manifest is missing.
ReplayReport ReplayCheck(const ExperimentConfig& config,
                         const std::filesystem::path& recorded_dir,
                         const RunOptions& options = {});

struct SlopeRow {
  std::string group;
  int points = 0;
  SlopeFit fit;
  std::string error;
};

// Reads summary rows of a results CSV, averages ne_regret over seeds for
// each (algorithm, adversary, d1, d2, T), and fits one slope per group.
std::vector<SlopeRow> SlopesFromCsv(const std::filesystem::path& csv);

// 64-bit FNV-1a, hex encoded.
std::string Fnv1aHex(std::string_view data);

}  // namespace omg

#endif  // OMG_HARNESS_H_
