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

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "omg/errors.h"
#include "omg/harness.h"

namespace {

int RunCommand(const std::string& config_path, const std::string& out,
               int jobs, const std::optional<std::uint64_t>& seed_override,
               bool jsonl, bool timing) {
  omg::ExperimentConfig config = omg::LoadConfig(config_path);
  if (jsonl) config.output_format = omg::OutputFormat::kBoth;
  omg::RunOptions options;
  if (!out.empty()) options.out_dir = out;
  options.jobs = jobs;
  options.seed_override = seed_override;
  options.record_timing = timing;
  const omg::RunOutcome outcome = omg::Run(config, options);
  for (const omg::CellResult& c : outcome.cells) {
    if (c.ok) {
      std::printf("T=%ld seed=%llu ne_regret=%.6g comparator=%.6g\n", c.horizon,
                  static_cast<unsigned long long>(c.seed), c.ne_regret,
                  c.comparator);
    } else {
      std::printf("T=%ld seed=%llu FAILED %s\n", c.horizon,
                  static_cast<unsigned long long>(c.seed), c.error.c_str());
    }
  }
  std::printf("wrote %s\n", outcome.out_dir.string().c_str());
  return outcome.failed_cells > 0 ? omg::kExitNumericFailure : omg::kExitOk;
}

int ReplayCommand(const std::string& config_path, const std::string& recorded,
                  int jobs) {
  const omg::ExperimentConfig config = omg::LoadConfig(config_path);
  omg::RunOptions options;
  options.jobs = jobs;
  const omg::ReplayReport report = omg::ReplayCheck(config, recorded, options);
  std::printf("%s: %s\n", report.pass ? "PASS" : "FAIL", report.detail.c_str());
  return report.pass ? omg::kExitOk : omg::kExitMismatch;
}

int SlopeCommand(const std::string& csv) {
  std::printf("%-48s %6s %10s %10s %8s\n", "group", "points", "slope",
              "intercept", "r2");
  for (const omg::SlopeRow& row : omg::SlopesFromCsv(csv)) {
    if (!row.error.empty()) {
      std::printf("%-48s %6d %s\n", row.group.c_str(), row.points,
                  row.error.c_str());
    } else {
      std::printf("%-48s %6d %10.4f %10.4f %8.4f\n", row.group.c_str(),
                  row.points, row.fit.slope, row.fit.intercept, row.fit.r2);
    }
  }
  return omg::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online matrix game experiments"};
  app.set_version_flag("--version", omg::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string recorded;
  std::string csv;
  int jobs = 1;
  std::uint64_t seed_value = 0;
  bool jsonl = false;
  bool timing = false;

  CLI::App* run = app.add_subcommand("run", "Run every (T, seed) cell of a config");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out, "Output directory (overrides output_dir)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  CLI::Option* seed_opt =
      run->add_option("--seed-override", seed_value, "Run a single seed");
  run->add_flag("--jsonl", jsonl, "Also write results.jsonl");
  run->add_flag("--timing", timing, "Record wall_ns per cell");

  CLI::App* replay =
      app.add_subcommand("replay", "Re-run a config and compare with a recording");
  replay->add_option("--config", config_path, "Config file")->required();
  replay->add_option("--recorded", recorded, "Recorded output directory")
      ->required();
  replay->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  CLI::App* slope =
      app.add_subcommand("slope", "Fit log-log regret slopes from a results CSV");
  slope->add_option("--in", csv, "results.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? omg::kExitOk : omg::kExitConfigError;
  }

  try {
    if (run->parsed()) {
      std::optional<std::uint64_t> seed_override;
      if (seed_opt->count() > 0) seed_override = seed_value;
      return RunCommand(config_path, out, jobs, seed_override, jsonl, timing);
    }
    if (replay->parsed()) return ReplayCommand(config_path, recorded, jobs);
    if (slope->parsed()) return SlopeCommand(csv);
  } catch (const omg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return omg::kExitConfigError;
  } catch (const omg::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return omg::kExitNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return omg::kExitConfigError;
  }
  return omg::kExitConfigError;
}
