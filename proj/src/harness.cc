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

#include "omg/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "omg/errors.h"
#include "omg/rng.h"

namespace omg {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr const char* kCsvName = "results.csv";
constexpr const char* kJsonlName = "results.jsonl";
constexpr const char* kManifestName = "manifest.json";
constexpr const char* kSummaryTag = "summary";

// ---------------------------------------------------------------------------
// Config parsing

struct RawValue {
  std::string value;
  int line = 0;
};

class ConfigReader {
 public:
  ConfigReader(std::string_view source) : source_(source) {}

  [[noreturn]] void Fail(int line, const std::string& field,
                         const std::string& what) const {
    std::ostringstream msg;
    msg << source_ << ":" << line;
    if (!field.empty()) msg << ": field '" << field << "'";
    msg << ": " << what;
    throw ConfigError(msg.str());
  }

  double Double(const std::string& field, const RawValue& raw) const {
    double v = 0.0;
    const char* begin = raw.value.data();
    const char* end = begin + raw.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      Fail(raw.line, field, "expected a finite number, got '" + raw.value + "'");
    }
    return v;
  }

  long Integer(const std::string& field, const std::string& text,
               int line) const {
    long v = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      Fail(line, field, "expected an integer, got '" + text + "'");
    }
    return v;
  }

  std::uint64_t Unsigned(const std::string& field, const std::string& text,
                         int line) const {
    std::uint64_t v = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      Fail(line, field, "expected a nonnegative integer, got '" + text + "'");
    }
    return v;
  }

  bool Bool(const std::string& field, const RawValue& raw) const {
    if (raw.value == "true") return true;
    if (raw.value == "false") return false;
    Fail(raw.line, field, "expected true or false, got '" + raw.value + "'");
  }

  Matrix MatrixValue(const std::string& field, const RawValue& raw) const {
    std::vector<std::vector<double>> rows;
    std::stringstream all(raw.value);
    std::string row_text;
    while (std::getline(all, row_text, ';')) {
      std::stringstream rs(row_text);
      std::string tok;
      std::vector<double> row;
      while (rs >> tok) row.push_back(Double(field, RawValue{tok, raw.line}));
      if (row.empty()) Fail(raw.line, field, "empty matrix row");
      if (!rows.empty() && row.size() != rows.front().size()) {
        Fail(raw.line, field, "matrix rows have different lengths");
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) Fail(raw.line, field, "empty matrix");
    Matrix m(rows.size(), rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i) {
      for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::vector<std::string> List(const RawValue& raw) const {
    std::vector<std::string> out;
    std::stringstream ss(raw.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) continue;
      out.push_back(item.substr(b, e - b + 1));
    }
    return out;
  }

 private:
  std::string source_;
};

const std::map<std::string, std::set<std::string>>& AllowedKeys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"", {"algorithm", "horizons", "seeds", "solver_eps", "output_dir",
            "output_format", "ne_regret_running"}},
      {"adversary", {"kind", "d1", "d2", "bound", "matrix"}},
      {"params", {"schedule", "eta", "floor", "eta_h"}},
  };
  return keys;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// ---------------------------------------------------------------------------
// Output formatting

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
  }
  return s;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string JoinCsv(const std::vector<std::string>& row) {
  std::string out;
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += row[i];
  }
  return out;
}

json JsonRow(const std::vector<std::string>& columns,
             const std::vector<std::string>& row) {
  json obj = json::object();
  for (size_t i = 0; i < columns.size(); ++i) {
    const std::string& v = row[i];
    if (v.empty()) {
      obj[columns[i]] = nullptr;
      continue;
    }
    const char* end = v.data() + v.size();
    std::int64_t n = 0;
    std::uint64_t u = 0;
    double d = 0.0;
    if (auto [p, e] = std::from_chars(v.data(), end, n);
        e == std::errc() && p == end) {
      obj[columns[i]] = n;
    } else if (auto [q, f] = std::from_chars(v.data(), end, u);
               f == std::errc() && q == end) {
      obj[columns[i]] = u;
    } else if (auto [ptr, ec] = std::from_chars(v.data(), end, d);
               ec == std::errc() && ptr == end && std::isfinite(d)) {
      obj[columns[i]] = d;
    } else {
      obj[columns[i]] = v;
    }
  }
  return obj;
}

// ---------------------------------------------------------------------------
// Cell execution

void FinishLedger(const ExperimentConfig& config, const RunLedger& ledger,
                  double floor, CellResult& r) {
  r.matrix_sum = ledger.matrix_sum();
  const PayoffMatrix sum(r.matrix_sum);
  r.comparator = ComparatorValue(sum, 0.0, config.solver_eps);
  r.comparator_restricted =
      floor > 0.0 ? ComparatorValue(sum, floor, config.solver_eps)
                  : std::numeric_limits<double>::quiet_NaN();
  r.cum_payoff = ledger.cumulative_payoff();
  r.cum_mixed_payoff = ledger.cumulative_mixed_payoff();
  r.ne_regret = std::abs(r.cum_payoff - r.comparator);
  r.ne_regret_mixed = std::abs(r.cum_mixed_payoff - r.comparator);
  r.regrets = ComputeIndividualRegrets(ledger);
  r.rounds = ledger.summaries();
}

void MaybeTrackRunning(const ExperimentConfig& config, const RunLedger& ledger,
                       CellResult& r) {
  if (config.ne_regret_running) {
    r.ne_regret_running.push_back(NeRegret(ledger, config.solver_eps));
  }
}

void RunFullInformation(const ExperimentConfig& config,
                        const AdversarySpec& spec, CellResult& r) {
  const LearnerParams params = ResolveParams(config, spec.horizon);
  r.eta = params.eta;
  r.floor = params.floor;
  r.warning = params.warning;
  LearnerState state = LearnerState::Initial(spec.d1, spec.d2, params.floor);
  RunLedger ledger(spec.d1, spec.d2);
  double prev_eps = 0.0;
  double iterations = 0.0;
  for (long t = 1; t <= spec.horizon; ++t) {
    const PayoffMatrix a = Emit(spec, t, ledger.records());
    ledger.Record(a, state.x, state.y);
    MaybeTrackRunning(config, ledger, r);
    const StepInfo info = SpRftlStep(state, params, a);
    const double bound = MovementBound(t, params, spec.bound, info.eps, prev_eps);
    ++r.stability_checks;
    if (info.movement > bound) ++r.stability_violations;
    r.worst_stability_ratio = std::max(r.worst_stability_ratio, info.movement / bound);
    prev_eps = info.eps;
    iterations += static_cast<double>(info.iterations);
  }
  r.mean_inner_iterations = iterations / static_cast<double>(spec.horizon);
  r.final_x = state.x;
  r.final_y = state.y;
  FinishLedger(config, ledger, params.floor, r);
}

void RunBandit(const ExperimentConfig& config, const AdversarySpec& spec,
               CellResult& r) {
  const LearnerParams params = ResolveParams(config, spec.horizon);
  r.eta = params.eta;
  r.floor = params.floor;
  r.warning = params.warning;
  Rng rng(spec.seed, static_cast<std::uint64_t>(spec.horizon), Stream::kLearner);
  LearnerState state = LearnerState::Initial(spec.d1, spec.d2, params.floor);
  SampleActions(state, rng);
  RunLedger ledger(spec.d1, spec.d2);
  double iterations = 0.0;
  for (long t = 1; t <= spec.horizon; ++t) {
    const PayoffMatrix a = Emit(spec, t, ledger.records());
    const auto [i, j] = *state.actions;
    ledger.Record(a, state.x, state.y, state.actions);
    MaybeTrackRunning(config, ledger, r);
    const StepInfo info = BanditStep(state, params, a(i, j), rng);
    iterations += static_cast<double>(info.iterations);
  }
  r.mean_inner_iterations = iterations / static_cast<double>(spec.horizon);
  r.final_x = state.x;
  r.final_y = state.y;
  FinishLedger(config, ledger, params.floor, r);
}

void RunHedge(const ExperimentConfig& config, const AdversarySpec& spec,
              CellResult& r) {
  const double eta_x = config.params.eta_h.value_or(
      HedgeDefaultRate(spec.d1, spec.horizon));
  const double eta_y = config.params.eta_h.value_or(
      HedgeDefaultRate(spec.d2, spec.horizon));
  r.eta = eta_x;
  r.floor = 0.0;
  MixedStrategy x = MixedStrategy::Uniform(spec.d1);
  MixedStrategy y = MixedStrategy::Uniform(spec.d2);
  RunLedger ledger(spec.d1, spec.d2);
  for (long t = 1; t <= spec.horizon; ++t) {
    const PayoffMatrix a = Emit(spec, t, ledger.records());
    ledger.Record(a, x, y);
    MaybeTrackRunning(config, ledger, r);
    const Vector row_loss = a.entries() * y.weights();
    const Vector col_gain = a.entries().transpose() * x.weights();
    x = HedgeStep(x, row_loss, eta_x, /*minimize=*/true);
    y = HedgeStep(y, col_gain, eta_y, /*minimize=*/false);
  }
  r.final_x = x;
  r.final_y = y;
  FinishLedger(config, ledger, 0.0, r);
}

// ---------------------------------------------------------------------------
// Files

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kOmgRftl:
      return "omg_rftl";
    case Algorithm::kBanditOmgRftl:
      return "bandit_omg_rftl";
    case Algorithm::kHedgeSelfplay:
      return "hedge_selfplay";
    case Algorithm::kSpRftlCustom:
      return "sp_rftl_custom";
  }
  return "?";
}

Algorithm ParseAlgorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kOmgRftl, Algorithm::kBanditOmgRftl,
                      Algorithm::kHedgeSelfplay, Algorithm::kSpRftlCustom}) {
    if (name == AlgorithmName(a)) return a;
  }
  throw ConfigError("unknown algorithm '" + name +
                    "' (expected omg_rftl, bandit_omg_rftl, hedge_selfplay or "
                    "sp_rftl_custom)");
}

ExperimentConfig ParseConfig(std::string_view text,
                             std::string_view source_name) {
  ConfigReader reader(source_name);
  std::map<std::string, std::map<std::string, RawValue>> sections;
  std::string section;
  int line_no = 0;
  std::stringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = Trim(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') reader.Fail(line_no, "", "malformed section header");
      section = Trim(std::string_view(body).substr(1, body.size() - 2));
      if (!AllowedKeys().count(section) || section.empty()) {
        reader.Fail(line_no, "", "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      reader.Fail(line_no, "", "expected 'key = value', got '" + body + "'");
    }
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    const std::string value = Trim(std::string_view(body).substr(eq + 1));
    const std::string qualified = section.empty() ? key : section + "." + key;
    if (!AllowedKeys().at(section).count(key)) {
      reader.Fail(line_no, qualified, "unknown key");
    }
    if (sections[section].count(key)) {
      reader.Fail(line_no, qualified,
                  "duplicate key (first set on line " +
                      std::to_string(sections[section][key].line) + ")");
    }
    if (value.empty()) reader.Fail(line_no, qualified, "empty value");
    sections[section][key] = RawValue{value, line_no};
  }

  auto find = [&](const std::string& sec,
                  const std::string& key) -> const RawValue* {
    auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };

  ExperimentConfig config;
  config.source_text = std::string(text);

  const RawValue* algo = find("", "algorithm");
  if (!algo) reader.Fail(line_no, "algorithm", "missing required key");
  try {
    config.algorithm = ParseAlgorithm(algo->value);
  } catch (const ConfigError& e) {
    reader.Fail(algo->line, "algorithm", e.what());
  }

  if (const RawValue* v = find("", "horizons")) {
    for (const std::string& item : reader.List(*v)) {
      config.horizons.push_back(reader.Integer("horizons", item, v->line));
    }
  }
  if (const RawValue* v = find("", "seeds")) {
    for (const std::string& item : reader.List(*v)) {
      config.seeds.push_back(reader.Unsigned("seeds", item, v->line));
    }
  } else {
    config.seeds = {0};
  }
  if (const RawValue* v = find("", "solver_eps")) {
    config.solver_eps = reader.Double("solver_eps", *v);
  }
  if (const RawValue* v = find("", "output_dir")) config.output_dir = v->value;
  if (const RawValue* v = find("", "output_format")) {
    if (v->value == "csv") {
      config.output_format = OutputFormat::kCsv;
    } else if (v->value == "jsonl") {
      config.output_format = OutputFormat::kJsonl;
    } else if (v->value == "both") {
      config.output_format = OutputFormat::kBoth;
    } else {
      reader.Fail(v->line, "output_format",
                  "expected csv, jsonl or both, got '" + v->value + "'");
    }
  }
  if (const RawValue* v = find("", "ne_regret_running")) {
    config.ne_regret_running = reader.Bool("ne_regret_running", *v);
  }

  const RawValue* kind = find("adversary", "kind");
  if (!kind) reader.Fail(line_no, "adversary.kind", "missing required key");
  try {
    config.adversary.kind = ParseAdversaryKind(kind->value);
  } catch (const ConfigError& e) {
    reader.Fail(kind->line, "adversary.kind", e.what());
  }
  if (const RawValue* v = find("adversary", "d1")) {
    config.adversary.d1 =
        static_cast<int>(reader.Integer("adversary.d1", v->value, v->line));
  }
  if (const RawValue* v = find("adversary", "d2")) {
    config.adversary.d2 =
        static_cast<int>(reader.Integer("adversary.d2", v->value, v->line));
  }
  if (const RawValue* v = find("adversary", "bound")) {
    config.adversary.bound = reader.Double("adversary.bound", *v);
  }
  if (const RawValue* v = find("adversary", "matrix")) {
    config.adversary.matrix = reader.MatrixValue("adversary.matrix", *v);
  }

  if (const RawValue* v = find("params", "schedule")) {
    try {
      config.params.schedule = ParseSchedule(v->value);
    } catch (const ConfigError& e) {
      reader.Fail(v->line, "params.schedule", e.what());
    }
  }
  if (const RawValue* v = find("params", "eta")) {
    config.params.eta = reader.Double("params.eta", *v);
  }
  if (const RawValue* v = find("params", "floor")) {
    config.params.floor = reader.Double("params.floor", *v);
  }
  if (const RawValue* v = find("params", "eta_h")) {
    config.params.eta_h = reader.Double("params.eta_h", *v);
  }

  try {
    config.Validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source_name) + ": " + e.what());
  }
  return config;
}

ExperimentConfig LoadConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), path.string());
}

void ExperimentConfig::Validate() const {
  if (horizons.empty()) throw ConfigError("horizons: list is empty");
  for (long t : horizons) {
    if (t < 1) throw ConfigError("horizons: every T must be >= 1");
  }
  if (seeds.empty()) throw ConfigError("seeds: list is empty");
  if (!(solver_eps > 0.0)) throw ConfigError("solver_eps must be positive");

  const bool has_eta_floor = params.eta || params.floor;
  switch (algorithm) {
    case Algorithm::kHedgeSelfplay:
      if (params.schedule || has_eta_floor) {
        throw ConfigError(
            "params: hedge_selfplay takes only eta_h (schedule, eta and floor "
            "are not used)");
      }
      if (params.eta_h && !(*params.eta_h > 0.0)) {
        throw ConfigError("params.eta_h must be positive");
      }
      break;
    case Algorithm::kSpRftlCustom:
      if (params.schedule && *params.schedule != Schedule::kExplicit) {
        throw ConfigError("params: sp_rftl_custom needs schedule = explicit");
      }
      [[fallthrough]];
    case Algorithm::kOmgRftl:
    case Algorithm::kBanditOmgRftl: {
      if (params.eta_h) {
        throw ConfigError("params.eta_h is only used by hedge_selfplay");
      }
      const bool is_explicit =
          algorithm == Algorithm::kSpRftlCustom ||
          (params.schedule ? *params.schedule == Schedule::kExplicit
                           : has_eta_floor);
      if (is_explicit && !(params.eta && params.floor)) {
        throw ConfigError("params: explicit schedule needs both eta and floor");
      }
      if (!is_explicit && has_eta_floor) {
        throw ConfigError(
            "params: eta/floor conflict with a theorem schedule; use "
            "schedule = explicit");
      }
      break;
    }
  }
  for (long t : horizons) {
    AdversarySpec spec = adversary;
    spec.horizon = t;
    spec.Validate();
    if (algorithm != Algorithm::kHedgeSelfplay) {
      const LearnerParams p = ResolveParams(*this, t);
      if (algorithm == Algorithm::kBanditOmgRftl && !(p.floor > 0.0)) {
        throw ConfigError("params: bandit_omg_rftl needs a positive floor");
      }
    }
  }
}

LearnerParams ResolveParams(const ExperimentConfig& config, long horizon) {
  const AdversarySpec& adv = config.adversary;
  const ParamOverrides& o = config.params;
  LearnerParams p;
  Schedule schedule;
  if (o.schedule) {
    schedule = *o.schedule;
  } else if (o.eta || o.floor || config.algorithm == Algorithm::kSpRftlCustom) {
    schedule = Schedule::kExplicit;
  } else {
    schedule = config.algorithm == Algorithm::kBanditOmgRftl
                   ? Schedule::kTheorem5
                   : Schedule::kTheorem3;
  }
  switch (schedule) {
    case Schedule::kExplicit:
      p = LearnerParams::Explicit(o.eta.value_or(0.0), o.floor.value_or(0.0),
                                  horizon);
      break;
    case Schedule::kTheorem3:
      p = LearnerParams::Theorem3(horizon, adv.d1, adv.d2, adv.bound);
      break;
    case Schedule::kTheorem5:
      p = LearnerParams::Theorem5(horizon, adv.d1, adv.d2);
      break;
  }
  p.Validate(adv.d1, adv.d2);
  return p;
}

CellResult RunCell(const ExperimentConfig& config, long horizon,
                   std::uint64_t seed) {
  CellResult r;
  r.horizon = horizon;
  r.seed = seed;
  AdversarySpec spec = config.adversary;
  spec.horizon = horizon;
  spec.seed = seed;
  spec.Validate();
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (config.algorithm) {
      case Algorithm::kOmgRftl:
      case Algorithm::kSpRftlCustom:
        RunFullInformation(config, spec, r);
        break;
      case Algorithm::kBanditOmgRftl:
        RunBandit(config, spec, r);
        break;
      case Algorithm::kHedgeSelfplay:
        RunHedge(config, spec, r);
        break;
    }
    r.ok = true;
  } catch (const NumericError& e) {
    r.ok = false;
    r.error = e.what();
  } catch (const DomainError& e) {
    r.ok = false;
    r.error = e.what();
  }
  r.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

std::vector<CellResult> RunAllCells(const ExperimentConfig& config,
                                    const RunOptions& options) {
  std::vector<std::uint64_t> seeds = config.seeds;
  if (options.seed_override) seeds = {*options.seed_override};
  std::vector<std::pair<long, std::uint64_t>> keys;
  for (long t : config.horizons) {
    for (std::uint64_t s : seeds) keys.emplace_back(t, s);
  }
  std::vector<CellResult> results(keys.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (size_t k = next++; k < keys.size(); k = next++) {
      try {
        results[k] = RunCell(config, keys[k].first, keys[k].second);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs =
      std::max(1, std::min<int>(options.jobs, static_cast<int>(keys.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

const std::vector<std::string>& ResultColumns() {
  static const std::vector<std::string> columns = {
      "algorithm",  "adversary",  "d1",        "d2",
      "T",          "seed",       "t",         "payoff",
      "cum_payoff", "ne_regret_running",       "row_regret",
      "col_regret", "gap",        "ne_regret", "ne_regret_mixed",
      "comparator", "comparator_restricted",   "eta",
      "floor",      "status",     "wall_ns",   "message"};
  return columns;
}

std::vector<std::vector<std::string>> ResultTable(
    const ExperimentConfig& config, const std::vector<CellResult>& cells,
    bool record_timing) {
  std::vector<std::vector<std::string>> table;
  table.push_back(ResultColumns());
  const std::string algo = AlgorithmName(config.algorithm);
  const std::string adv = AdversaryName(config.adversary.kind);
  const std::string d1 = std::to_string(config.adversary.d1);
  const std::string d2 = std::to_string(config.adversary.d2);
  for (const CellResult& c : cells) {
    const std::string horizon = std::to_string(c.horizon);
    const std::string seed = std::to_string(c.seed);
    if (c.ok) {
      for (size_t k = 0; k < c.rounds.size(); ++k) {
        const RoundSummary& s = c.rounds[k];
        table.push_back({algo, adv, d1, d2, horizon, seed, std::to_string(s.t),
                         FormatDouble(s.payoff), FormatDouble(s.cum_payoff),
                         c.ne_regret_running.empty()
                             ? ""
                             : FormatDouble(c.ne_regret_running[k]),
                         FormatDouble(s.row_regret), FormatDouble(s.col_regret),
                         FormatDouble(s.gap), "", "", "", "", "", "", "", "",
                         ""});
      }
      table.push_back(
          {algo, adv, d1, d2, horizon, seed, kSummaryTag, "",
           FormatDouble(c.cum_payoff), "", FormatDouble(c.regrets.row),
           FormatDouble(c.regrets.col),
           FormatDouble(c.regrets.row + c.regrets.col),
           FormatDouble(c.ne_regret), FormatDouble(c.ne_regret_mixed),
           FormatDouble(c.comparator), FormatDouble(c.comparator_restricted),
           FormatDouble(c.eta), FormatDouble(c.floor), "ok",
           std::to_string(record_timing ? c.wall_ns : 0),
           Sanitize(c.warning)});
    } else {
      table.push_back({algo, adv, d1, d2, horizon, seed, kSummaryTag, "", "",
                       "", "", "", "", "", "", "", "", "", "", "failed",
                       std::to_string(record_timing ? c.wall_ns : 0),
                       Sanitize(c.error)});
    }
  }
  return table;
}

std::string Fnv1aHex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunOutcome Run(const ExperimentConfig& config, const RunOptions& options) {
  RunOutcome outcome;
  outcome.out_dir = options.out_dir.value_or(fs::path(config.output_dir));
  outcome.cells = RunAllCells(config, options);
  for (const CellResult& c : outcome.cells) {
    if (!c.ok) ++outcome.failed_cells;
    if (!c.warning.empty()) {
      std::cerr << "warning: T=" << c.horizon << " seed=" << c.seed << ": "
                << c.warning << "\n";
    }
  }

  fs::create_directories(outcome.out_dir);
  const auto table = ResultTable(config, outcome.cells, options.record_timing);
  std::vector<std::string> files;
  if (config.output_format != OutputFormat::kJsonl) {
    std::ofstream out(outcome.out_dir / kCsvName, std::ios::binary);
    for (const auto& row : table) out << JoinCsv(row) << "\n";
    if (!out) throw ConfigError("failed writing " + (outcome.out_dir / kCsvName).string());
    files.push_back(kCsvName);
  }
  if (config.output_format != OutputFormat::kCsv) {
    std::ofstream out(outcome.out_dir / kJsonlName, std::ios::binary);
    for (size_t r = 1; r < table.size(); ++r) {
      out << JsonRow(table.front(), table[r]).dump() << "\n";
    }
    if (!out) throw ConfigError("failed writing " + (outcome.out_dir / kJsonlName).string());
    files.push_back(kJsonlName);
  }

  json manifest;
  manifest["tool"] = "omg";
  manifest["tool_version"] = kToolVersion;
  manifest["config_hash"] = "fnv1a64:" + Fnv1aHex(config.source_text);
  manifest["algorithm"] = AlgorithmName(config.algorithm);
  manifest["adversary"] = AdversaryName(config.adversary.kind);
  manifest["horizons"] = config.horizons;
  std::vector<std::uint64_t> seeds = config.seeds;
  if (options.seed_override) seeds = {*options.seed_override};
  manifest["seeds"] = seeds;
  manifest["seed_override"] = options.seed_override.has_value();
  manifest["files"] = files;
  json cells = json::array();
  for (const CellResult& c : outcome.cells) {
    cells.push_back({{"T", c.horizon},
                     {"seed", c.seed},
                     {"status", c.ok ? "ok" : "failed"},
                     {"error", c.error}});
  }
  manifest["cells"] = cells;
  std::ofstream mout(outcome.out_dir / kManifestName, std::ios::binary);
  mout << manifest.dump(2) << "\n";
  return outcome;
}

ReplayReport ReplayCheck(const ExperimentConfig& config,
                         const fs::path& recorded_dir,
                         const RunOptions& options) {
  if (!fs::exists(recorded_dir / kManifestName)) {
    throw ConfigError("replay: missing manifest " +
                      (recorded_dir / kManifestName).string());
  }
  const fs::path csv = recorded_dir / kCsvName;
  if (!fs::exists(csv)) {
    throw ConfigError("replay: recording has no " + std::string(kCsvName));
  }
  std::vector<std::vector<std::string>> recorded;
  for (const std::string& line : ReadLines(csv)) recorded.push_back(SplitCsv(line));

  RunOptions rerun = options;
  rerun.jobs = std::max(1, options.jobs);
  const auto fresh = ResultTable(config, RunAllCells(config, rerun), false);

  const auto& columns = ResultColumns();
  const auto column_index = [&](const std::string& name) {
    return static_cast<size_t>(
        std::find(columns.begin(), columns.end(), name) - columns.begin());
  };
  const size_t wall = column_index("wall_ns");
  const size_t t_col = column_index("T");
  const size_t seed_col = column_index("seed");
  const size_t round_col = column_index("t");

  ReplayReport report;
  if (recorded.empty() || recorded.front() != columns) {
    report.detail = "recorded header does not match the current column layout";
    return report;
  }
  const size_t n = std::min(recorded.size(), fresh.size());
  for (size_t r = 1; r < n; ++r) {
    const auto& rec = recorded[r];
    const auto& now = fresh[r];
    if (rec.size() != columns.size()) {
      report.detail = "recorded line " + std::to_string(r + 1) +
                      " has " + std::to_string(rec.size()) + " fields";
      return report;
    }
    for (size_t c = 0; c < columns.size(); ++c) {
      if (c == wall || rec[c] == now[c]) continue;
      std::ostringstream msg;
      msg << "first divergence: cell (T=" << rec[t_col] << ", seed="
          << rec[seed_col] << "), column '" << columns[c] << "', round "
          << rec[round_col] << ": recorded '" << rec[c] << "', replay '"
          << now[c] << "'";
      report.detail = msg.str();
      return report;
    }
  }
  if (recorded.size() != fresh.size()) {
    report.detail = "row count differs: recorded " +
                    std::to_string(recorded.size() - 1) + ", replay " +
                    std::to_string(fresh.size() - 1);
    return report;
  }
  report.pass = true;
  report.detail = "replay matches " + std::to_string(fresh.size() - 1) + " rows";
  return report;
}

std::vector<SlopeRow> SlopesFromCsv(const fs::path& csv) {
  const auto lines = ReadLines(csv);
  if (lines.empty()) throw ConfigError("slope: empty file " + csv.string());
  const auto header = SplitCsv(lines.front());
  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw ConfigError("slope: " + csv.string() + " has no column '" + name + "'");
    }
    return static_cast<size_t>(it - header.begin());
  };
  const size_t c_algo = col("algorithm"), c_adv = col("adversary"),
               c_d1 = col("d1"), c_d2 = col("d2"), c_t = col("T"),
               c_round = col("t"), c_reg = col("ne_regret"),
               c_status = col("status");

  // group -> T -> (sum, count)
  std::map<std::string, std::map<double, std::pair<double, int>>> groups;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto row = SplitCsv(lines[i]);
    if (row.size() != header.size()) {
      throw ConfigError("slope: malformed line " + std::to_string(i + 1));
    }
    if (row[c_round] != kSummaryTag || row[c_status] != "ok") continue;
    const std::string key =
        row[c_algo] + "/" + row[c_adv] + "/" + row[c_d1] + "x" + row[c_d2];
    const double t = std::stod(row[c_t]);
    auto& cell = groups[key][t];
    cell.first += std::stod(row[c_reg]);
    cell.second += 1;
  }
  std::vector<SlopeRow> out;
  for (const auto& [key, by_t] : groups) {
    SlopeRow row;
    row.group = key;
    std::vector<std::pair<double, double>> points;
    for (const auto& [t, acc] : by_t) points.emplace_back(t, acc.first / acc.second);
    row.points = static_cast<int>(points.size());
    try {
      row.fit = FitSlope(points);
    } catch (const ConfigError& e) {
      row.error = e.what();
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace omg
