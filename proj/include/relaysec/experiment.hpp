// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RELAYSEC_EXPERIMENT_HPP_
#define RELAYSEC_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "relaysec/config.hpp"
#include "relaysec/engine.hpp"

namespace relaysec {

/// A parsed experiment file: base configuration, sweep axis, policies and
/// output location.
struct ExperimentSpec {
  SystemConfig base;
  SweepVar sweep_var = SweepVar::kNone;
  std::vector<double> sweep_values;  // empty means the single base point
  std::vector<PolicyId> policies;    // defaults to {base.policy}
  std::string output_dir = "results";
  bool keep_trace = false;
  bool seed_given = false;

  bool operator==(const ExperimentSpec&) const = default;
};

/// Parses the flat "key = value" schema. Lines starting with '#' and blank
/// lines are ignored; trailing "# ..." comments are stripped. Every key may
/// appear at most once. Throws ParseError (with line number) for syntax,
/// type and unknown-key errors and ConfigError for violated invariants.
ExperimentSpec parse_experiment(std::string_view text);

// Reads and parses a file; IO failures throw Error naming the path.
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Renders every key, so that parse_experiment(serialize_experiment(s)) == s
/// for any valid spec. Doubles are printed round-trip exact.
std::string serialize_experiment(const ExperimentSpec& spec);

// The reference scenario with an explicit seed, as a commented spec file.
std::string default_experiment_text();

// Sweep points actually run: sweep_values, or one point at the base value.
std::vector<double> effective_sweep_values(const ExperimentSpec& spec);
double sweep_base_value(const SystemConfig& cfg, SweepVar var);

struct ResultRow {
  std::string policy;
  std::string sweep_var;
  double sweep_value = 0.0;
  double mean_secrecy_rate = 0.0;
  double std_error = 0.0;
  double outage_fraction = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;

  bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

inline constexpr std::string_view kResultsHeader =
    "policy,sweep_var,sweep_value,mean_secrecy_rate,stderr,outage_frac,"
    "trials,seed";

using ProgressFn = std::function<void(std::size_t done, std::size_t total,
                                      const ResultRow& row, double seconds)>;

/// Runs every (sweep value, policy) point, value-major. All policies at a
/// point share the seed, so they see identical channel draws.
ResultTable run_experiment(const ExperimentSpec& spec,
                           const ProgressFn& progress = {});

// Writes results.csv, meta.json and series_<policy>.dat into dir (created
// if missing). Returns the paths written.
std::vector<std::filesystem::path> write_results(
    const ResultTable& table, const ExperimentSpec& spec,
    const std::filesystem::path& dir);

std::string format_results_csv(const ResultTable& table);
std::string format_series(const ResultTable& table, std::string_view policy);
std::string format_meta(const ExperimentSpec& spec, const ResultTable& table);

// Readers for the emitted data files. Throw ParseError on malformed input.
ResultTable parse_results_csv(std::string_view text);
std::vector<std::pair<double, double>> parse_series(std::string_view text);

std::string_view tool_version();

}  // namespace relaysec

#endif  // RELAYSEC_EXPERIMENT_HPP_
