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

// Command-line front end: run, validate, policies, defaults.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "relaysec/error.hpp"
#include "relaysec/experiment.hpp"

namespace {

using relaysec::ExperimentSpec;

ExperimentSpec load_checked(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw relaysec::Error("spec file '" + path + "' does not exist");
  }
  ExperimentSpec spec;
  try {
    spec = relaysec::load_experiment(path);
  } catch (const relaysec::Error& e) {
    throw relaysec::Error(path + ": " + e.what());
  }
  if (!spec.seed_given) {
    throw relaysec::ConfigError(path +
                                ": 'seed' is required (add e.g. 'seed = 1')");
  }
  return spec;
}

int cmd_run(const std::string& path, const std::string& out_override,
            bool quiet) {
  const ExperimentSpec spec = load_checked(path);
  const std::filesystem::path dir =
      out_override.empty() ? spec.output_dir : out_override;
  const auto progress = [quiet](std::size_t done, std::size_t total,
                                const relaysec::ResultRow& row, double secs) {
    if (quiet) return;
    std::fprintf(stderr, "[%zu/%zu] %s %s=%g  rate=%.4f +- %.4f  (%.2fs)\n",
                 done, total, row.policy.c_str(), row.sweep_var.c_str(),
                 row.sweep_value, row.mean_secrecy_rate, row.std_error, secs);
  };
  const relaysec::ResultTable table = relaysec::run_experiment(spec, progress);
  for (const auto& p : relaysec::write_results(table, spec, dir)) {
    if (!quiet) std::fprintf(stderr, "wrote %s\n", p.string().c_str());
  }
  return 0;
}

int cmd_validate(const std::string& path) {
  const ExperimentSpec spec = load_checked(path);
  const auto points = relaysec::effective_sweep_values(spec).size();
  std::cout << path << ": ok (" << spec.policies.size() << " policies x "
            << points << " sweep points, " << spec.base.trials
            << " trials each)\n";
  return 0;
}

int cmd_policies() {
  for (relaysec::PolicyId p : relaysec::all_policies()) {
    std::string modes;
    for (auto m : {relaysec::Mode::kSingle, relaysec::Mode::kMimo}) {
      if (!relaysec::policy_supports(p, m)) continue;
      if (!modes.empty()) modes += ",";
      modes += relaysec::to_string(m);
    }
    std::cout << relaysec::to_string(p) << "\t" << modes << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Buffer-aided secure relay selection simulator"};
  app.set_version_flag("--version", std::string(relaysec::tool_version()));
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run the experiment and write results");
  run->add_option("spec-file", spec_path, "Experiment file")->required();
  run->add_option("-o,--output-dir", out_dir, "Override output_dir");
  run->add_flag("-q,--quiet", quiet, "Suppress progress output");

  auto* val = app.add_subcommand("validate", "Check an experiment file");
  val->add_option("spec-file", spec_path, "Experiment file")->required();

  auto* pol = app.add_subcommand("policies", "List selection policies");
  auto* def = app.add_subcommand("defaults", "Print the default experiment");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(spec_path, out_dir, quiet);
    if (*val) return cmd_validate(spec_path);
    if (*pol) return cmd_policies();
    if (*def) {
      std::cout << relaysec::default_experiment_text();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "relaysec: error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
