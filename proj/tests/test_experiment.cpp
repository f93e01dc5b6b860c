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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "relaysec/error.hpp"
#include "relaysec/experiment.hpp"

using namespace relaysec;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("relaysec_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("a policy-only file yields the reference defaults") {
  const ExperimentSpec s = parse_experiment("policy = sr-exhaustive\n");
  CHECK(s.base.n_t == 6);
  CHECK(s.base.n_i == 2);
  CHECK(s.base.n_k == 2);
  CHECK(s.base.n_r == 2);
  CHECK(s.base.n_e == 2);
  CHECK(s.base.users == 3);
  CHECK(s.base.eavesdroppers == 3);
  CHECK(s.policies == std::vector<PolicyId>{PolicyId::kSrExhaustive});
  CHECK_FALSE(s.seed_given);
}

TEST_CASE("invariant violations are reported") {
  try {
    parse_experiment("N_t = 4\nM = 3\nN_r = 2\nseed = 1\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("N_t") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_experiment("policy = max-min\n"), ConfigError);
  CHECK_THROWS_AS(parse_experiment("sweep_var = L\nsweep_values = 1, 2.5\n"),
                  ConfigError);
}

TEST_CASE("syntax and key errors carry line numbers") {
  try {
    parse_experiment("# comment\n\nseed = 1\nbogus = 3\n");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_experiment("P = ten\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment("N_t = 6.5\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment("seed = 1\nseed = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment("just words\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment("iri_cancellation = maybe\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment("sweep_var = P\nsweep_values = 1, 1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_experiment("policies = random, random\n"), ParseError);
  try {
    parse_experiment("policy = best\n");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("sr-exhaustive") != std::string::npos);
  }
}

TEST_CASE("comments, whitespace and lists") {
  const ExperimentSpec s = parse_experiment(
      "  seed=42   # trailing comment\n"
      "policies = sr-exhaustive, greedy ,random\n"
      "sweep_var = P\n"
      "sweep_values = 1, 3.5, 10\n"
      "selection_threshold = inf\n"
      "output_dir = out/run1\n");
  CHECK(s.seed_given);
  CHECK(s.base.seed == 42);
  CHECK(s.policies.size() == 3);
  CHECK(s.base.policy == PolicyId::kSrExhaustive);
  CHECK(s.sweep_values == std::vector<double>{1, 3.5, 10});
  CHECK(std::isinf(s.base.selection_threshold));
  CHECK(s.output_dir == "out/run1");
}

TEST_CASE("serialize then parse round-trips") {
  const char* texts[] = {
      "policy = greedy\nseed = 9\nP = 0.1\n",
      "mode = single\npolicies = max-min, sr-single\nrelays = 4\nN_t = 1\n"
      "N_i = 1\nN_k = 1\nN_r = 1\nN_e = 1\nM = 1\nN = 1\nT = 1\nK = 1\n"
      "sweep_var = threshold\nsweep_values = 0, 1e-3, 0.25\n",
      "seed = 18446744073709551615\nsingular_threshold = 1e-10\n"
      "selection_threshold = inf\nkeep_trace = true\n"
      "partial_csi_form = additive\npolicy = sr-partial\n",
  };
  for (const char* t : texts) {
    const ExperimentSpec a = parse_experiment(t);
    const ExperimentSpec b = parse_experiment(serialize_experiment(a));
    CHECK(a == b);
    CHECK(serialize_experiment(a) == serialize_experiment(b));
  }
  ExperimentSpec odd;
  odd.base.power = 0.1 + 0.2;
  odd.policies = {PolicyId::kGreedy, PolicyId::kRandom};
  odd.base.policy = PolicyId::kGreedy;
  odd.sweep_var = SweepVar::kPower;
  odd.sweep_values = {1.0 / 3.0, 2.0 / 3.0};
  odd.seed_given = true;
  CHECK(parse_experiment(serialize_experiment(odd)) == odd);
}

TEST_CASE("defaults parse, validate and carry a seed") {
  const ExperimentSpec s = parse_experiment(default_experiment_text());
  CHECK(s.seed_given);
  CHECK(s.base == SystemConfig{});
}

TEST_CASE("result files have the documented shape and reparse") {
  ExperimentSpec spec = parse_experiment(
      "seed = 3\ntrials = 2\nslots = 5\npolicies = sr-exhaustive, random\n"
      "sweep_var = P\nsweep_values = 1, 10, 100\n");
  std::size_t calls = 0;
  const ResultTable t = run_experiment(
      spec, [&](std::size_t done, std::size_t total, const ResultRow&, double) {
        ++calls;
        CHECK(done == calls);
        CHECK(total == 6);
      });
  CHECK(calls == 6);
  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows[0].policy == "sr-exhaustive");
  CHECK(t.rows[1].policy == "random");
  CHECK(t.rows[1].sweep_value == 1.0);
  CHECK(t.rows[2].sweep_value == 10.0);

  const auto dir = scratch("results");
  const auto files = write_results(t, spec, dir);
  CHECK(files.size() == 4);
  const std::string csv = slurp(dir / "results.csv");
  CHECK(csv.rfind(std::string(kResultsHeader) + "\n", 0) == 0);
  const ResultTable back = parse_results_csv(csv);
  CHECK(back.rows == t.rows);
  const auto series = parse_series(slurp(dir / "series_random.dat"));
  REQUIRE(series.size() == 3);
  CHECK(series[2].first == 100.0);
  CHECK(series[2].second == t.rows[5].mean_secrecy_rate);
  const std::string meta = slurp(dir / "meta.json");
  CHECK(meta.find("\"version\"") != std::string::npos);
  CHECK(meta.find("\"seed\": 3") != std::string::npos);

  // Rerun: data files are byte-identical.
  const auto dir2 = scratch("results2");
  write_results(run_experiment(spec), spec, dir2);
  for (const char* f : {"results.csv", "series_random.dat", "series_sr-exhaustive.dat",
                        "meta.json"}) {
    CHECK(slurp(dir / f) == slurp(dir2 / f));
  }
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("empty table writes a header-only csv") {
  const std::string csv = format_results_csv(ResultTable{});
  CHECK(csv == std::string(kResultsHeader) + "\n");
  CHECK(parse_results_csv(csv).rows.empty());
  CHECK_THROWS_AS(parse_results_csv("a,b\n"), ParseError);
  CHECK_THROWS_AS(parse_results_csv(std::string(kResultsHeader) + "\nx,y\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_series("1\n"), ParseError);
}

TEST_CASE("unwritable output directory is reported with its path") {
  const auto file = scratch("blocker");
  std::ofstream(file) << "x";
  try {
    write_results(ResultTable{}, ExperimentSpec{}, file / "sub");
    FAIL("expected an Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("blocker") != std::string::npos);
  }
  std::filesystem::remove(file);
  CHECK_THROWS_AS(load_experiment(file), Error);
}

}  // TEST_SUITE
