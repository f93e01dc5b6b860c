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

#include "relaysec/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relaysec/error.hpp"

#ifndef RELAYSEC_VERSION
#define RELAYSEC_VERSION "0.0.0"
#endif

namespace relaysec {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto c = s.find(',');
    out.push_back(trim(s.substr(0, c)));
    if (c == std::string_view::npos) break;
    s.remove_prefix(c + 1);
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view s, int line, std::string_view key) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size() ||
      std::isnan(v)) {
    throw ParseError(line, std::string(key) + ": expected a number, got '" +
                               std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view s, int line, std::string_view key) {
  Int v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw ParseError(line, std::string(key) + ": expected an integer, got '" +
                               std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s, int line, std::string_view key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ParseError(line, std::string(key) + ": expected true or false, got '" +
                             std::string(s) + "'");
}

PolicyId parse_policy_at(std::string_view s, int line, std::string_view key) {
  if (auto p = parse_policy(s)) return *p;
  throw ParseError(line, std::string(key) + ": unknown policy '" +
                             std::string(s) + "' (valid: " +
                             policy_names_joined() + ")");
}

using Setter = void (*)(ExperimentSpec&, std::string_view, int, std::string_view);

#define INT_KEY(name, field)                                              \
  {name, [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) { \
     s.base.field = parse_int<int>(v, l, k);                               \
   }}
#define REAL_KEY(name, field)                                             \
  {name, [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) { \
     s.base.field = parse_double(v, l, k);                                 \
   }}
#define BOOL_KEY(name, field)                                             \
  {name, [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) { \
     s.base.field = parse_bool(v, l, k);                                   \
   }}

const std::map<std::string_view, Setter>& setters() {
  static const std::map<std::string_view, Setter> table = {
      INT_KEY("N_t", n_t),
      INT_KEY("N_i", n_i),
      INT_KEY("N_k", n_k),
      INT_KEY("N_r", n_r),
      INT_KEY("N_e", n_e),
      INT_KEY("M", users),
      INT_KEY("N", eavesdroppers),
      INT_KEY("T", receivers),
      INT_KEY("K", jammers),
      INT_KEY("relays", relays),
      INT_KEY("L", buffer_size),
      INT_KEY("slots", slots),
      INT_KEY("trials", trials),
      INT_KEY("warmup", warmup),
      REAL_KEY("P", power),
      REAL_KEY("noise_var", noise_var),
      REAL_KEY("selection_threshold", selection_threshold),
      REAL_KEY("singular_threshold", singular_threshold),
      BOOL_KEY("iri_cancellation", iri_cancellation),
      BOOL_KEY("store_noisy_blocks", store_noisy_blocks),
      BOOL_KEY("sr_strict_printed", sr_strict_printed),
      {"seed",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         s.base.seed = parse_int<std::uint64_t>(v, l, k);
         s.seed_given = true;
       }},
      {"mode",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         const auto m = parse_mode(v);
         if (!m) {
           throw ParseError(l, std::string(k) + ": expected single or mimo");
         }
         s.base.mode = *m;
       }},
      {"partial_csi_form",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         const auto f = parse_partial_csi_form(v);
         if (!f) {
           throw ParseError(l, std::string(k) + ": expected ratio or additive");
         }
         s.base.partial_csi_form = *f;
       }},
      {"policy",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         s.base.policy = parse_policy_at(v, l, k);
       }},
      {"policies",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         s.policies.clear();
         for (auto item : split_list(v)) {
           const PolicyId p = parse_policy_at(item, l, k);
           if (std::find(s.policies.begin(), s.policies.end(), p) !=
               s.policies.end()) {
             throw ParseError(l, std::string(k) + ": duplicate policy '" +
                                     std::string(item) + "'");
           }
           s.policies.push_back(p);
         }
       }},
      {"sweep_var",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         const auto sv = parse_sweep_var(v);
         if (!sv) {
           throw ParseError(l, std::string(k) +
                                   ": expected none, P, L or threshold");
         }
         s.sweep_var = *sv;
       }},
      {"sweep_values",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         s.sweep_values.clear();
         if (trim(v).empty()) return;
         for (auto item : split_list(v)) {
           const double x = parse_double(item, l, k);
           if (!std::isfinite(x)) {
             throw ParseError(l, std::string(k) + ": values must be finite");
           }
           if (!s.sweep_values.empty() && !(x > s.sweep_values.back())) {
             throw ParseError(l, std::string(k) +
                                     ": values must be strictly increasing");
           }
           s.sweep_values.push_back(x);
         }
       }},
      {"output_dir",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         if (v.empty()) throw ParseError(l, std::string(k) + ": empty path");
         s.output_dir = std::string(v);
       }},
      {"keep_trace",
       [](ExperimentSpec& s, std::string_view v, int l, std::string_view k) {
         s.keep_trace = parse_bool(v, l, k);
       }},
  };
  return table;
}

#undef INT_KEY
#undef REAL_KEY
#undef BOOL_KEY

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << data;
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

nlohmann::ordered_json config_json(const SystemConfig& c) {
  nlohmann::ordered_json j;
  j["mode"] = std::string(to_string(c.mode));
  j["N_t"] = c.n_t;
  j["N_i"] = c.n_i;
  j["N_k"] = c.n_k;
  j["N_r"] = c.n_r;
  j["N_e"] = c.n_e;
  j["M"] = c.users;
  j["N"] = c.eavesdroppers;
  j["T"] = c.receivers;
  j["K"] = c.jammers;
  j["relays"] = c.relays;
  j["P"] = c.power;
  j["noise_var"] = c.noise_var;
  j["L"] = c.buffer_size;
  j["slots"] = c.slots;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["warmup"] = c.warmup_slots();
  j["iri_cancellation"] = c.iri_cancellation;
  // JSON has no infinity; the threshold is echoed as text.
  j["selection_threshold"] = fmt(c.selection_threshold);
  j["singular_threshold"] = c.singular_threshold;
  j["store_noisy_blocks"] = c.store_noisy_blocks;
  j["partial_csi_form"] = std::string(to_string(c.partial_csi_form));
  j["sr_strict_printed"] = c.sr_strict_printed;
  return j;
}

}  // namespace

ExperimentSpec parse_experiment(std::string_view text) {
  ExperimentSpec spec;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected 'key = value', got '" +
                                    std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    it->second(spec, value, line_no, key);
  }

  if (spec.policies.empty()) spec.policies.push_back(spec.base.policy);
  if (!seen.contains("policy")) spec.base.policy = spec.policies.front();
  if (spec.sweep_var == SweepVar::kNone && !spec.sweep_values.empty()) {
    throw ParseError(0, "sweep_values given without a sweep_var");
  }

  std::vector<std::string> problems;
  auto check = [&](const SystemConfig& c, const std::string& where) {
    for (const auto& v : config_violations(c)) problems.push_back(where + v);
  };
  check(spec.base, "");
  for (PolicyId p : spec.policies) {
    if (p == spec.base.policy) continue;
    SystemConfig c = spec.base;
    c.policy = p;
    check(c, "policy " + std::string(to_string(p)) + ": ");
  }
  for (double v : spec.sweep_values) {
    SystemConfig c;
    try {
      c = apply_sweep(spec.base, spec.sweep_var, v);
    } catch (const ConfigError& e) {
      problems.push_back(e.what());
      continue;
    }
    if (c == spec.base) continue;
    check(c, std::string(to_string(spec.sweep_var)) + " = " + fmt(v) + ": ");
  }
  if (!problems.empty()) {
    std::string msg = "invalid experiment:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  return parse_experiment(read_file(path));
}

std::string serialize_experiment(const ExperimentSpec& spec) {
  const SystemConfig& c = spec.base;
  std::ostringstream o;
  auto kv = [&o](std::string_view k, const std::string& v) {
    o << k << " = " << v << '\n';
  };
  kv("mode", std::string(to_string(c.mode)));
  kv("N_t", std::to_string(c.n_t));
  kv("N_i", std::to_string(c.n_i));
  kv("N_k", std::to_string(c.n_k));
  kv("N_r", std::to_string(c.n_r));
  kv("N_e", std::to_string(c.n_e));
  kv("M", std::to_string(c.users));
  kv("N", std::to_string(c.eavesdroppers));
  kv("T", std::to_string(c.receivers));
  kv("K", std::to_string(c.jammers));
  kv("relays", std::to_string(c.relays));
  kv("P", fmt(c.power));
  kv("noise_var", fmt(c.noise_var));
  kv("L", std::to_string(c.buffer_size));
  kv("slots", std::to_string(c.slots));
  kv("trials", std::to_string(c.trials));
  if (spec.seed_given) kv("seed", std::to_string(c.seed));
  if (c.warmup >= 0) kv("warmup", std::to_string(c.warmup));
  kv("iri_cancellation", c.iri_cancellation ? "true" : "false");
  kv("selection_threshold", fmt(c.selection_threshold));
  kv("singular_threshold", fmt(c.singular_threshold));
  kv("store_noisy_blocks", c.store_noisy_blocks ? "true" : "false");
  kv("partial_csi_form", std::string(to_string(c.partial_csi_form)));
  kv("sr_strict_printed", c.sr_strict_printed ? "true" : "false");
  kv("policy", std::string(to_string(c.policy)));
  std::string pols;
  for (PolicyId p : spec.policies) {
    if (!pols.empty()) pols += ", ";
    pols += to_string(p);
  }
  kv("policies", pols);
  kv("sweep_var", std::string(to_string(spec.sweep_var)));
  std::string vals;
  for (double v : spec.sweep_values) {
    if (!vals.empty()) vals += ", ";
    vals += fmt(v);
  }
  kv("sweep_values", vals);
  kv("output_dir", spec.output_dir);
  kv("keep_trace", spec.keep_trace ? "true" : "false");
  return o.str();
}

std::string default_experiment_text() {
  ExperimentSpec spec;
  spec.seed_given = true;
  spec.policies = {spec.base.policy};
  return "# relaysec experiment: multi-user MIMO reference scenario.\n"
         "# Flat 'key = value' lines; '#' starts a comment. Omit warmup for\n"
         "# the default of 2L slots. See README.md for every key.\n" +
         serialize_experiment(spec);
}

double sweep_base_value(const SystemConfig& cfg, SweepVar var) {
  switch (var) {
    case SweepVar::kPower:
      return cfg.power;
    case SweepVar::kBufferSize:
      return cfg.buffer_size;
    case SweepVar::kThreshold:
      return cfg.selection_threshold;
    case SweepVar::kNone:
      break;
  }
  return 0.0;
}

std::vector<double> effective_sweep_values(const ExperimentSpec& spec) {
  if (!spec.sweep_values.empty()) return spec.sweep_values;
  return {sweep_base_value(spec.base, spec.sweep_var)};
}

ResultTable run_experiment(const ExperimentSpec& spec,
                           const ProgressFn& progress) {
  const std::vector<double> values = effective_sweep_values(spec);
  ResultTable table;
  const std::size_t total = values.size() * spec.policies.size();
  for (double v : values) {
    for (PolicyId p : spec.policies) {
      SystemConfig c = apply_sweep(spec.base, spec.sweep_var, v);
      c.policy = p;
      const RunResult r = run_monte_carlo(c, spec.keep_trace);
      ResultRow row{std::string(to_string(p)),
                    std::string(to_string(spec.sweep_var)),
                    v,
                    r.mean_secrecy_rate,
                    r.std_error,
                    r.outage_fraction,
                    c.trials,
                    c.seed};
      table.rows.push_back(row);
      if (progress) progress(table.rows.size(), total, row, r.wall_seconds);
    }
  }
  return table;
}

std::string format_results_csv(const ResultTable& table) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const ResultRow& r : table.rows) {
    out += r.policy + ',' + r.sweep_var + ',' + fmt(r.sweep_value) + ',' +
           fmt(r.mean_secrecy_rate) + ',' + fmt(r.std_error) + ',' +
           fmt(r.outage_fraction) + ',' + std::to_string(r.trials) + ',' +
           std::to_string(r.seed) + '\n';
  }
  return out;
}

std::string format_series(const ResultTable& table, std::string_view policy) {
  std::string out;
  bool header = false;
  for (const ResultRow& r : table.rows) {
    if (r.policy != policy) continue;
    if (!header) {
      out += "# " + r.sweep_var + " mean_secrecy_rate (" + r.policy + ")\n";
      header = true;
    }
    out += fmt(r.sweep_value) + ' ' + fmt(r.mean_secrecy_rate) + '\n';
  }
  return out;
}

std::string format_meta(const ExperimentSpec& spec, const ResultTable& table) {
  nlohmann::ordered_json j;
  j["tool"] = "relaysec";
  j["version"] = std::string(tool_version());
  j["config"] = config_json(spec.base);
  std::vector<std::string> pols;
  for (PolicyId p : spec.policies) pols.emplace_back(to_string(p));
  j["policies"] = pols;
  j["sweep_var"] = std::string(to_string(spec.sweep_var));
  j["sweep_values"] = effective_sweep_values(spec);
  j["output_dir"] = spec.output_dir;
  j["keep_trace"] = spec.keep_trace;
  j["rows"] = table.rows.size();
  j["spec"] = serialize_experiment(spec);
  return j.dump(2) + '\n';
}

std::vector<std::filesystem::path> write_results(
    const ResultTable& table, const ExperimentSpec& spec,
    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create '" + dir.string() + "': " + ec.message());
  }
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& data) {
    write_file(dir / name, data);
    written.push_back(dir / name);
  };
  put("results.csv", format_results_csv(table));
  put("meta.json", format_meta(spec, table));
  for (PolicyId p : spec.policies) {
    const std::string name(to_string(p));
    put("series_" + name + ".dat", format_series(table, name));
  }
  return written;
}

ResultTable parse_results_csv(std::string_view text) {
  ResultTable table;
  int line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kResultsHeader) throw ParseError(line_no, "unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split_list(line);
    if (f.size() != 8) {
      throw ParseError(line_no, "expected 8 fields, got " +
                                    std::to_string(f.size()));
    }
    ResultRow r;
    r.policy = std::string(f[0]);
    r.sweep_var = std::string(f[1]);
    r.sweep_value = parse_double(f[2], line_no, "sweep_value");
    r.mean_secrecy_rate = parse_double(f[3], line_no, "mean_secrecy_rate");
    r.std_error = parse_double(f[4], line_no, "stderr");
    r.outage_fraction = parse_double(f[5], line_no, "outage_frac");
    r.trials = parse_int<int>(f[6], line_no, "trials");
    r.seed = parse_int<std::uint64_t>(f[7], line_no, "seed");
    table.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError(0, "missing header");
  return table;
}

std::vector<std::pair<double, double>> parse_series(std::string_view text) {
  std::vector<std::pair<double, double>> out;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) {
      throw ParseError(line_no, "expected two columns");
    }
    out.emplace_back(parse_double(trim(line.substr(0, sp)), line_no, "x"),
                     parse_double(trim(line.substr(sp + 1)), line_no, "y"));
  }
  return out;
}

std::string_view tool_version() { return RELAYSEC_VERSION; }

}  // namespace relaysec
