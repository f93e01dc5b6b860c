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

#include "relaysec/config.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "relaysec/error.hpp"

namespace relaysec {

namespace {

constexpr std::array<std::pair<PolicyId, std::string_view>, 8> kPolicyNames{{
    {PolicyId::kMaxMin, "max-min"},
    {PolicyId::kMaxRatio, "max-ratio"},
    {PolicyId::kMl, "ml"},
    {PolicyId::kSrSingle, "sr-single"},
    {PolicyId::kSrExhaustive, "sr-exhaustive"},
    {PolicyId::kSrPartial, "sr-partial"},
    {PolicyId::kGreedy, "greedy"},
    {PolicyId::kRandom, "random"},
}};

}  // namespace

std::string_view to_string(Mode m) {
  return m == Mode::kSingle ? "single" : "mimo";
}

std::string_view to_string(PolicyId p) {
  for (const auto& [id, name] : kPolicyNames) {
    if (id == p) return name;
  }
  return "unknown";
}

std::string_view to_string(PartialCsiForm f) {
  return f == PartialCsiForm::kRatio ? "ratio" : "additive";
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "single") return Mode::kSingle;
  if (s == "mimo") return Mode::kMimo;
  return std::nullopt;
}

std::optional<PolicyId> parse_policy(std::string_view s) {
  for (const auto& [id, name] : kPolicyNames) {
    if (name == s) return id;
  }
  return std::nullopt;
}

std::optional<PartialCsiForm> parse_partial_csi_form(std::string_view s) {
  if (s == "ratio") return PartialCsiForm::kRatio;
  if (s == "additive") return PartialCsiForm::kAdditive;
  return std::nullopt;
}

const std::vector<PolicyId>& all_policies() {
  static const std::vector<PolicyId> ids = [] {
    std::vector<PolicyId> v;
    for (const auto& entry : kPolicyNames) v.push_back(entry.first);
    return v;
  }();
  return ids;
}

std::string policy_names_joined() {
  std::string out;
  for (const auto& [id, name] : kPolicyNames) {
    if (!out.empty()) out += " | ";
    out += name;
  }
  return out;
}

bool policy_supports(PolicyId p, Mode m) {
  switch (p) {
    case PolicyId::kMaxMin:
    case PolicyId::kMaxRatio:
    case PolicyId::kMl:
    case PolicyId::kSrSingle:
      return m == Mode::kSingle;
    case PolicyId::kSrExhaustive:
    case PolicyId::kSrPartial:
    case PolicyId::kGreedy:
      return m == Mode::kMimo;
    case PolicyId::kRandom:
      return true;
  }
  return false;
}

Antennas SystemConfig::antennas() const {
  if (mode == Mode::kSingle) return Antennas{};
  return Antennas{n_t, n_i, n_k, n_r, n_e, users, eavesdroppers};
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return std::round(acc);
}

double enumeration_size(const SystemConfig& cfg) {
  return binomial(cfg.relays, cfg.receivers) *
         binomial(cfg.relays - cfg.receivers, cfg.jammers);
}

std::vector<std::string> config_violations(const SystemConfig& cfg) {
  std::vector<std::string> out;
  auto need = [&out](bool ok, const std::string& msg) {
    if (!ok) out.push_back(msg);
  };
  need(cfg.n_t >= 1 && cfg.n_i >= 1 && cfg.n_k >= 1 && cfg.n_r >= 1 &&
           cfg.n_e >= 1,
       "antenna counts N_t, N_i, N_k, N_r, N_e must be >= 1");
  need(cfg.users >= 1, "M (users) must be >= 1");
  need(cfg.eavesdroppers >= 1, "N (eavesdroppers) must be >= 1");
  need(cfg.receivers >= 1, "T (receiving relays per slot) must be >= 1");
  need(cfg.jammers >= 1, "K (jamming relays per slot) must be >= 1");
  need(cfg.relays >= 1 && cfg.relays <= 64,
       "relays (pool size) must lie in [1, 64]");
  need(cfg.power > 0.0 && std::isfinite(cfg.power), "P must be finite and > 0");
  need(cfg.noise_var > 0.0 && std::isfinite(cfg.noise_var),
       "noise_var must be finite and > 0");
  need(cfg.buffer_size >= 1, "L (buffer size) must be >= 1");
  need(cfg.slots >= 1, "slots must be >= 1");
  need(cfg.warmup >= -1, "warmup must be >= 0 (or -1 for 2L)");
  need(cfg.trials >= 1, "trials must be >= 1");
  need(!std::isnan(cfg.selection_threshold) && cfg.selection_threshold >= 0.0,
       "selection_threshold must be >= 0");
  need(cfg.singular_threshold > 0.0 && cfg.singular_threshold < 1.0,
       "singular_threshold must lie in (0, 1)");
  need(cfg.n_t >= cfg.n_r * cfg.users, "N_t >= N_r * M required (N_t = " +
                                           std::to_string(cfg.n_t) +
                                           ", N_r * M = " +
                                           std::to_string(cfg.n_r * cfg.users) +
                                           ")");
  need(policy_supports(cfg.policy, cfg.mode),
       "policy '" + std::string(to_string(cfg.policy)) +
           "' is not defined for mode '" + std::string(to_string(cfg.mode)) +
           "'");
  if (cfg.mode == Mode::kMimo) {
    need(cfg.receivers == cfg.jammers, "T = K required in mimo mode");
    need(cfg.n_i == cfg.n_k && cfg.n_i == cfg.n_r,
         "N_i = N_k = N_r required in mimo mode");
    need(cfg.n_t >= cfg.receivers * cfg.n_i,
         "N_t >= T * N_i required for source zero-forcing");
    need(cfg.relays >= cfg.receivers + cfg.jammers, "relays >= T + K required");
    if (cfg.policy == PolicyId::kSrExhaustive ||
        cfg.policy == PolicyId::kRandom) {
      need(enumeration_size(cfg) <= kEnumerationCap,
           "exhaustive enumeration of " +
               std::to_string(static_cast<long long>(enumeration_size(cfg))) +
               " selections exceeds the cap of 1e6; use policy = greedy");
    }
  } else {
    need(cfg.relays >= 1, "single mode needs at least one relay");
  }
  return out;
}

void validate(const SystemConfig& cfg) {
  const auto v = config_violations(cfg);
  if (v.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& line : v) msg += "\n  - " + line;
  throw ConfigError(msg);
}

}  // namespace relaysec
