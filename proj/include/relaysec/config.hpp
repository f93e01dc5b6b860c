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

#ifndef RELAYSEC_CONFIG_HPP_
#define RELAYSEC_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaysec/numerics.hpp"

namespace relaysec {

enum class Mode { kSingle, kMimo };

enum class PolicyId {
  kMaxMin,
  kMaxRatio,
  kMl,
  kSrSingle,
  kSrExhaustive,
  kSrPartial,
  kGreedy,
  kRandom,
};

// Which closed form the partial-CSI score uses: the determinant-ratio form
// (canonical) or the additive form with R_I/R_d inside the determinants.
enum class PartialCsiForm { kRatio, kAdditive };

std::string_view to_string(Mode m);
std::string_view to_string(PolicyId p);
std::string_view to_string(PartialCsiForm f);
std::optional<Mode> parse_mode(std::string_view s);
std::optional<PolicyId> parse_policy(std::string_view s);
std::optional<PartialCsiForm> parse_partial_csi_form(std::string_view s);

// All policy names, in documentation order.
const std::vector<PolicyId>& all_policies();
std::string policy_names_joined();

// Whether a policy is defined for a simulation mode.
bool policy_supports(PolicyId p, Mode m);

// Antenna counts actually used for channel draws (all ones in single mode).
struct Antennas {
  int source = 1;
  int relay = 1;
  int jammer = 1;
  int user = 1;
  int eav = 1;
  int users = 1;
  int eavesdroppers = 1;
};

/// Every dimensional, power, buffer and run parameter of a simulation.
/// Defaults are the multi-user MIMO reference scenario: a 6-antenna source,
/// 2-antenna relays, three 2-antenna users and three 2-antenna eavesdroppers.
struct SystemConfig {
  Mode mode = Mode::kMimo;
  int n_t = 6;  // source antennas
  int n_i = 2;  // relay antennas
  int n_k = 2;  // jammer antennas
  int n_r = 2;  // user antennas
  int n_e = 2;  // eavesdropper antennas
  int users = 3;          // M
  int eavesdroppers = 3;  // N
  int receivers = 3;      // T, relays receiving from the source per slot
  int jammers = 3;        // K, relays forwarding/jamming per slot
  int relays = 6;         // relay pool size
  double power = 10.0;    // P, linear
  double noise_var = 1.0;
  int buffer_size = 4;  // L
  int slots = 100;
  int trials = 100;
  std::uint64_t seed = 1;
  int warmup = -1;  // negative: 2L
  bool iri_cancellation = true;
  double selection_threshold = 0.0;
  PolicyId policy = PolicyId::kSrExhaustive;
  double singular_threshold = kDefaultSingularThreshold;
  bool store_noisy_blocks = false;
  PartialCsiForm partial_csi_form = PartialCsiForm::kRatio;
  bool sr_strict_printed = false;

  int warmup_slots() const { return warmup < 0 ? 2 * buffer_size : warmup; }
  Antennas antennas() const;
  double snr() const { return power / noise_var; }

  bool operator==(const SystemConfig&) const = default;
};

// Largest number of (receive set, jammer set) pairs exhaustive search may
// enumerate per slot.
inline constexpr double kEnumerationCap = 1e6;

double binomial(int n, int k);
double enumeration_size(const SystemConfig& cfg);

/// Every violated invariant, one message each; empty when valid.
std::vector<std::string> config_violations(const SystemConfig& cfg);

/// Throws ConfigError listing all violations.
void validate(const SystemConfig& cfg);

}  // namespace relaysec

#endif  // RELAYSEC_CONFIG_HPP_
