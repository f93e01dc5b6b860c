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

#ifndef RELAYSEC_ENGINE_HPP_
#define RELAYSEC_ENGINE_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include "relaysec/buffers.hpp"
#include "relaysec/channel.hpp"
#include "relaysec/config.hpp"
#include "relaysec/policies.hpp"
#include "relaysec/rng.hpp"

namespace relaysec {

/// Received signals of one multi-user MIMO slot.
struct SlotSignals {
  std::vector<CVector> relay_rx;    // per selected receiver, in order
  std::vector<CVector> inter_user;  // residual sum_{j != i} H_i U_j s_j
  std::vector<CVector> iri;         // H_Ki x_R at each receiver
  std::vector<CVector> eav_rx;      // per eavesdropper
  std::vector<CVector> user_rx;     // per user
  CVector relay_tx;                 // stacked relay transmit vector x_R
};

/// Builds the relay, eavesdropper and destination receptions for a MIMO
/// slot. `precoder` is the stacked source precoder [U_1 ... U_T] and
/// `symbols` the per-stream data vectors. Jammers forward their
/// head-of-line blocks (zero-forced toward the users when K = M and the
/// stacked jammer-to-user channel allows it). With iri_cancellation the
/// inter-relay term is removed from the relay receptions. Throws
/// BufferError if a selected jammer's buffer is empty.
SlotSignals synthesize_slot_signals(const SystemConfig& cfg,
                                    const ChannelSet& cs,
                                    const CMatrix& precoder,
                                    std::span<const CVector> symbols,
                                    std::span<const RelayBuffer> buffers,
                                    const Selection& selection, Rng& noise);

struct SlotOutcome {
  std::int64_t slot = 0;
  Selection selection;
  bool outage = false;  // no secrecy delivered this slot by construction
  double secrecy_rate = 0.0;
  std::vector<double> per_user_rates;
  std::vector<double> per_eav_rates;
  std::vector<int> occupancies;
  double interference_norm = 0.0;  // max residual inter-user term (MIMO)
};

// Mutable state of one trial: its buffers and flow counters.
struct TrialState {
  TrialState(const SystemConfig& cfg, std::uint64_t trial);

  SystemConfig cfg;
  std::uint64_t trial;
  std::vector<RelayBuffer> buffers;
  std::uint64_t enqueued = 0;
  std::uint64_t dequeued = 0;

  int total_occupancy() const;
};

/// Advances one slot: draws channels, selects, synthesizes, updates buffers
/// and returns the slot's secrecy accounting. Outage is a value, not an
/// error.
SlotOutcome step_slot(TrialState& state, std::int64_t slot);

struct TrialResult {
  double mean_secrecy_rate = 0.0;
  int outage_slots = 0;
  int measured_slots = 0;
  std::uint64_t enqueued = 0;
  std::uint64_t dequeued = 0;
  int final_occupancy = 0;
  std::vector<SlotOutcome> trace;
};

// Warm-up then cfg.slots measured slots.
TrialResult run_trial(const SystemConfig& cfg, std::uint64_t trial,
                      bool keep_trace);

struct RunResult {
  SystemConfig config;
  double mean_secrecy_rate = 0.0;
  double std_error = 0.0;
  double outage_fraction = 0.0;
  std::vector<double> trial_means;
  std::vector<SlotOutcome> trace;  // measured slots, trial-major
  std::uint64_t enqueued = 0;
  std::uint64_t dequeued = 0;
  std::uint64_t final_occupancy = 0;
  double wall_seconds = 0.0;
};

/// Runs cfg.trials trials in parallel (OpenMP) and reduces them in trial
/// order, so the result matches run_monte_carlo_serial exactly.
RunResult run_monte_carlo(const SystemConfig& cfg, bool keep_trace = false);

// Single-threaded reference path.
RunResult run_monte_carlo_serial(const SystemConfig& cfg,
                                 bool keep_trace = false);

enum class SweepVar { kNone, kPower, kBufferSize, kThreshold };

std::string_view to_string(SweepVar v);
std::optional<SweepVar> parse_sweep_var(std::string_view s);

// Copy of cfg with the sweep variable set. Throws ConfigError for a
// non-integral buffer size.
SystemConfig apply_sweep(const SystemConfig& cfg, SweepVar var, double value);

/// One run per (sweep value, policy), value-major. Every run shares the
/// seed, so all policies see the same channel draws at each point.
std::vector<RunResult> run_policy_sweep(const SystemConfig& cfg,
                                        std::span<const PolicyId> policies,
                                        SweepVar var,
                                        std::span<const double> values);

}  // namespace relaysec

#endif  // RELAYSEC_ENGINE_HPP_
