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

#ifndef RELAYSEC_POLICIES_HPP_
#define RELAYSEC_POLICIES_HPP_

#include <span>
#include <vector>

#include "relaysec/buffers.hpp"
#include "relaysec/channel.hpp"
#include "relaysec/config.hpp"
#include "relaysec/metrics.hpp"
#include "relaysec/rng.hpp"

namespace relaysec {

/// Output of every selection rule. In single-antenna mode exactly one of
/// `receivers` / `jammers` holds one relay (the active hop). Ties always
/// resolve to the lowest relay index.
struct Selection {
  std::vector<int> receivers;
  std::vector<int> jammers;
  double score = 0.0;  // criterion value, larger is better
  bool outage = false;

  bool operator==(const Selection&) const = default;
};

Selection outage_selection();

// ---------------------------------------------------------------------------
// Single-antenna link selection: one hop, one relay per slot.

struct SingleLinks {
  std::vector<Complex> source_relay;  // h_{S,R_i}
  std::vector<Complex> relay_dest;    // h_{R_i,D}
  std::vector<Complex> relay_eav;     // h_{R_i,e}
  Complex source_eav;                 // h_{se}
  double snr = 1.0;                   // P / noise_var
};

SingleLinks single_links(const SystemConfig& cfg, const ChannelSet& cs);

// log2[(1 + snr |h|^2) / (1 + snr |g|^2)], clamped at 0.
double link_secrecy(Complex legit, Complex eav, double snr);

// Picks the hop with the larger (larger-is-better) value; ties and a missing
// receive side go to the transmit hop. An index of -1 marks an empty side.
Selection arbitrate_hops(int rx_relay, double rx_value, int tx_relay,
                         double tx_value);

Selection select_max_min(const SingleLinks& links, const CandidateSet& cand);
Selection select_max_ratio(const SingleLinks& links, const CandidateSet& cand);

// Per-relay residuals of the pilot probes, indexed by pool relay.
struct MlResiduals {
  std::vector<double> receive;   // source -> relay probe
  std::vector<double> transmit;  // relay -> destination probe
};

// |y / (amplitude h) - reference|: residual after equalizing the probe.
double equalized_residual(Complex y, Complex h, double amplitude,
                          Complex reference);

Selection select_ml(const MlResiduals& residuals, const CandidateSet& cand);

/// Secrecy-rate selection over both hops. `forwarded` holds each relay's
/// head-of-line block (read only in strict mode). Default mode maximizes
/// (1 + snr|h_legit|^2)/(1 + snr|h_eav|^2) on both hops; strict mode follows
/// the printed argmin / min-over-transmit form with |1 + h s|.
Selection select_sr_single(const SingleLinks& links, const CandidateSet& cand,
                           std::span<const Complex> forwarded, Complex pilot,
                           bool strict);

Selection select_random_single(const CandidateSet& cand, Rng& rng);

// ---------------------------------------------------------------------------
// Multi-user MIMO selection: T receiving relays and K jammers per slot.

struct MimoContext {
  const SystemConfig& cfg;
  const ChannelSet& cs;
  std::span<const CMatrix> xi;  // head-of-line block quality per relay
  const CandidateSet& cand;
};

// Whether a receive set of size a and a disjoint jammer set of size b exist.
bool selection_feasible(std::span<const int> receive,
                        std::span<const int> transmit, int a, int b);

/// Enumerates every feasible disjoint (receivers, jammers) pair and returns
/// the maximizer of the selection objective.
Selection select_sr_exhaustive(const MimoContext& ctx,
                               SelectionObjective& objective);

/// T rounds; each adds the (receiver, jammer) pair that maximizes the
/// objective of the partial selection, among pairs that keep a full
/// selection reachable.
Selection select_greedy(const MimoContext& ctx, SelectionObjective& objective);

// The channel families a selector without eavesdropper CSI may read.
struct LegitimateChannels {
  std::vector<CMatrix> relay;
  std::vector<std::vector<CMatrix>> jam_user;
  std::vector<std::vector<CMatrix>> jam_relay;
};

LegitimateChannels legitimate_channels(const ChannelSet& cs);

// Per-stream antenna-block precoders used while the receiving set is still
// unknown: stream j occupies source antennas [j N_i, (j+1) N_i).
std::vector<CMatrix> canonical_precoders(const SystemConfig& cfg);

/// Partial-CSI selection: jammers maximize the users' term, then each
/// stream's receiver maximizes partial_csi_score. Reads no eavesdropper
/// channel by construction.
Selection select_sr_partial(const SystemConfig& cfg,
                            const LegitimateChannels& channels,
                            std::span<const CMatrix> xi,
                            const CandidateSet& cand,
                            std::span<const CVector> stream_symbols);

// Uniform over all feasible full selections.
Selection select_random_mimo(const MimoContext& ctx, Rng& rng);

// Calls fn(combination) for every k-subset of items in lexicographic order.
template <typename Fn>
void for_each_combination(std::span<const int> items, int k, Fn&& fn) {
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> combo(k);
  while (true) {
    for (int i = 0; i < k; ++i) combo[i] = items[idx[i]];
    fn(std::span<const int>(combo));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace relaysec

#endif  // RELAYSEC_POLICIES_HPP_
