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

#ifndef RELAYSEC_CHANNEL_HPP_
#define RELAYSEC_CHANNEL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "relaysec/config.hpp"
#include "relaysec/numerics.hpp"

namespace relaysec {

/// One slot's flat Rayleigh realization of every channel family. Relays and
/// jammers share the pool index space: jammer k is relay k transmitting.
struct ChannelSet {
  std::uint64_t slot = 0;
  std::vector<CMatrix> relay;                    // [i]     N_i x N_t
  std::vector<CMatrix> eav;                      // [e]     N_e x N_t
  std::vector<std::vector<CMatrix>> jam_eav;     // [k][e]  N_e x N_k
  std::vector<std::vector<CMatrix>> jam_user;    // [k][r]  N_r x N_k
  std::vector<std::vector<CMatrix>> jam_relay;   // [k][i]  N_i x N_k

  bool operator==(const ChannelSet&) const;
};

/// Draws every family from its own (seed, trial, slot, family) substream.
/// Entries are i.i.d. CN(0, 1); power lives in the P/N factors of the
/// metrics, not in the channels.
ChannelSet draw_channels(const SystemConfig& cfg, std::uint64_t trial,
                         std::uint64_t slot);

/// Replaces the eavesdropper families (eav, jam_eav) with draws from an
/// unrelated seed. Used to show a selector ignores eavesdropper CSI.
void redraw_eavesdropper_channels(ChannelSet& cs, const SystemConfig& cfg,
                                  std::uint64_t seed);

// Horizontal stacks [H_{k1 x} H_{k2 x} ...] over the selected jammers, toward
// user r, relay i or eavesdropper e. Throw SelectionError on an empty
// selection and std::out_of_range on a bad index.
CMatrix stack_jammer_to_user(const ChannelSet& cs, std::span<const int> jammers,
                             int r);
CMatrix stack_jammer_to_relay(const ChannelSet& cs,
                              std::span<const int> jammers, int i);
CMatrix stack_jammer_to_eav(const ChannelSet& cs, std::span<const int> jammers,
                            int e);

/// Vertical stack of the selected relays' source channels, the matrix the
/// source zero-forces against.
CMatrix stack_relay_channels(const ChannelSet& cs,
                             std::span<const int> receivers);

}  // namespace relaysec

#endif  // RELAYSEC_CHANNEL_HPP_
