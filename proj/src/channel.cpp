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

#include "relaysec/channel.hpp"

#include <stdexcept>
#include <string>

#include "relaysec/error.hpp"
#include "relaysec/rng.hpp"

namespace relaysec {

namespace {

bool same(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols() ||
        a[i] != b[i]) {
      return false;
    }
  }
  return true;
}

bool same(const std::vector<std::vector<CMatrix>>& a,
          const std::vector<std::vector<CMatrix>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same(a[i], b[i])) return false;
  }
  return true;
}

std::vector<CMatrix> draw_family(Rng& rng, int count, int rows, int cols) {
  std::vector<CMatrix> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(complex_gaussian_matrix(rng, rows, cols));
  }
  return out;
}

std::vector<std::vector<CMatrix>> draw_family2(Rng& rng, int outer, int inner,
                                               int rows, int cols) {
  std::vector<std::vector<CMatrix>> out;
  out.reserve(outer);
  for (int k = 0; k < outer; ++k) {
    out.push_back(draw_family(rng, inner, rows, cols));
  }
  return out;
}

CMatrix hstack(std::span<const int> jammers,
               const std::vector<std::vector<CMatrix>>& family, int target,
               const char* what) {
  if (jammers.empty()) {
    throw SelectionError(std::string(what) + ": empty jammer selection");
  }
  const CMatrix& first = family.at(jammers[0]).at(target);
  CMatrix out(first.rows(), first.cols() * static_cast<Eigen::Index>(jammers.size()));
  Eigen::Index col = 0;
  for (int k : jammers) {
    const CMatrix& block = family.at(k).at(target);
    out.middleCols(col, block.cols()) = block;
    col += block.cols();
  }
  return out;
}

}  // namespace

bool ChannelSet::operator==(const ChannelSet& o) const {
  return slot == o.slot && same(relay, o.relay) && same(eav, o.eav) &&
         same(jam_eav, o.jam_eav) && same(jam_user, o.jam_user) &&
         same(jam_relay, o.jam_relay);
}

ChannelSet draw_channels(const SystemConfig& cfg, std::uint64_t trial,
                         std::uint64_t slot) {
  const Antennas a = cfg.antennas();
  const int pool = cfg.relays;
  ChannelSet cs;
  cs.slot = slot;
  {
    Rng rng = make_stream(cfg.seed, trial, slot, Stream::kRelayChannel);
    cs.relay = draw_family(rng, pool, a.relay, a.source);
  }
  {
    Rng rng = make_stream(cfg.seed, trial, slot, Stream::kEavChannel);
    cs.eav = draw_family(rng, a.eavesdroppers, a.eav, a.source);
  }
  {
    Rng rng = make_stream(cfg.seed, trial, slot, Stream::kJamEavChannel);
    cs.jam_eav = draw_family2(rng, pool, a.eavesdroppers, a.eav, a.jammer);
  }
  {
    Rng rng = make_stream(cfg.seed, trial, slot, Stream::kJamUserChannel);
    cs.jam_user = draw_family2(rng, pool, a.users, a.user, a.jammer);
  }
  {
    Rng rng = make_stream(cfg.seed, trial, slot, Stream::kJamRelayChannel);
    cs.jam_relay = draw_family2(rng, pool, pool, a.relay, a.jammer);
  }
  return cs;
}

void redraw_eavesdropper_channels(ChannelSet& cs, const SystemConfig& cfg,
                                  std::uint64_t seed) {
  const Antennas a = cfg.antennas();
  Rng rng(seed);
  cs.eav = draw_family(rng, a.eavesdroppers, a.eav, a.source);
  cs.jam_eav = draw_family2(rng, cfg.relays, a.eavesdroppers, a.eav, a.jammer);
}

CMatrix stack_jammer_to_user(const ChannelSet& cs, std::span<const int> jammers,
                             int r) {
  return hstack(jammers, cs.jam_user, r, "stack_jammer_to_user");
}

CMatrix stack_jammer_to_relay(const ChannelSet& cs,
                              std::span<const int> jammers, int i) {
  return hstack(jammers, cs.jam_relay, i, "stack_jammer_to_relay");
}

CMatrix stack_jammer_to_eav(const ChannelSet& cs, std::span<const int> jammers,
                            int e) {
  return hstack(jammers, cs.jam_eav, e, "stack_jammer_to_eav");
}

CMatrix stack_relay_channels(const ChannelSet& cs,
                             std::span<const int> receivers) {
  if (receivers.empty()) {
    throw SelectionError("stack_relay_channels: empty receiver selection");
  }
  const CMatrix& first = cs.relay.at(receivers[0]);
  CMatrix out(first.rows() * static_cast<Eigen::Index>(receivers.size()),
              first.cols());
  Eigen::Index row = 0;
  for (int i : receivers) {
    const CMatrix& block = cs.relay.at(i);
    out.middleRows(row, block.rows()) = block;
    row += block.rows();
  }
  return out;
}

}  // namespace relaysec
