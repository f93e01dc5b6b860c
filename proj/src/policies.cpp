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

#include "relaysec/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "relaysec/error.hpp"

namespace relaysec {

namespace {

constexpr double kRatioFloor = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Argmax of value(i) over candidates; -1 when empty. Strict comparison keeps
// the lowest index on ties.
template <typename Value>
std::pair<int, double> best_of(std::span<const int> candidates, Value&& value) {
  int best = -1;
  double best_v = kNegInf;
  for (int i : candidates) {
    const double v = value(i);
    if (best < 0 || v > best_v) {
      best = i;
      best_v = v;
    }
  }
  return {best, best_v};
}

bool contains(const std::vector<int>& set, int v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

std::vector<int> minus(std::span<const int> items, const std::vector<int>& a,
                       const std::vector<int>& b = {}) {
  std::vector<int> out;
  for (int v : items) {
    if (!contains(a, v) && !contains(b, v)) out.push_back(v);
  }
  return out;
}

double reciprocal(double residual) {
  return residual > 0.0 ? 1.0 / residual
                        : std::numeric_limits<double>::infinity();
}

}  // namespace

Selection outage_selection() {
  Selection s;
  s.outage = true;
  return s;
}

SingleLinks single_links(const SystemConfig& cfg, const ChannelSet& cs) {
  SingleLinks l;
  const std::size_t n = cs.relay.size();
  l.source_relay.reserve(n);
  l.relay_dest.reserve(n);
  l.relay_eav.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    l.source_relay.push_back(cs.relay[i](0, 0));
    l.relay_dest.push_back(cs.jam_user[i].at(0)(0, 0));
    l.relay_eav.push_back(cs.jam_eav[i].at(0)(0, 0));
  }
  l.source_eav = cs.eav.at(0)(0, 0);
  l.snr = cfg.snr();
  return l;
}

double link_secrecy(Complex legit, Complex eav, double snr) {
  return std::max(0.0, std::log2((1.0 + snr * std::norm(legit)) /
                                 (1.0 + snr * std::norm(eav))));
}

Selection arbitrate_hops(int rx_relay, double rx_value, int tx_relay,
                         double tx_value) {
  if (rx_relay < 0 && tx_relay < 0) return outage_selection();
  Selection s;
  if (tx_relay >= 0 && (rx_relay < 0 || tx_value >= rx_value)) {
    s.jammers = {tx_relay};
    s.score = tx_value;
  } else {
    s.receivers = {rx_relay};
    s.score = rx_value;
  }
  return s;
}

Selection select_max_min(const SingleLinks& links, const CandidateSet& cand) {
  std::set<int> usable(cand.receive.begin(), cand.receive.end());
  usable.insert(cand.transmit.begin(), cand.transmit.end());
  const std::vector<int> pool(usable.begin(), usable.end());
  const auto [relay, value] = best_of(pool, [&](int i) {
    return std::min(std::norm(links.source_relay[i]),
                    std::norm(links.relay_dest[i]));
  });
  if (relay < 0) return outage_selection();
  Selection s;
  s.score = value;
  if (contains(cand.transmit, relay)) {
    s.jammers = {relay};
  } else {
    s.receivers = {relay};
  }
  return s;
}

Selection select_max_ratio(const SingleLinks& links, const CandidateSet& cand) {
  const double se = std::max(std::norm(links.source_eav), kRatioFloor);
  const auto [rx, eta1] = best_of(cand.receive, [&](int i) {
    return std::norm(links.source_relay[i]) / se;
  });
  const auto [tx, eta2] = best_of(cand.transmit, [&](int i) {
    return std::norm(links.relay_dest[i]) /
           std::max(std::norm(links.relay_eav[i]), kRatioFloor);
  });
  return arbitrate_hops(rx, eta1, tx, eta2);
}

double equalized_residual(Complex y, Complex h, double amplitude,
                          Complex reference) {
  const Complex g = amplitude * h;
  if (std::abs(g) == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(y / g - reference);
}

Selection select_ml(const MlResiduals& residuals, const CandidateSet& cand) {
  // Minimum residual on each hop, compared as reciprocals.
  const auto [rx, inv1] = best_of(cand.receive, [&](int i) {
    return reciprocal(residuals.receive.at(i));
  });
  const auto [tx, inv2] = best_of(cand.transmit, [&](int i) {
    return reciprocal(residuals.transmit.at(i));
  });
  return arbitrate_hops(rx, inv1, tx, inv2);
}

Selection select_sr_single(const SingleLinks& links, const CandidateSet& cand,
                           std::span<const Complex> forwarded, Complex pilot,
                           bool strict) {
  if (!strict) {
    const double snr = links.snr;
    const double se = 1.0 + snr * std::norm(links.source_eav);
    const auto [rx, eta1] = best_of(cand.receive, [&](int i) {
      return (1.0 + snr * std::norm(links.source_relay[i])) / se;
    });
    const auto [tx, eta2] = best_of(cand.transmit, [&](int i) {
      return (1.0 + snr * std::norm(links.relay_dest[i])) /
             (1.0 + snr * std::norm(links.relay_eav[i]));
    });
    Selection s = arbitrate_hops(rx, eta1, tx, eta2);
    if (!s.outage) s.score = std::log2(s.score);
    return s;
  }
  // As printed: eta1 maximized, eta2 minimized, then the smaller eta wins.
  const double se =
      std::max(std::abs(1.0 + links.source_eav * pilot), kRatioFloor);
  const auto [rx, eta1] = best_of(cand.receive, [&](int i) {
    return std::abs(1.0 + links.source_relay[i] * pilot) / se;
  });
  const auto [tx, neg_eta2] = best_of(cand.transmit, [&](int i) {
    const Complex y = forwarded[i];
    return -std::abs(1.0 + links.relay_dest[i] * y) /
           std::max(std::abs(1.0 + links.relay_eav[i] * y), kRatioFloor);
  });
  // argmin over (eta1, eta2) == argmax over (-eta1, -eta2).
  Selection s = arbitrate_hops(rx, -eta1, tx, neg_eta2);
  if (!s.outage) s.score = -s.score;
  return s;
}

Selection select_random_single(const CandidateSet& cand, Rng& rng) {
  const std::size_t n = cand.receive.size() + cand.transmit.size();
  if (n == 0) return outage_selection();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t k = pick(rng);
  Selection s;
  if (k < cand.receive.size()) {
    s.receivers = {cand.receive[k]};
  } else {
    s.jammers = {cand.transmit[k - cand.receive.size()]};
  }
  return s;
}

bool selection_feasible(std::span<const int> receive,
                        std::span<const int> transmit, int a, int b) {
  std::set<int> both(receive.begin(), receive.end());
  both.insert(transmit.begin(), transmit.end());
  return static_cast<int>(receive.size()) >= a &&
         static_cast<int>(transmit.size()) >= b &&
         static_cast<int>(both.size()) >= a + b;
}

Selection select_sr_exhaustive(const MimoContext& ctx,
                               SelectionObjective& objective) {
  const int t = ctx.cfg.receivers;
  const int k = ctx.cfg.jammers;
  Selection best = outage_selection();
  best.score = kNegInf;
  for_each_combination(ctx.cand.receive, t, [&](std::span<const int> rx) {
    const std::vector<int> rx_v(rx.begin(), rx.end());
    const std::vector<int> tx_pool = minus(ctx.cand.transmit, rx_v);
    for_each_combination(tx_pool, k, [&](std::span<const int> tx) {
      const double v = objective.score(rx, tx);
      if (best.outage || v > best.score) {
        best.receivers = rx_v;
        best.jammers.assign(tx.begin(), tx.end());
        best.score = v;
        best.outage = false;
      }
    });
  });
  if (best.outage) return outage_selection();
  return best;
}

Selection select_greedy(const MimoContext& ctx, SelectionObjective& objective) {
  const int t = ctx.cfg.receivers;
  const int k = ctx.cfg.jammers;
  if (!selection_feasible(ctx.cand.receive, ctx.cand.transmit, t, k)) {
    return outage_selection();
  }
  Selection sel;
  const int rounds = std::min(t, k);
  for (int step = 0; step < rounds; ++step) {
    int best_m = -1;
    int best_j = -1;
    double best_v = kNegInf;
    for (int m : ctx.cand.receive) {
      if (contains(sel.receivers, m) || contains(sel.jammers, m)) continue;
      for (int j : ctx.cand.transmit) {
        if (j == m || contains(sel.receivers, j) || contains(sel.jammers, j)) {
          continue;
        }
        std::vector<int> rx = sel.receivers;
        std::vector<int> tx = sel.jammers;
        rx.push_back(m);
        tx.push_back(j);
        const std::vector<int> rx_left = minus(ctx.cand.receive, rx, tx);
        const std::vector<int> tx_left = minus(ctx.cand.transmit, rx, tx);
        if (!selection_feasible(rx_left, tx_left, t - step - 1,
                                k - step - 1)) {
          continue;
        }
        std::sort(rx.begin(), rx.end());
        std::sort(tx.begin(), tx.end());
        const double v = objective.score(rx, tx);
        if (best_m < 0 || v > best_v) {
          best_m = m;
          best_j = j;
          best_v = v;
        }
      }
    }
    if (best_m < 0) {
      // Unreachable when the initial state is feasible; kept as a guard.
      sel.outage = true;
      return sel;
    }
    sel.receivers.push_back(best_m);
    sel.jammers.push_back(best_j);
    sel.score = best_v;
  }
  std::sort(sel.receivers.begin(), sel.receivers.end());
  std::sort(sel.jammers.begin(), sel.jammers.end());
  return sel;
}

LegitimateChannels legitimate_channels(const ChannelSet& cs) {
  return LegitimateChannels{cs.relay, cs.jam_user, cs.jam_relay};
}

std::vector<CMatrix> canonical_precoders(const SystemConfig& cfg) {
  const Antennas a = cfg.antennas();
  std::vector<CMatrix> out;
  for (int j = 0; j < cfg.receivers; ++j) {
    CMatrix u = CMatrix::Zero(a.source, a.relay);
    u.middleRows(static_cast<Eigen::Index>(j) * a.relay, a.relay) =
        identity(a.relay);
    out.push_back(std::move(u));
  }
  return out;
}

Selection select_sr_partial(const SystemConfig& cfg,
                            const LegitimateChannels& channels,
                            std::span<const CMatrix> xi,
                            const CandidateSet& cand,
                            std::span<const CVector> stream_symbols) {
  const int t = cfg.receivers;
  const int k = cfg.jammers;
  if (!selection_feasible(cand.receive, cand.transmit, t, k)) {
    return outage_selection();
  }
  if (static_cast<int>(stream_symbols.size()) != t) {
    throw ShapeError("select_sr_partial: need one symbol vector per stream");
  }
  // Jammers first, scored on the users' side only.
  std::vector<int> jammers;
  double best_user = kNegInf;
  for_each_combination(cand.transmit, k, [&](std::span<const int> tx) {
    const std::vector<int> tx_v(tx.begin(), tx.end());
    if (static_cast<int>(minus(cand.receive, tx_v).size()) < t) return;
    double v = 0.0;
    for (int r = 0; r < cfg.antennas().users; ++r) {
      v += log_det_i_plus(gamma_user_full(cfg, channels.jam_user, xi, r, tx));
    }
    if (jammers.empty() || v > best_user) {
      jammers = tx_v;
      best_user = v;
    }
  });

  const std::vector<CMatrix> precoders = canonical_precoders(cfg);
  Selection sel;
  sel.jammers = jammers;
  sel.score = best_user;
  for (int stream = 0; stream < t; ++stream) {
    const CovariancePair cov = covariances(precoders, stream_symbols, stream);
    const std::vector<int> pool = minus(cand.receive, jammers, sel.receivers);
    const auto [m, value] = best_of(pool, [&](int i) {
      return partial_csi_score(channels.relay[i], cov, cfg.partial_csi_form);
    });
    sel.receivers.push_back(m);
    sel.score += partial_csi_channel_term(channels.relay[m], cov);
    (void)value;
  }
  return sel;
}

Selection select_random_mimo(const MimoContext& ctx, Rng& rng) {
  std::vector<Selection> options;
  for_each_combination(ctx.cand.receive, ctx.cfg.receivers,
                       [&](std::span<const int> rx) {
    const std::vector<int> rx_v(rx.begin(), rx.end());
    const std::vector<int> tx_pool = minus(ctx.cand.transmit, rx_v);
    for_each_combination(tx_pool, ctx.cfg.jammers, [&](std::span<const int> tx) {
      Selection s;
      s.receivers = rx_v;
      s.jammers.assign(tx.begin(), tx.end());
      options.push_back(std::move(s));
    });
  });
  if (options.empty()) return outage_selection();
  std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
  return options[pick(rng)];
}

}  // namespace relaysec
