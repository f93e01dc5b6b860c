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

#include "relaysec/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#include "relaysec/error.hpp"
#include "relaysec/metrics.hpp"

namespace relaysec {

namespace {

CVector noise_vector(Rng& rng, Eigen::Index n, double variance) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = variance > 0.0 ? complex_gaussian(rng, variance) : Complex{};
  }
  return v;
}

// Relay-side transmit vector: stacked head-of-line blocks, zero-forced
// toward the users when one block per user and the channel allows it.
CVector relay_transmit(const SystemConfig& cfg, const ChannelSet& cs,
                       std::span<const RelayBuffer> buffers,
                       const std::vector<int>& jammers) {
  const Antennas a = cfg.antennas();
  CVector blocks(static_cast<Eigen::Index>(jammers.size()) * a.jammer);
  for (std::size_t p = 0; p < jammers.size(); ++p) {
    const StoredBlock& b = buffers[jammers[p]].front();
    blocks.segment(static_cast<Eigen::Index>(p) * a.jammer, a.jammer) =
        b.signal.col(0);
  }
  const double amp = std::sqrt(cfg.power / a.jammer);
  const bool one_per_user = static_cast<int>(jammers.size()) == a.users &&
                            a.user == a.jammer;
  if (one_per_user) {
    CMatrix g(static_cast<Eigen::Index>(a.users) * a.user, blocks.size());
    for (int r = 0; r < a.users; ++r) {
      g.middleRows(static_cast<Eigen::Index>(r) * a.user, a.user) =
          stack_jammer_to_user(cs, jammers, r);
    }
    try {
      return amp * (zf_precoder(g, cfg.singular_threshold) * blocks);
    } catch (const SingularChannelError&) {
      // fall through to unprecoded forwarding
    }
  }
  return amp * blocks;
}

TrialResult trial_loop(const SystemConfig& cfg, std::uint64_t trial,
                       bool keep_trace) {
  TrialState state(cfg, trial);
  TrialResult out;
  const int warm = cfg.warmup_slots();
  double sum = 0.0;
  for (int s = 0; s < warm + cfg.slots; ++s) {
    SlotOutcome o = step_slot(state, s);
    if (s < warm) continue;
    sum += o.secrecy_rate;
    out.outage_slots += o.outage ? 1 : 0;
    ++out.measured_slots;
    if (keep_trace) out.trace.push_back(std::move(o));
  }
  out.mean_secrecy_rate = sum / out.measured_slots;
  out.enqueued = state.enqueued;
  out.dequeued = state.dequeued;
  out.final_occupancy = state.total_occupancy();
  return out;
}

RunResult reduce(const SystemConfig& cfg, std::vector<TrialResult>& trials,
                 bool keep_trace) {
  RunResult r;
  r.config = cfg;
  const auto n = static_cast<double>(trials.size());
  long outages = 0;
  long measured = 0;
  for (TrialResult& t : trials) {
    r.trial_means.push_back(t.mean_secrecy_rate);
    outages += t.outage_slots;
    measured += t.measured_slots;
    r.enqueued += t.enqueued;
    r.dequeued += t.dequeued;
    r.final_occupancy += static_cast<std::uint64_t>(t.final_occupancy);
    if (keep_trace) {
      std::move(t.trace.begin(), t.trace.end(), std::back_inserter(r.trace));
    }
  }
  r.mean_secrecy_rate =
      std::accumulate(r.trial_means.begin(), r.trial_means.end(), 0.0) / n;
  if (trials.size() > 1) {
    double ss = 0.0;
    for (double m : r.trial_means) {
      ss += (m - r.mean_secrecy_rate) * (m - r.mean_secrecy_rate);
    }
    r.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  r.outage_fraction = static_cast<double>(outages) / static_cast<double>(measured);
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

SlotOutcome step_single(TrialState& st, std::int64_t slot) {
  const SystemConfig& cfg = st.cfg;
  const ChannelSet cs = draw_channels(cfg, st.trial, slot);
  const SingleLinks links = single_links(cfg, cs);
  const CandidateSet cand = build_candidates(st.buffers);
  const auto pool = static_cast<std::size_t>(cfg.relays);

  Rng sym = make_stream(cfg.seed, st.trial, slot, Stream::kSymbols);
  const Complex pilot = qpsk(sym);
  Rng noise = make_stream(cfg.seed, st.trial, slot, Stream::kNoise);
  std::vector<Complex> n_rx(pool), n_tx(pool);
  for (auto& n : n_rx) n = complex_gaussian(noise, cfg.noise_var);
  for (auto& n : n_tx) n = complex_gaussian(noise, cfg.noise_var);

  std::vector<Complex> forwarded(pool);
  for (std::size_t i = 0; i < pool; ++i) {
    if (!st.buffers[i].empty()) forwarded[i] = st.buffers[i].front().signal(0, 0);
  }
  const double amp = std::sqrt(cfg.power);
  std::vector<Complex> y_rx(pool);
  for (std::size_t i = 0; i < pool; ++i) {
    y_rx[i] = amp * links.source_relay[i] * pilot + n_rx[i];
  }

  Selection sel;
  switch (cfg.policy) {
    case PolicyId::kMaxMin:
      sel = select_max_min(links, cand);
      break;
    case PolicyId::kMaxRatio:
      sel = select_max_ratio(links, cand);
      break;
    case PolicyId::kSrSingle:
      sel = select_sr_single(links, cand, forwarded, pilot,
                             cfg.sr_strict_printed);
      break;
    case PolicyId::kMl: {
      MlResiduals res{std::vector<double>(pool), std::vector<double>(pool)};
      for (std::size_t i = 0; i < pool; ++i) {
        res.receive[i] =
            equalized_residual(y_rx[i], links.source_relay[i], amp, pilot);
        const Complex y_d = amp * links.relay_dest[i] * forwarded[i] + n_tx[i];
        res.transmit[i] =
            equalized_residual(y_d, links.relay_dest[i], amp, forwarded[i]);
      }
      sel = select_ml(res, cand);
      break;
    }
    case PolicyId::kRandom: {
      Rng rng = make_stream(cfg.seed, st.trial, slot, Stream::kPolicy);
      sel = select_random_single(cand, rng);
      break;
    }
    default:
      throw ConfigError("policy not available in single mode");
  }

  SlotOutcome o;
  o.slot = slot;
  const bool gated =
      cfg.selection_threshold > 0.0 && !(sel.score >= cfg.selection_threshold);
  if (sel.outage || gated) {
    o.selection = sel;
    o.outage = true;
  } else if (!sel.receivers.empty()) {
    // Reception only: nothing reaches the destination this slot.
    const int i = sel.receivers[0];
    o.outage = true;
    o.selection = sel;
    StoredBlock b;
    b.signal = CMatrix::Constant(1, 1, cfg.store_noisy_blocks ? y_rx[i] : pilot);
    b.quality = CMatrix::Constant(1, 1, links.snr * std::norm(links.source_relay[i]));
    b.secrecy = link_secrecy(links.source_relay[i], links.source_eav, links.snr);
    b.origin_slot = slot;
    st.buffers[i].enqueue(std::move(b));
    ++st.enqueued;
  } else {
    // Delivery: a decode-and-forward block is as secret as its weaker hop.
    const int k = sel.jammers[0];
    const StoredBlock b = st.buffers[k].dequeue();
    ++st.dequeued;
    const double hop2 = link_secrecy(links.relay_dest[k], links.relay_eav[k], links.snr);
    o.secrecy_rate = std::min(b.secrecy, hop2);
    o.per_user_rates = {std::log2(1.0 + links.snr * std::norm(links.relay_dest[k]))};
    o.per_eav_rates = {std::log2(1.0 + links.snr * std::norm(links.relay_eav[k]))};
    o.selection = sel;
  }
  for (const auto& b : st.buffers) o.occupancies.push_back(b.occupancy());
  return o;
}

SlotOutcome step_mimo(TrialState& st, std::int64_t slot) {
  const SystemConfig& cfg = st.cfg;
  const Antennas a = cfg.antennas();
  const ChannelSet cs = draw_channels(cfg, st.trial, slot);
  const CandidateSet cand = build_candidates(st.buffers);

  std::vector<CMatrix> xi;
  xi.reserve(st.buffers.size());
  for (const auto& b : st.buffers) {
    xi.push_back(b.empty() ? CMatrix(CMatrix::Zero(a.relay, a.relay))
                           : b.front().quality);
  }
  Rng sym = make_stream(cfg.seed, st.trial, slot, Stream::kSymbols);
  std::vector<CVector> symbols;
  for (int j = 0; j < cfg.receivers; ++j) symbols.push_back(qpsk_vector(sym, a.relay));

  SelectionObjective objective(cfg, cs, xi);
  const MimoContext ctx{cfg, cs, xi, cand};
  Selection sel;
  switch (cfg.policy) {
    case PolicyId::kSrExhaustive:
      sel = select_sr_exhaustive(ctx, objective);
      break;
    case PolicyId::kGreedy:
      sel = select_greedy(ctx, objective);
      break;
    case PolicyId::kSrPartial:
      sel = select_sr_partial(cfg, legitimate_channels(cs), xi, cand, symbols);
      break;
    case PolicyId::kRandom: {
      Rng rng = make_stream(cfg.seed, st.trial, slot, Stream::kPolicy);
      sel = select_random_mimo(ctx, rng);
      break;
    }
    default:
      throw ConfigError("policy not available in mimo mode");
  }

  SlotOutcome o;
  o.slot = slot;
  bool receive_fallback = false;
  if (sel.outage) {
    // Cold start or a deadlocked buffer state: fill or drain by index.
    if (static_cast<int>(cand.receive.size()) >= cfg.receivers) {
      sel = Selection{};
      sel.receivers.assign(cand.receive.begin(), cand.receive.begin() + cfg.receivers);
      receive_fallback = true;
    } else if (static_cast<int>(cand.transmit.size()) >= cfg.jammers) {
      sel = Selection{};
      sel.jammers.assign(cand.transmit.begin(), cand.transmit.begin() + cfg.jammers);
      sel.score = objective.delivered_secrecy(sel.jammers);
    }
  }
  const bool gated = !receive_fallback && cfg.selection_threshold > 0.0 &&
                     !(sel.score >= cfg.selection_threshold);
  o.selection = sel;
  if (sel.outage || gated) {
    o.outage = true;
    for (const auto& b : st.buffers) o.occupancies.push_back(b.occupancy());
    return o;
  }

  CMatrix precoder = CMatrix::Zero(a.source, 0);
  if (!sel.receivers.empty()) {
    try {
      precoder = zf_precoder(stack_relay_channels(cs, sel.receivers),
                             cfg.singular_threshold);
    } catch (const SingularChannelError&) {
      o.outage = true;
      for (const auto& b : st.buffers) o.occupancies.push_back(b.occupancy());
      return o;
    }
  }
  Rng noise = make_stream(cfg.seed, st.trial, slot, Stream::kNoise);
  const SlotSignals sig = synthesize_slot_signals(cfg, cs, precoder, symbols,
                                                  st.buffers, sel, noise);
  for (const auto& v : sig.inter_user) {
    o.interference_norm = std::max(o.interference_norm, v.norm());
  }

  if (!sel.jammers.empty()) {
    for (int r = 0; r < a.users; ++r) {
      o.per_user_rates.push_back(
          log_det_i_plus(gamma_user_full(cfg, cs.jam_user, xi, r, sel.jammers)));
    }
    for (int e = 0; e < a.eavesdroppers; ++e) {
      o.per_eav_rates.push_back(
          log_det_i_plus(gamma_eav_full(cfg, cs, xi, e, sel.jammers)));
    }
    const double u = std::accumulate(o.per_user_rates.begin(), o.per_user_rates.end(), 0.0);
    const double v = std::accumulate(o.per_eav_rates.begin(), o.per_eav_rates.end(), 0.0);
    o.secrecy_rate = std::max(0.0, u - v);
  } else {
    o.outage = true;  // pure reception slot
  }

  for (int k : sel.jammers) {
    st.buffers[k].dequeue();
    ++st.dequeued;
  }
  for (std::size_t p = 0; p < sel.receivers.size(); ++p) {
    const int m = sel.receivers[p];
    StoredBlock b;
    b.signal = cfg.store_noisy_blocks ? CMatrix(sig.relay_rx[p]) : CMatrix(symbols[p]);
    b.quality = gamma_relay(cfg, cs, xi, m, sel.jammers, cfg.iri_cancellation);
    b.origin_slot = slot;
    st.buffers[m].enqueue(std::move(b));
    ++st.enqueued;
  }
  for (const auto& b : st.buffers) o.occupancies.push_back(b.occupancy());
  return o;
}

}  // namespace

SlotSignals synthesize_slot_signals(const SystemConfig& cfg,
                                    const ChannelSet& cs,
                                    const CMatrix& precoder,
                                    std::span<const CVector> symbols,
                                    std::span<const RelayBuffer> buffers,
                                    const Selection& selection, Rng& noise) {
  const Antennas a = cfg.antennas();
  const double src_amp = std::sqrt(cfg.power / a.source);
  const auto streams = static_cast<Eigen::Index>(selection.receivers.size());
  if (precoder.cols() != streams * a.relay ||
      static_cast<Eigen::Index>(symbols.size()) < streams) {
    throw ShapeError("synthesize_slot_signals: precoder/symbols do not match "
                     "the receiving set");
  }
  // Per-stream transmit components U_j s_j.
  std::vector<CVector> comp;
  CVector x = CVector::Zero(a.source);
  for (Eigen::Index j = 0; j < streams; ++j) {
    comp.push_back(src_amp * (precoder.middleCols(j * a.relay, a.relay) * symbols[j]));
    x += comp.back();
  }

  SlotSignals out;
  const bool jamming = !selection.jammers.empty();
  if (jamming) {
    for (int k : selection.jammers) {
      if (buffers[k].empty()) {
        throw BufferError("jammer " + std::to_string(k) +
                          " selected with an empty buffer");
      }
    }
    out.relay_tx = relay_transmit(cfg, cs, buffers, selection.jammers);
  }

  for (Eigen::Index p = 0; p < streams; ++p) {
    const int i = selection.receivers[p];
    const CMatrix& h = cs.relay.at(i);
    CVector inter = CVector::Zero(a.relay);
    for (Eigen::Index j = 0; j < streams; ++j) {
      if (j != p) inter += h * comp[j];
    }
    CVector iri = CVector::Zero(a.relay);
    if (jamming) iri = stack_jammer_to_relay(cs, selection.jammers, i) * out.relay_tx;
    CVector y = h * comp[p] + inter + noise_vector(noise, a.relay, cfg.noise_var);
    if (!cfg.iri_cancellation) y += iri;
    out.relay_rx.push_back(std::move(y));
    out.inter_user.push_back(std::move(inter));
    out.iri.push_back(std::move(iri));
  }
  for (int e = 0; e < a.eavesdroppers; ++e) {
    CVector y = cs.eav.at(e) * x;
    if (jamming) y += stack_jammer_to_eav(cs, selection.jammers, e) * out.relay_tx;
    y += noise_vector(noise, a.eav, cfg.noise_var);
    out.eav_rx.push_back(std::move(y));
  }
  for (int r = 0; r < a.users; ++r) {
    CVector y = noise_vector(noise, a.user, cfg.noise_var);
    if (jamming) y += stack_jammer_to_user(cs, selection.jammers, r) * out.relay_tx;
    out.user_rx.push_back(std::move(y));
  }
  return out;
}

TrialState::TrialState(const SystemConfig& c, std::uint64_t t)
    : cfg(c), trial(t), buffers(c.relays, RelayBuffer(c.buffer_size)) {}

int TrialState::total_occupancy() const {
  int acc = 0;
  for (const auto& b : buffers) acc += b.occupancy();
  return acc;
}

SlotOutcome step_slot(TrialState& state, std::int64_t slot) {
  return state.cfg.mode == Mode::kSingle ? step_single(state, slot)
                                         : step_mimo(state, slot);
}

TrialResult run_trial(const SystemConfig& cfg, std::uint64_t trial,
                      bool keep_trace) {
  return trial_loop(cfg, trial, keep_trace);
}

RunResult run_monte_carlo(const SystemConfig& cfg, bool keep_trace) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = cfg.trials;
  std::vector<TrialResult> trials(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < n; ++t) {
    try {
      trials[t] = trial_loop(cfg, static_cast<std::uint64_t>(t), keep_trace);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  RunResult r = reduce(cfg, trials, keep_trace);
  r.wall_seconds = seconds_since(t0);
  return r;
}

RunResult run_monte_carlo_serial(const SystemConfig& cfg, bool keep_trace) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<TrialResult> trials;
  trials.reserve(cfg.trials);
  for (int t = 0; t < cfg.trials; ++t) {
    trials.push_back(trial_loop(cfg, static_cast<std::uint64_t>(t), keep_trace));
  }
  RunResult r = reduce(cfg, trials, keep_trace);
  r.wall_seconds = seconds_since(t0);
  return r;
}

std::string_view to_string(SweepVar v) {
  switch (v) {
    case SweepVar::kNone:
      return "none";
    case SweepVar::kPower:
      return "P";
    case SweepVar::kBufferSize:
      return "L";
    case SweepVar::kThreshold:
      return "threshold";
  }
  return "none";
}

std::optional<SweepVar> parse_sweep_var(std::string_view s) {
  if (s == "none") return SweepVar::kNone;
  if (s == "P") return SweepVar::kPower;
  if (s == "L") return SweepVar::kBufferSize;
  if (s == "threshold") return SweepVar::kThreshold;
  return std::nullopt;
}

SystemConfig apply_sweep(const SystemConfig& cfg, SweepVar var, double value) {
  SystemConfig out = cfg;
  switch (var) {
    case SweepVar::kNone:
      break;
    case SweepVar::kPower:
      out.power = value;
      break;
    case SweepVar::kBufferSize:
      if (value != std::floor(value) || value < 1 || value > 1e6) {
        throw ConfigError("sweep value for L must be a positive integer");
      }
      out.buffer_size = static_cast<int>(value);
      break;
    case SweepVar::kThreshold:
      out.selection_threshold = value;
      break;
  }
  return out;
}

std::vector<RunResult> run_policy_sweep(const SystemConfig& cfg,
                                        std::span<const PolicyId> policies,
                                        SweepVar var,
                                        std::span<const double> values) {
  if (values.empty() || policies.empty()) {
    throw ConfigError("sweep needs at least one value and one policy");
  }
  std::vector<RunResult> out;
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ConfigError("sweep values must be finite");
    }
    for (PolicyId p : policies) {
      SystemConfig c = apply_sweep(cfg, var, v);
      c.policy = p;
      out.push_back(run_monte_carlo(c));
    }
  }
  return out;
}

}  // namespace relaysec
