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

#include "relaysec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relaysec/error.hpp"

namespace relaysec {

namespace {

CMatrix zero(Eigen::Index n) { return CMatrix::Zero(n, n); }

bool contains(std::span<const int> set, int v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

std::uint64_t mask_of(std::span<const int> set) {
  std::uint64_t m = 0;
  for (int v : set) m |= std::uint64_t{1} << v;
  return m;
}

// Sum over selected jammers of gain * H_k (I + xi_k) H_k^H, where H_k is
// picked from the family for the given target.
CMatrix forwarded_covariance(double gain,
                             const std::vector<std::vector<CMatrix>>& family,
                             std::span<const CMatrix> xi, int target,
                             std::span<const int> jammers, Eigen::Index rows) {
  CMatrix acc = zero(rows);
  for (int k : jammers) {
    const CMatrix& h = family.at(k).at(target);
    acc += gain * herm_quad(h, block_covariance(xi[k]));
  }
  return acc;
}

CMatrix pad(const CMatrix& m, Eigen::Index n) {
  CMatrix out = zero(n);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

void check_cov(const CMatrix& h, const CovariancePair& cov) {
  const auto& ri = cov.interference;
  const auto& rd = cov.desired;
  if (ri.rows() != ri.cols() || rd.rows() != rd.cols() ||
      ri.rows() != rd.rows()) {
    throw ShapeError("covariance pair must be square and of equal size");
  }
  if (h.cols() != ri.rows()) {
    throw ShapeError("channel columns do not match covariance size");
  }
}

double log2_det_checked(const CMatrix& a, const char* what) {
  const double v = log2_abs_det(a);
  if (!std::isfinite(v)) {
    throw DegenerateError(std::string(what) + ": determinant vanished");
  }
  return v;
}

}  // namespace

double source_gain(const SystemConfig& cfg) {
  return cfg.power / (cfg.antennas().source * cfg.noise_var);
}

double jammer_gain(const SystemConfig& cfg) {
  return cfg.power / (cfg.antennas().jammer * cfg.noise_var);
}

CMatrix block_covariance(const CMatrix& xi) {
  return identity(xi.rows()) + xi;
}

CMatrix gamma_user_full(const SystemConfig& cfg,
                        const std::vector<std::vector<CMatrix>>& jam_user,
                        std::span<const CMatrix> xi, int r,
                        std::span<const int> jammers) {
  if (jammers.empty()) {
    throw SelectionError("gamma_user_full: no jammers selected");
  }
  return forwarded_covariance(jammer_gain(cfg), jam_user, xi, r, jammers,
                              cfg.antennas().user);
}

CMatrix jamming_covariance(const SystemConfig& cfg, const ChannelSet& cs,
                           std::span<const CMatrix> xi, int e,
                           std::span<const int> jammers) {
  return forwarded_covariance(jammer_gain(cfg), cs.jam_eav, xi, e, jammers,
                              cfg.antennas().eav);
}

CMatrix gamma_eav_full(const SystemConfig& cfg, const ChannelSet& cs,
                       std::span<const CMatrix> xi, int e,
                       std::span<const int> jammers) {
  const CMatrix& h = cs.eav.at(e);
  const CMatrix heard = source_gain(cfg) * herm_quad(h, identity(h.cols()));
  return whitened_sinr(heard, jamming_covariance(cfg, cs, xi, e, jammers));
}

CMatrix iri_covariance(const SystemConfig& cfg, const ChannelSet& cs,
                       std::span<const CMatrix> xi, int m,
                       std::span<const int> jammers) {
  return forwarded_covariance(jammer_gain(cfg), cs.jam_relay, xi, m, jammers,
                              cfg.antennas().relay);
}

CMatrix gamma_relay(const SystemConfig& cfg, const ChannelSet& cs,
                    std::span<const CMatrix> xi, int m,
                    std::span<const int> jammers, bool iri_cancelled) {
  const CMatrix& h = cs.relay.at(m);
  const CMatrix heard = source_gain(cfg) * herm_quad(h, identity(h.cols()));
  if (iri_cancelled || jammers.empty()) return heard;
  return whitened_sinr(heard, iri_covariance(cfg, cs, xi, m, jammers));
}

SinrBundle gamma_greedy(const SystemConfig& cfg, const ChannelSet& cs,
                        std::span<const CMatrix> xi, int m, int e,
                        std::span<const int> receivers,
                        std::span<const int> jammers) {
  if (contains(receivers, m) || contains(jammers, m)) {
    throw SelectionError("gamma_greedy: relay " + std::to_string(m) +
                         " is already selected");
  }
  SinrBundle b;
  const CMatrix& h = cs.relay.at(m);
  b.xi = source_gain(cfg) * herm_quad(h, identity(h.cols()));
  b.delta_m = cfg.iri_cancellation
                  ? zero(h.rows())
                  : iri_covariance(cfg, cs, xi, m, jammers);
  b.gamma_relay = whitened_sinr(b.xi, b.delta_m);
  b.delta_e = jamming_covariance(cfg, cs, xi, e, jammers);
  b.delta = b.delta_e;
  const CMatrix& he = cs.eav.at(e);
  b.gamma_eav = whitened_sinr(
      source_gain(cfg) * herm_quad(he, identity(he.cols())), b.delta_e);
  return b;
}

double secrecy_rate(const CMatrix& gamma_user, const CMatrix& gamma_eav) {
  return std::max(0.0,
                  log_det_i_plus(gamma_user) - log_det_i_plus(gamma_eav));
}

CovariancePair covariances(std::span<const CMatrix> precoders,
                           std::span<const CVector> symbols, std::size_t i) {
  if (precoders.size() != symbols.size() || precoders.empty()) {
    throw ShapeError("covariances: need equal, non-zero numbers of precoders "
                     "and symbol vectors");
  }
  if (i >= precoders.size()) {
    throw ShapeError("covariances: target stream out of range");
  }
  const Eigen::Index n = precoders[0].rows();
  CovariancePair out{zero(n), zero(n)};
  for (std::size_t j = 0; j < precoders.size(); ++j) {
    if (precoders[j].rows() != n || precoders[j].cols() != symbols[j].size()) {
      throw ShapeError("covariances: precoder/symbol dimension mismatch");
    }
    const CVector x = precoders[j] * symbols[j];
    const CMatrix outer = x * x.adjoint();
    (j == i ? out.desired : out.interference) += outer;
  }
  return out;
}

double partial_csi_channel_term(const CMatrix& h, const CovariancePair& cov) {
  check_cov(h, cov);
  return log_det_i_plus(herm_quad(h, cov.desired)) -
         log_det_i_plus(herm_quad(h, cov.interference));
}

double partial_csi_score(const CMatrix& h, const CovariancePair& cov,
                         PartialCsiForm form, double ridge) {
  check_cov(h, cov);
  if (form == PartialCsiForm::kRatio) {
    const Eigen::Index n = cov.interference.rows();
    const double li = log2_det_checked(
        cov.interference + ridge * identity(n), "partial_csi_score R_I");
    const double ld = log2_det_checked(cov.desired + ridge * identity(n),
                                       "partial_csi_score R_d");
    return li - ld + partial_csi_channel_term(h, cov);
  }
  const CMatrix hd = herm_quad(h, cov.desired);
  const CMatrix hi = herm_quad(h, cov.interference);
  const Eigen::Index n = std::max(cov.interference.rows(), hd.rows());
  return log_det_i_plus(pad(cov.interference, n) + pad(hd, n)) -
         log_det_i_plus(pad(cov.desired, n) + pad(hi, n));
}

double full_csi_det_ratio(const CMatrix& h_relay, const CMatrix& h_eav,
                          const CovariancePair& cov) {
  check_cov(h_relay, cov);
  check_cov(h_eav, cov);
  auto sinr = [&cov](const CMatrix& h) -> CMatrix {
    const CMatrix interf = h * cov.interference * h.adjoint();
    const CMatrix desired = h * cov.desired * h.adjoint();
    return interf.partialPivLu().solve(desired);
  };
  return det_ratio(sinr(h_relay), sinr(h_eav));
}

double chain_product_ratio(const CMatrix& h_relay, const CMatrix& h_eav,
                           const CovariancePair& cov) {
  check_cov(h_relay, cov);
  check_cov(h_eav, cov);
  const CMatrix& ri = cov.interference;
  const CMatrix& rd = cov.desired;
  const CMatrix num = (h_eav * ri * h_eav.adjoint()) *
                      (h_relay * rd * h_relay.adjoint());
  const CMatrix den = (h_relay * ri * h_relay.adjoint()) *
                      (h_eav * rd * h_eav.adjoint());
  return det_ratio(num, den);
}

double chain_reduced_ratio(const CMatrix& h_relay, const CovariancePair& cov) {
  check_cov(h_relay, cov);
  const double l = log2_abs_det(cov.interference) - log2_abs_det(cov.desired) +
                   log2_abs_det(h_relay * cov.desired * h_relay.adjoint()) -
                   log2_abs_det(h_relay * cov.interference * h_relay.adjoint());
  if (!std::isfinite(l)) {
    throw DegenerateError("chain_reduced_ratio: singular factor");
  }
  return std::exp2(l);
}

SelectionObjective::SelectionObjective(const SystemConfig& cfg,
                                       const ChannelSet& cs,
                                       std::span<const CMatrix> xi)
    : cfg_(cfg), cs_(cs), xi_(xi) {}

SelectionObjective::Terms& SelectionObjective::terms(
    std::span<const int> jammers) {
  auto [it, inserted] = cache_.try_emplace(mask_of(jammers));
  if (inserted) {
    it->second.relay.assign(cs_.relay.size(),
                            std::numeric_limits<double>::quiet_NaN());
  }
  return it->second;
}

double SelectionObjective::user_term(std::span<const int> jammers) {
  Terms& t = terms(jammers);
  if (!t.have_user) {
    double acc = 0.0;
    if (!jammers.empty()) {
      for (int r = 0; r < cfg_.antennas().users; ++r) {
        acc += log_det_i_plus(gamma_user_full(cfg_, cs_.jam_user, xi_, r, jammers));
      }
    }
    t.user = acc;
    t.have_user = true;
  }
  return t.user;
}

double SelectionObjective::eav_term(std::span<const int> jammers) {
  Terms& t = terms(jammers);
  if (!t.have_eav) {
    double acc = 0.0;
    for (int e = 0; e < cfg_.antennas().eavesdroppers; ++e) {
      acc += log_det_i_plus(gamma_eav_full(cfg_, cs_, xi_, e, jammers));
    }
    t.eav = acc;
    t.have_eav = true;
  }
  return t.eav;
}

double SelectionObjective::relay_term(int m, std::span<const int> jammers) {
  Terms& t = terms(jammers);
  double& slot = t.relay.at(m);
  if (std::isnan(slot)) {
    slot = log_det_i_plus(
        gamma_relay(cfg_, cs_, xi_, m, jammers, cfg_.iri_cancellation));
  }
  return slot;
}

double SelectionObjective::score(std::span<const int> receivers,
                                 std::span<const int> jammers) {
  const double eav = eav_term(jammers);
  double relay = 0.0;
  for (int m : receivers) relay += relay_term(m, jammers);
  return user_term(jammers) - eav + relay - eav;
}

double SelectionObjective::delivered_secrecy(std::span<const int> jammers) {
  return std::max(0.0, user_term(jammers) - eav_term(jammers));
}

}  // namespace relaysec
