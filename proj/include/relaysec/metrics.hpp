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

#ifndef RELAYSEC_METRICS_HPP_
#define RELAYSEC_METRICS_HPP_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "relaysec/channel.hpp"
#include "relaysec/config.hpp"
#include "relaysec/numerics.hpp"

namespace relaysec {

// Every SINR-side matrix of one candidate evaluation. Fields a given
// constructor does not compute stay empty (0 x 0).
struct SinrBundle {
  CMatrix gamma_user;   // user SINR matrix
  CMatrix gamma_eav;    // eavesdropper SINR matrix
  CMatrix gamma_relay;  // receiving-relay SINR matrix (greedy)
  CMatrix delta;        // jamming covariance at the eavesdropper
  CMatrix delta_m;      // inter-relay interference at relay m
  CMatrix delta_e;      // jamming covariance at the eavesdropper (greedy)
  CMatrix xi;           // (P/N_t) H_m H_m^H, what relay m would store
};

struct CovariancePair {
  CMatrix interference;  // R_I = sum_{j != i} U_j s_j s_j^H U_j^H
  CMatrix desired;       // R_d = U_i s_i s_i^H U_i^H
};

// Per-antenna SNR scale of the source and of a jamming relay.
double source_gain(const SystemConfig& cfg);
double jammer_gain(const SystemConfig& cfg);

// Covariance of a forwarded block stored with quality xi: I + xi.
CMatrix block_covariance(const CMatrix& xi);

/// User r's SINR matrix when the selected jammers forward their stored
/// blocks: sum_k (P/N_k) H_kr (I + xi_k) H_kr^H. `xi` is indexed by pool
/// relay; only the selected jammers' entries are read.
CMatrix gamma_user_full(const SystemConfig& cfg,
                        const std::vector<std::vector<CMatrix>>& jam_user,
                        std::span<const CMatrix> xi, int r,
                        std::span<const int> jammers);

// Jamming covariance at eavesdropper e: sum_k (P/N_k) H_ke (I + xi_k) H_ke^H.
CMatrix jamming_covariance(const SystemConfig& cfg, const ChannelSet& cs,
                           std::span<const CMatrix> xi, int e,
                           std::span<const int> jammers);

/// Eavesdropper e overhearing the source while jammed:
/// (I + Delta)^{-1} (P/N_t) H_e H_e^H, returned in Hermitian form.
CMatrix gamma_eav_full(const SystemConfig& cfg, const ChannelSet& cs,
                       std::span<const CMatrix> xi, int e,
                       std::span<const int> jammers);

// Inter-relay interference covariance at relay m from the selected jammers.
CMatrix iri_covariance(const SystemConfig& cfg, const ChannelSet& cs,
                       std::span<const CMatrix> xi, int m,
                       std::span<const int> jammers);

/// Receiving relay m's SINR matrix (I + Delta'_m)^{-1} (P/N_t) H_m H_m^H in
/// Hermitian form. With `iri_cancelled` the interference term is dropped.
CMatrix gamma_relay(const SystemConfig& cfg, const ChannelSet& cs,
                    std::span<const CMatrix> xi, int m,
                    std::span<const int> jammers, bool iri_cancelled);

/// Greedy-step evaluation of candidate relay m against eavesdropper e.
/// Throws SelectionError if m is already among receivers or jammers.
SinrBundle gamma_greedy(const SystemConfig& cfg, const ChannelSet& cs,
                        std::span<const CMatrix> xi, int m, int e,
                        std::span<const int> receivers,
                        std::span<const int> jammers);

/// max(0, log2 det(I + gamma_user) - log2 det(I + gamma_eav)).
double secrecy_rate(const CMatrix& gamma_user, const CMatrix& gamma_eav);

/// R_I and R_d for target stream i. Throws ShapeError on length mismatch.
CovariancePair covariances(std::span<const CMatrix> precoders,
                           std::span<const CVector> symbols, std::size_t i);

// Regularization added to R_I, R_d before taking their determinants.
inline constexpr double kCovarianceRidge = 1e-9;

/// Partial-CSI relay score, in bits. Ratio form:
///   log2[(det R_I / det R_d) det(I + H R_d H^H) / det(I + H R_I H^H)]
/// with det(R) taken as det(R + ridge I). The prefactor is the same for
/// every candidate relay, so it never changes the argmax.
/// Additive form: log2 det(I + R_I + H R_d H^H) - log2 det(I + R_d + H R_I H^H),
/// zero-padding the smaller terms to a common size.
double partial_csi_score(const CMatrix& h, const CovariancePair& cov,
                         PartialCsiForm form = PartialCsiForm::kRatio,
                         double ridge = kCovarianceRidge);

// Ratio-form score without the candidate-independent prefactor.
double partial_csi_channel_term(const CMatrix& h, const CovariancePair& cov);

// Full-CSI determinant ratio det(G_r)/det(G_e) with
// G_x = (H_x R_I H_x^H)^{-1} (H_x R_d H_x^H). Needs square nonsingular forms.
double full_csi_det_ratio(const CMatrix& h_relay, const CMatrix& h_eav,
                          const CovariancePair& cov);

// det[(H_e R_I H_e^H)(H_i R_d H_i^H)] / det[(H_i R_I H_i^H)(H_e R_d H_e^H)].
double chain_product_ratio(const CMatrix& h_relay, const CMatrix& h_eav,
                           const CovariancePair& cov);

// det(R_I) det(H_i R_d H_i^H) / (det(R_d) det(H_i R_I H_i^H)).
double chain_reduced_ratio(const CMatrix& h_relay, const CovariancePair& cov);

/// Selection objective for the multi-user MIMO policies, with per-jammer-set
/// memoization. For receivers A and jammers B:
///   score(A, B) = [U(B) - E(B)] + [sum_{m in A} R_m(B) - E(B)]
/// where U sums log2 det(I + Gamma_r) over users, E sums it over
/// eavesdroppers and R_m is receiving relay m's term. The first bracket is
/// the secrecy delivered to users this slot.
class SelectionObjective {
 public:
  SelectionObjective(const SystemConfig& cfg, const ChannelSet& cs,
                     std::span<const CMatrix> xi);

  double user_term(std::span<const int> jammers);
  double eav_term(std::span<const int> jammers);
  double relay_term(int m, std::span<const int> jammers);

  double score(std::span<const int> receivers, std::span<const int> jammers);
  // max(0, U(B) - E(B))
  double delivered_secrecy(std::span<const int> jammers);

 private:
  struct Terms {
    bool have_user = false;
    bool have_eav = false;
    double user = 0.0;
    double eav = 0.0;
    std::vector<double> relay;  // NaN until computed
  };
  Terms& terms(std::span<const int> jammers);

  const SystemConfig& cfg_;
  const ChannelSet& cs_;
  std::span<const CMatrix> xi_;
  std::unordered_map<std::uint64_t, Terms> cache_;
};

}  // namespace relaysec

#endif  // RELAYSEC_METRICS_HPP_
