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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "relaysec/channel.hpp"
#include "relaysec/error.hpp"
#include "relaysec/metrics.hpp"
#include "relaysec/rng.hpp"

using namespace relaysec;

namespace {

CMatrix diag2(double a, double b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

std::vector<CMatrix> random_xi(Rng& rng, int relays, int n) {
  std::vector<CMatrix> xi;
  for (int i = 0; i < relays; ++i) {
    const CMatrix g = complex_gaussian_matrix(rng, n, n);
    xi.push_back(oracle::mul(g, oracle::adj(g)));
  }
  return xi;
}

// sum_k g H_k (I + xi_k) H_k^H with explicit loops.
CMatrix forwarded_oracle(double g, const std::vector<std::vector<CMatrix>>& fam,
                         const std::vector<CMatrix>& xi, int target,
                         const std::vector<int>& jammers) {
  const auto rows = fam[jammers[0]][target].rows();
  CMatrix acc = CMatrix::Zero(rows, rows);
  for (int k : jammers) {
    const CMatrix& h = fam[k][target];
    const CMatrix c = oracle::eye(xi[k].rows()) + xi[k];
    acc += g * oracle::mul(oracle::mul(h, c), oracle::adj(h));
  }
  return acc;
}

// log2 det(I + (I + D)^{-1} X) from the non-Hermitian product.
double whitened_oracle(const CMatrix& x, const CMatrix& d) {
  const auto n = x.rows();
  const CMatrix p = oracle::mul(oracle::inv(oracle::eye(n) + d), x);
  return std::log2(std::abs(oracle::det(oracle::eye(n) + p)));
}

double min_eig(const CMatrix& a) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(a).eigenvalues().minCoeff();
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("covariances examples") {
  Rng rng(1);
  const std::vector<CMatrix> u1{complex_gaussian_matrix(rng, 4, 2)};
  const std::vector<CVector> s1{qpsk_vector(rng, 2)};
  const CovariancePair c1 = covariances(u1, s1, 0);
  CHECK(c1.interference.norm() == 0.0);
  const CVector x = u1[0] * s1[0];
  CHECK((c1.desired - x * x.adjoint()).norm() < 1e-12);

  const std::vector<CVector> zeros{CVector::Zero(2)};
  const CovariancePair c0 = covariances(u1, zeros, 0);
  CHECK(c0.desired.norm() == 0.0);
  CHECK(c0.interference.norm() == 0.0);

  std::vector<CMatrix> u3;
  std::vector<CVector> s3;
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    u3.push_back(complex_gaussian_matrix(rng, 6, 2));
    s3.push_back(qpsk_vector(rng, 2));
    total += (u3[j] * s3[j]).squaredNorm();
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const CovariancePair c = covariances(u3, s3, i);
    CHECK(std::abs(oracle::trace(c.interference) + oracle::trace(c.desired) -
                   total) < 1e-10);
  }
  CHECK_THROWS_AS(covariances(u3, s1, 0), ShapeError);
}

TEST_CASE("gamma_user_full examples and loop oracle") {
  SystemConfig cfg;
  cfg.power = cfg.n_k;  // P / N_k = 1
  ChannelSet cs = draw_channels(cfg, 0, 0);
  std::vector<CMatrix> xi(cfg.relays, CMatrix::Zero(2, 2));
  cs.jam_user[2][0] = identity(2);
  const std::vector<int> one{2};
  CHECK((gamma_user_full(cfg, cs.jam_user, xi, 0, one) - identity(2)).norm() <
        1e-14);

  for (auto& row : cs.jam_user)
    for (auto& h : row) h.setZero();
  CHECK(gamma_user_full(cfg, cs.jam_user, xi, 1, one).norm() == 0.0);
  CHECK_THROWS_AS(gamma_user_full(cfg, cs.jam_user, xi, 1, {}), SelectionError);

  Rng rng(3);
  cfg.power = 7.5;
  for (int t = 0; t < 50; ++t) {
    const ChannelSet c = draw_channels(cfg, t, 1);
    const auto x = random_xi(rng, cfg.relays, 2);
    const std::vector<int> jam{1, 3, 4};
    const CMatrix got = gamma_user_full(cfg, c.jam_user, x, 2, jam);
    const CMatrix want = forwarded_oracle(7.5 / 2, c.jam_user, x, 2, jam);
    CHECK(oracle::fro(got - want) < 1e-10 * (1 + oracle::fro(want)));
    CHECK(min_eig(got) > -1e-9);
  }
}

TEST_CASE("gamma_eav_full examples and oracle") {
  SystemConfig cfg;
  ChannelSet cs = draw_channels(cfg, 0, 0);
  const std::vector<CMatrix> xi(cfg.relays, CMatrix::Zero(2, 2));
  const std::vector<int> jam{0, 1, 2};

  ChannelSet quiet = cs;
  for (auto& row : quiet.jam_eav)
    for (auto& h : row) h.setZero();
  const double g = cfg.power / cfg.n_t;
  const CMatrix heard = g * oracle::mul(quiet.eav[1], oracle::adj(quiet.eav[1]));
  CHECK(oracle::fro(gamma_eav_full(cfg, quiet, xi, 1, jam) - heard) < 1e-10);

  ChannelSet deaf = cs;
  deaf.eav[0].setZero();
  CHECK(gamma_eav_full(cfg, deaf, xi, 0, jam).norm() < 1e-14);

  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const ChannelSet c = draw_channels(cfg, t, 2);
    const auto x = random_xi(rng, cfg.relays, 2);
    const CMatrix d = forwarded_oracle(cfg.power / cfg.n_k, c.jam_eav, x, 0, jam);
    CHECK(oracle::fro(jamming_covariance(cfg, c, x, 0, jam) - d) < 1e-9);
    const CMatrix xe = g * oracle::mul(c.eav[0], oracle::adj(c.eav[0]));
    const CMatrix ge = gamma_eav_full(cfg, c, x, 0, jam);
    CHECK(log_det_i_plus(ge) == doctest::Approx(whitened_oracle(xe, d)).epsilon(1e-9));
    // trace of the Hermitian form equals trace of (I + D)^{-1} X
    const Complex tr = oracle::trace(oracle::mul(oracle::inv(oracle::eye(2) + d), xe));
    CHECK(std::abs(ge.trace() - tr) < 1e-9 * (1 + std::abs(tr)));
    CHECK(min_eig(ge) > -1e-9);
  }
}

TEST_CASE("gamma_greedy examples and oracle") {
  SystemConfig cfg;
  cfg.iri_cancellation = false;
  ChannelSet cs = draw_channels(cfg, 0, 0);
  Rng rng(7);
  const auto xi = random_xi(rng, cfg.relays, 2);
  const std::vector<int> rx{0};
  const std::vector<int> jam{1, 2};
  const double g = cfg.power / cfg.n_t;

  ChannelSet no_iri = cs;
  for (auto& row : no_iri.jam_relay)
    for (auto& h : row) h.setZero();
  const SinrBundle b0 = gamma_greedy(cfg, no_iri, xi, 4, 0, rx, jam);
  CHECK(b0.delta_m.norm() < 1e-14);
  CHECK(oracle::fro(b0.gamma_relay -
                    g * oracle::mul(cs.relay[4], oracle::adj(cs.relay[4]))) < 1e-10);

  ChannelSet dead = cs;
  dead.relay[4].setZero();
  CHECK(gamma_greedy(cfg, dead, xi, 4, 0, rx, jam).gamma_relay.norm() < 1e-14);

  for (int t = 0; t < 30; ++t) {
    const ChannelSet c = draw_channels(cfg, t, 3);
    const SinrBundle b = gamma_greedy(cfg, c, xi, 3, 2, rx, jam);
    const CMatrix dm = forwarded_oracle(cfg.power / cfg.n_k, c.jam_relay, xi, 3, jam);
    CHECK(oracle::fro(b.delta_m - dm) < 1e-9);
    const CMatrix xm = g * oracle::mul(c.relay[3], oracle::adj(c.relay[3]));
    CHECK(oracle::fro(b.xi - xm) < 1e-10);
    CHECK(log_det_i_plus(b.gamma_relay) ==
          doctest::Approx(whitened_oracle(xm, dm)).epsilon(1e-9));
    const CMatrix de = forwarded_oracle(cfg.power / cfg.n_k, c.jam_eav, xi, 2, jam);
    CHECK(oracle::fro(b.delta_e - de) < 1e-9);
    for (const CMatrix* m : {&b.gamma_relay, &b.gamma_eav, &b.delta_m, &b.delta_e, &b.xi}) {
      CHECK(min_eig(*m) > -1e-9);
    }
  }
  CHECK_THROWS_AS(gamma_greedy(cfg, cs, xi, 0, 0, rx, jam), SelectionError);
  CHECK_THROWS_AS(gamma_greedy(cfg, cs, xi, 2, 0, rx, jam), SelectionError);
}

TEST_CASE("iri cancellation never decreases the relay SINR") {
  SystemConfig cfg;
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const ChannelSet c = draw_channels(cfg, t, 0);
    const auto xi = random_xi(rng, cfg.relays, 2);
    const std::vector<int> jam{3, 4, 5};
    const CMatrix on = gamma_relay(cfg, c, xi, 0, jam, true);
    const CMatrix off = gamma_relay(cfg, c, xi, 0, jam, false);
    CHECK(min_eig(on - off) > -1e-9);
    CHECK(log_det_i_plus(on) >= log_det_i_plus(off) - 1e-12);
  }
}

TEST_CASE("secrecy_rate examples") {
  CMatrix a = CMatrix::Constant(1, 1, 3.0);
  CMatrix b = CMatrix::Constant(1, 1, 1.0);
  CHECK(secrecy_rate(a, b) == doctest::Approx(1.0));
  CHECK(secrecy_rate(a, a) == 0.0);
  CHECK(secrecy_rate(CMatrix::Zero(1, 1), CMatrix::Constant(1, 1, 5.0)) == 0.0);
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_xi(rng, 2, 2);
    CHECK(secrecy_rate(x[0], x[1]) >= 0.0);
  }
}

TEST_CASE("partial_csi_score examples") {
  Rng rng(13);
  const CMatrix r = random_xi(rng, 1, 2)[0];
  const CovariancePair same{r, r};
  for (int t = 0; t < 10; ++t) {
    const CMatrix h = complex_gaussian_matrix(rng, 2, 2);
    CHECK(std::abs(partial_csi_score(h, same)) < 1e-9);
  }
  const CovariancePair cov{random_xi(rng, 1, 2)[0], random_xi(rng, 1, 2)[0]};
  const double zero_h = partial_csi_score(CMatrix::Zero(2, 2), cov);
  const double prefactor = std::log2(std::abs(oracle::det(cov.interference +
                                                          1e-9 * oracle::eye(2))) /
                                     std::abs(oracle::det(cov.desired +
                                                          1e-9 * oracle::eye(2))));
  CHECK(zero_h == doctest::Approx(prefactor).epsilon(1e-9));
}

TEST_CASE("partial_csi_score matches an independent evaluation") {
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const CovariancePair cov{random_xi(rng, 1, 2)[0], random_xi(rng, 1, 2)[0]};
    const CMatrix h = complex_gaussian_matrix(rng, 2, 2);
    const CMatrix hd = oracle::mul(oracle::mul(h, cov.desired), oracle::adj(h));
    const CMatrix hi = oracle::mul(oracle::mul(h, cov.interference), oracle::adj(h));
    const double want =
        std::log2(std::abs(oracle::det(cov.interference + 1e-9 * oracle::eye(2))) /
                  std::abs(oracle::det(cov.desired + 1e-9 * oracle::eye(2)))) +
        oracle::log2_det_i_plus(hd) - oracle::log2_det_i_plus(hi);
    CHECK(partial_csi_score(h, cov) == doctest::Approx(want).epsilon(1e-8));
    // The prefactor is the only difference from the channel term.
    CHECK(partial_csi_score(h, cov) - partial_csi_channel_term(h, cov) ==
          doctest::Approx(partial_csi_score(CMatrix::Zero(2, 2), cov)).epsilon(1e-9));
    const double additive =
        oracle::log2_det_i_plus(cov.interference + hd) -
        oracle::log2_det_i_plus(cov.desired + hi);
    CHECK(partial_csi_score(h, cov, PartialCsiForm::kAdditive) ==
          doctest::Approx(additive).epsilon(1e-9));
  }
}

TEST_CASE("partial_csi_score degenerates when a covariance vanishes") {
  const CovariancePair cov{CMatrix::Zero(2, 2), identity(2)};
  CHECK_THROWS_AS(partial_csi_score(identity(2), cov, PartialCsiForm::kRatio, 0.0),
                  DegenerateError);
  CHECK_NOTHROW(partial_csi_score(identity(2), cov));
  CHECK_THROWS_AS(partial_csi_score(identity(3), cov), ShapeError);
}

TEST_CASE("chain identity between the product and reduced forms") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 2;
    const CMatrix hi = complex_gaussian_matrix(rng, n, n);
    const CMatrix he = complex_gaussian_matrix(rng, n, n);
    const CovariancePair cov{random_xi(rng, 1, n)[0], random_xi(rng, 1, n)[0]};
    const double a = chain_product_ratio(hi, he, cov);
    const double b = chain_reduced_ratio(hi, cov);
    CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    // Independent evaluation of the product form.
    auto q = [](const CMatrix& h, const CMatrix& r) {
      return oracle::mul(oracle::mul(h, r), oracle::adj(h));
    };
    const double want =
        std::abs(oracle::det(oracle::mul(q(he, cov.interference), q(hi, cov.desired)))) /
        std::abs(oracle::det(oracle::mul(q(hi, cov.interference), q(he, cov.desired))));
    CHECK(std::abs(a - want) <= 1e-8 * std::abs(want));
  }
}

TEST_CASE("SelectionObjective caches consistent terms") {
  SystemConfig cfg;
  const ChannelSet cs = draw_channels(cfg, 0, 0);
  Rng rng(19);
  const auto xi = random_xi(rng, cfg.relays, 2);
  SelectionObjective obj(cfg, cs, xi);
  const std::vector<int> rx{0, 1, 2};
  const std::vector<int> jam{3, 4, 5};
  double users = 0.0, eavs = 0.0, relays = 0.0;
  for (int r = 0; r < 3; ++r) {
    users += oracle::log2_det_i_plus(gamma_user_full(cfg, cs.jam_user, xi, r, jam));
  }
  for (int e = 0; e < 3; ++e) {
    eavs += log_det_i_plus(gamma_eav_full(cfg, cs, xi, e, jam));
  }
  for (int m : rx) {
    relays += log_det_i_plus(gamma_relay(cfg, cs, xi, m, jam, cfg.iri_cancellation));
  }
  CHECK(obj.user_term(jam) == doctest::Approx(users).epsilon(1e-10));
  CHECK(obj.eav_term(jam) == doctest::Approx(eavs).epsilon(1e-10));
  const double s = obj.score(rx, jam);
  CHECK(s == doctest::Approx(users - eavs + relays - eavs).epsilon(1e-10));
  CHECK(obj.score(rx, jam) == s);
  CHECK(obj.delivered_secrecy(jam) == doctest::Approx(std::max(0.0, users - eavs)));
}

}  // TEST_SUITE
