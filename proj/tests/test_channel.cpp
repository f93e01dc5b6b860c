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
#include <stdexcept>
#include <vector>

#include "relaysec/channel.hpp"
#include "relaysec/error.hpp"
#include "relaysec/rng.hpp"

using namespace relaysec;

TEST_SUITE("channel") {

TEST_CASE("draw_channels is deterministic and has documented shapes") {
  SystemConfig cfg;
  const ChannelSet a = draw_channels(cfg, 4, 9);
  const ChannelSet b = draw_channels(cfg, 4, 9);
  CHECK(a == b);
  CHECK_FALSE(a == draw_channels(cfg, 4, 10));
  CHECK_FALSE(a == draw_channels(cfg, 5, 9));
  REQUIRE(a.relay.size() == 6);
  REQUIRE(a.eav.size() == 3);
  for (const auto& h : a.relay) {
    CHECK(h.rows() == cfg.n_i);
    CHECK(h.cols() == cfg.n_t);
  }
  for (const auto& h : a.eav) {
    CHECK(h.rows() == cfg.n_e);
    CHECK(h.cols() == cfg.n_t);
  }
  for (int k = 0; k < cfg.relays; ++k) {
    REQUIRE(a.jam_eav[k].size() == 3);
    REQUIRE(a.jam_user[k].size() == 3);
    REQUIRE(a.jam_relay[k].size() == 6);
    CHECK(a.jam_eav[k][0].rows() == cfg.n_e);
    CHECK(a.jam_eav[k][0].cols() == cfg.n_k);
    CHECK(a.jam_user[k][2].rows() == cfg.n_r);
    CHECK(a.jam_relay[k][5].rows() == cfg.n_i);
  }
}

TEST_CASE("channel entries have unit power and are independent across slots") {
  SystemConfig cfg;
  cfg.relays = 6;
  std::vector<Complex> cur, next;
  for (std::uint64_t slot = 0; cur.size() < 100000; ++slot) {
    const ChannelSet a = draw_channels(cfg, 0, 2 * slot);
    const ChannelSet b = draw_channels(cfg, 0, 2 * slot + 1);
    for (std::size_t i = 0; i < a.relay.size(); ++i) {
      for (Eigen::Index j = 0; j < a.relay[i].size(); ++j) {
        cur.push_back(a.relay[i](j));
        next.push_back(b.relay[i](j));
      }
    }
  }
  double power = 0.0;
  Complex mean{}, cross{};
  for (std::size_t i = 0; i < cur.size(); ++i) {
    power += std::norm(cur[i]);
    mean += cur[i];
    cross += cur[i] * std::conj(next[i]);
  }
  const double n = static_cast<double>(cur.size());
  CHECK(std::abs(power / n - 1.0) < 0.02);
  CHECK(std::abs(mean / n) < 0.02);
  CHECK(std::abs(cross / n) < 0.02);
}

TEST_CASE("complex gaussian has independent halves of equal variance") {
  Rng rng(31);
  double re2 = 0.0, im2 = 0.0, reim = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const Complex z = complex_gaussian(rng, 2.0);
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
    reim += z.real() * z.imag();
  }
  CHECK(re2 / n == doctest::Approx(1.0).epsilon(0.03));
  CHECK(im2 / n == doctest::Approx(1.0).epsilon(0.03));
  CHECK(std::abs(reim / n) < 0.02);
}

TEST_CASE("substreams differ by family, trial and slot") {
  const auto a = substream_seed(1, 0, 0, Stream::kRelayChannel);
  CHECK(a != substream_seed(1, 0, 0, Stream::kEavChannel));
  CHECK(a != substream_seed(1, 1, 0, Stream::kRelayChannel));
  CHECK(a != substream_seed(1, 0, 1, Stream::kRelayChannel));
  CHECK(a != substream_seed(2, 0, 0, Stream::kRelayChannel));
  CHECK(a == substream_seed(1, 0, 0, Stream::kRelayChannel));
}

TEST_CASE("qpsk symbols have unit power") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Complex s = qpsk(rng);
    CHECK(std::norm(s) == doctest::Approx(1.0));
    CHECK(std::abs(std::abs(s.real()) - std::sqrt(0.5)) < 1e-15);
  }
}

TEST_CASE("jammer stacks are horizontal concatenations") {
  SystemConfig cfg;
  const ChannelSet cs = draw_channels(cfg, 0, 0);
  const std::vector<int> one{3};
  CHECK(stack_jammer_to_user(cs, one, 1) == cs.jam_user[3][1]);
  CHECK(stack_jammer_to_relay(cs, one, 0) == cs.jam_relay[3][0]);
  CHECK(stack_jammer_to_eav(cs, one, 2) == cs.jam_eav[3][2]);

  const std::vector<int> three{4, 0, 2};
  const CMatrix s = stack_jammer_to_user(cs, three, 2);
  REQUIRE(s.rows() == cfg.n_r);
  REQUIRE(s.cols() == 3 * cfg.n_k);
  for (std::size_t j = 0; j < three.size(); ++j) {
    CHECK(s.middleCols(j * cfg.n_k, cfg.n_k) == cs.jam_user[three[j]][2]);
  }
  const CMatrix e = stack_jammer_to_eav(cs, three, 1);
  CHECK(e.middleCols(cfg.n_k, cfg.n_k) == cs.jam_eav[0][1]);
}

TEST_CASE("stack errors") {
  SystemConfig cfg;
  const ChannelSet cs = draw_channels(cfg, 0, 0);
  const std::vector<int> none;
  CHECK_THROWS_AS(stack_jammer_to_user(cs, none, 0), SelectionError);
  const std::vector<int> bad{17};
  CHECK_THROWS_AS(stack_jammer_to_user(cs, bad, 0), std::out_of_range);
  const std::vector<int> ok{0};
  CHECK_THROWS_AS(stack_jammer_to_user(cs, ok, 9), std::out_of_range);
}

TEST_CASE("stacked products are dimension-consistent for random configs") {
  Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    SystemConfig cfg;
    cfg.n_i = cfg.n_k = cfg.n_r = 1 + static_cast<int>(rng() % 3);
    cfg.n_e = 1 + static_cast<int>(rng() % 3);
    cfg.users = 1 + static_cast<int>(rng() % 3);
    cfg.eavesdroppers = 1 + static_cast<int>(rng() % 3);
    cfg.receivers = cfg.jammers = cfg.users;
    cfg.n_t = cfg.receivers * cfg.n_i + static_cast<int>(rng() % 2);
    cfg.relays = cfg.receivers + cfg.jammers + static_cast<int>(rng() % 2);
    cfg.policy = PolicyId::kGreedy;
    REQUIRE(config_violations(cfg).empty());
    const ChannelSet cs = draw_channels(cfg, t, 0);
    std::vector<int> rx, jam;
    for (int i = 0; i < cfg.receivers; ++i) rx.push_back(i);
    for (int k = 0; k < cfg.jammers; ++k) jam.push_back(cfg.receivers + k);
    const CMatrix h = stack_relay_channels(cs, rx);
    CHECK(h.rows() == cfg.receivers * cfg.n_i);
    CHECK(h.cols() == cfg.n_t);
    const CVector x_r = CVector::Ones(cfg.jammers * cfg.n_k);
    CHECK((stack_jammer_to_user(cs, jam, 0) * x_r).size() == cfg.n_r);
    CHECK((stack_jammer_to_relay(cs, jam, 0) * x_r).size() == cfg.n_i);
    CHECK((stack_jammer_to_eav(cs, jam, 0) * x_r).size() == cfg.n_e);
    CHECK((cs.eav[0] * CVector::Ones(cfg.n_t)).size() == cfg.n_e);
  }
}

TEST_CASE("eavesdropper redraw touches only eavesdropper families") {
  SystemConfig cfg;
  const ChannelSet a = draw_channels(cfg, 0, 3);
  ChannelSet b = a;
  redraw_eavesdropper_channels(b, cfg, 999);
  CHECK(a.relay == b.relay);
  CHECK(a.jam_user == b.jam_user);
  CHECK(a.jam_relay == b.jam_relay);
  CHECK_FALSE(a.eav == b.eav);
  CHECK_FALSE(a.jam_eav == b.jam_eav);
}

TEST_CASE("single mode draws scalar channels") {
  SystemConfig cfg;
  cfg.mode = Mode::kSingle;
  cfg.policy = PolicyId::kMaxRatio;
  cfg.relays = 4;
  REQUIRE(config_violations(cfg).empty());
  const ChannelSet cs = draw_channels(cfg, 0, 0);
  CHECK(cs.relay.size() == 4);
  CHECK(cs.relay[0].size() == 1);
  CHECK(cs.eav.size() == 1);
  CHECK(cs.jam_user[2].size() == 1);
}

}  // TEST_SUITE
