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

#ifndef RELAYSEC_RNG_HPP_
#define RELAYSEC_RNG_HPP_

#include <cstdint>
#include <random>

#include "relaysec/numerics.hpp"

namespace relaysec {

using Rng = std::mt19937_64;

// Independent random substreams. Each (seed, trial, slot, family) tuple gets
// its own generator, so adding a consumer never shifts another's draws.
enum class Stream : std::uint32_t {
  kRelayChannel = 1,
  kEavChannel,
  kJamEavChannel,
  kJamUserChannel,
  kJamRelayChannel,
  kSymbols,
  kNoise,
  kPolicy,
};

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t trial,
                             std::uint64_t slot, Stream family);

Rng make_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot,
                Stream family);

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
Complex complex_gaussian(Rng& rng, double variance = 1.0);

CMatrix complex_gaussian_matrix(Rng& rng, Eigen::Index rows,
                                Eigen::Index cols, double variance = 1.0);

// Unit-power QPSK symbol.
Complex qpsk(Rng& rng);

CVector qpsk_vector(Rng& rng, Eigen::Index n);

}  // namespace relaysec

#endif  // RELAYSEC_RNG_HPP_
