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

#include "relaysec/rng.hpp"

#include <cmath>

namespace relaysec {

namespace {

// SplitMix64 finalizer.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t trial,
                             std::uint64_t slot, Stream family) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ trial);
  h = mix(h ^ slot);
  return mix(h ^ static_cast<std::uint64_t>(family));
}

Rng make_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot,
                Stream family) {
  return Rng(substream_seed(seed, trial, slot, family));
}

Complex complex_gaussian(Rng& rng, double variance) {
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

CMatrix complex_gaussian_matrix(Rng& rng, Eigen::Index rows,
                                Eigen::Index cols, double variance) {
  CMatrix m(rows, cols);
  // Row-major fill order is part of the reproducibility contract.
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_gaussian(rng, variance);
    }
  }
  return m;
}

Complex qpsk(Rng& rng) {
  static constexpr double kAmp = 0.70710678118654752440;
  const std::uint64_t bits = rng();
  return {(bits & 1U) ? kAmp : -kAmp, (bits & 2U) ? kAmp : -kAmp};
}

CVector qpsk_vector(Rng& rng, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = qpsk(rng);
  return v;
}

}  // namespace relaysec
