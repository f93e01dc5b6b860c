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

#ifndef RELAYSEC_NUMERICS_HPP_
#define RELAYSEC_NUMERICS_HPP_

#include <complex>

#include <Eigen/Dense>

namespace relaysec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Default relative threshold on sigma_min(HH^H)/sigma_max(HH^H) below which
// a channel is treated as rank deficient.
inline constexpr double kDefaultSingularThreshold = 1e-12;

// Largest tolerated |A - A^H| entry (relative to max(1, max|a|)) before a
// Hermitian-only operation rejects its input.
inline constexpr double kHermitianTolerance = 1e-8;

// |det(B)| at or below this is a degenerate ratio denominator.
inline constexpr double kDetFloor = 1e-14;

/// Zero-forcing precoder U = H^H (H H^H)^{-1} for a wide, full-row-rank H.
///
/// Computed from the thin SVD so that the residual ||H U - I|| grows with
/// cond(H) rather than cond(H)^2. Throws SingularChannelError when the
/// smallest singular value of H H^H falls below `singular_threshold` times
/// the largest, ShapeError when H has more rows than columns.
CMatrix zf_precoder(const CMatrix& h,
                    double singular_threshold = kDefaultSingularThreshold);

/// H R H^H, symmetrized. R must be square Hermitian with cols(H) rows.
CMatrix herm_quad(const CMatrix& h, const CMatrix& r);

/// log2 det(I + A) for Hermitian PSD A. Throws ContractViolation when A is
/// not Hermitian within kHermitianTolerance.
double log_det_i_plus(const CMatrix& a);

/// log2 |det A| via partial-pivot LU, accumulated as a sum of logs so large
/// products do not overflow. Returns -inf for an exactly singular A.
double log2_abs_det(const CMatrix& a);

/// |det A| / |det B| for square A, B of equal size. Throws DegenerateError
/// when |det B| <= kDetFloor.
double det_ratio(const CMatrix& a, const CMatrix& b);

// Largest |A - A^H| entry divided by max(1, max|a_ij|).
double asymmetry(const CMatrix& a);

// (A + A^H)/2 after checking the asymmetry tolerance.
CMatrix hermitian_part(const CMatrix& a);

bool all_finite(const CMatrix& a);

// Principal square root of a Hermitian PSD matrix (negative rounding-level
// eigenvalues clipped to zero).
CMatrix psd_sqrt(const CMatrix& a);

/// Hermitian form of the whitened SINR matrix (I + D)^{-1} X:
/// returns X^{1/2} (I + D)^{-1} X^{1/2}, which has the same eigenvalues and
/// the same det(I + .) as the product, and is PSD-monotone in D.
CMatrix whitened_sinr(const CMatrix& x, const CMatrix& d);

// Square identity of size n (complex).
inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

}  // namespace relaysec

#endif  // RELAYSEC_NUMERICS_HPP_
