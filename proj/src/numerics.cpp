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

#include "relaysec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relaysec/error.hpp"

namespace relaysec {

namespace {

std::string dims(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw ShapeError(std::string(what) + ": expected square matrix, got " +
                     dims(a));
  }
}

}  // namespace

CMatrix zf_precoder(const CMatrix& h, double singular_threshold) {
  if (h.rows() == 0 || h.rows() > h.cols()) {
    throw ShapeError("zf_precoder: need 0 < rows <= cols, got " + dims(h));
  }
  Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  // Singular values of H H^H are the squares of those of H.
  if (!(smax > 0.0) || smin * smin < singular_threshold * smax * smax) {
    throw SingularChannelError("zf_precoder: channel " + dims(h) +
                               " is rank deficient (sigma ratio " +
                               std::to_string(smax > 0 ? smin / smax : 0.0) +
                               ")");
  }
  // H = W S V^H  =>  U = V S^{-1} W^H
  return svd.matrixV() * s.cwiseInverse().asDiagonal() *
         svd.matrixU().adjoint();
}

CMatrix herm_quad(const CMatrix& h, const CMatrix& r) {
  require_square(r, "herm_quad");
  if (h.cols() != r.rows()) {
    throw ShapeError("herm_quad: H " + dims(h) + " incompatible with R " +
                     dims(r));
  }
  CMatrix q = h * r * h.adjoint();
  return (q + q.adjoint()) * 0.5;
}

double asymmetry(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

CMatrix hermitian_part(const CMatrix& a) {
  require_square(a, "hermitian_part");
  const double asym = asymmetry(a);
  if (!(asym <= kHermitianTolerance)) {
    throw ContractViolation("expected Hermitian matrix, asymmetry " +
                            std::to_string(asym));
  }
  return (a + a.adjoint()) * 0.5;
}

bool all_finite(const CMatrix& a) { return a.allFinite(); }

double log_det_i_plus(const CMatrix& a) {
  const CMatrix sym = hermitian_part(a);
  const CMatrix m = identity(sym.rows()) + sym;
  Eigen::LDLT<CMatrix> ldlt(m);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    acc += std::log2(std::abs(ldlt.vectorD()(i)));
  }
  return acc;
}

double log2_abs_det(const CMatrix& a) {
  require_square(a, "log2_abs_det");
  if (a.rows() == 0) return 0.0;
  Eigen::PartialPivLU<CMatrix> lu(a);
  const CMatrix& packed = lu.matrixLU();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double mag = std::abs(packed(i, i));
    if (mag == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log2(mag);
  }
  return acc;
}

double det_ratio(const CMatrix& a, const CMatrix& b) {
  require_square(a, "det_ratio");
  require_square(b, "det_ratio");
  if (a.rows() != b.rows()) {
    throw ShapeError("det_ratio: sizes differ, " + dims(a) + " vs " + dims(b));
  }
  const double lb = log2_abs_det(b);
  if (!(lb > std::log2(kDetFloor))) {
    throw DegenerateError("det_ratio: |det(B)| below " +
                          std::to_string(kDetFloor));
  }
  return std::exp2(log2_abs_det(a) - lb);
}

CMatrix psd_sqrt(const CMatrix& a) {
  const CMatrix sym = hermitian_part(a);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(sym);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix& v = eig.eigenvectors();
  CMatrix out = v * root.asDiagonal() * v.adjoint();
  return (out + out.adjoint()) * 0.5;
}

CMatrix whitened_sinr(const CMatrix& x, const CMatrix& d) {
  require_square(x, "whitened_sinr");
  if (x.rows() != d.rows() || d.rows() != d.cols()) {
    throw ShapeError("whitened_sinr: X " + dims(x) + " vs D " + dims(d));
  }
  const CMatrix root = psd_sqrt(x);
  const CMatrix cov = identity(d.rows()) + hermitian_part(d);
  CMatrix out = root * cov.ldlt().solve(root);
  return (out + out.adjoint()) * 0.5;
}

}  // namespace relaysec
