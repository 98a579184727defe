// Copyright 2026 The qtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Internal helpers shared by the estimation code. Not installed.

#ifndef QTELE_DETAIL_HERMITIAN_HPP
#define QTELE_DETAIL_HERMITIAN_HPP

#include <cmath>
#include <vector>

#include "qtele/types.hpp"

namespace qtele::detail {

/// Orthonormal (Frobenius) basis of n x n Hermitian matrices: diagonal units,
/// then (E_ab + E_ba)/sqrt2 and i(E_ab - E_ba)/sqrt2 for a < b.
inline std::vector<CMatrix> hermitian_basis(int n) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    CMatrix m = CMatrix::Zero(n, n);
    m(a, a) = 1.0;
    out.push_back(m);
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      CMatrix re = CMatrix::Zero(n, n);
      re(a, b) = r;
      re(b, a) = r;
      out.push_back(re);
      CMatrix im = CMatrix::Zero(n, n);
      im(a, b) = Complex(0.0, r);
      im(b, a) = Complex(0.0, -r);
      out.push_back(im);
    }
  }
  return out;
}

/// Coordinates x_k = Tr(B_k^dag M) of the Hermitian part of M.
inline Eigen::VectorXd to_coords(const CMatrix& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd x(n * n);
  int k = 0;
  for (int a = 0; a < n; ++a) x(k++) = m(a, a).real();
  const double s = std::sqrt(2.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Complex h = 0.5 * (m(a, b) + std::conj(m(b, a)));
      x(k++) = s * h.real();
      x(k++) = s * h.imag();
    }
  }
  return x;
}

inline CMatrix from_coords(const Eigen::VectorXd& x, int n) {
  CMatrix m = CMatrix::Zero(n, n);
  int k = 0;
  for (int a = 0; a < n; ++a) m(a, a) = x(k++);
  const double r = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Complex h(r * x(k), r * x(k + 1));
      k += 2;
      m(a, b) = h;
      m(b, a) = std::conj(h);
    }
  }
  return m;
}

/// Euclidean projection onto the PSD cone in these coordinates.
inline Eigen::VectorXd project_psd(const Eigen::VectorXd& x, int n) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(from_coords(x, n));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return to_coords(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
}

}  // namespace qtele::detail

#endif  // QTELE_DETAIL_HERMITIAN_HPP
