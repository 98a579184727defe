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

#include "qtele/types.hpp"

#include <cmath>
#include <string>

#include "qtele/errors.hpp"

namespace qtele {

Complex root_of_unity(int k, int d) {
  const int r = ((k % d) + d) % d;
  return std::polar(1.0, 2.0 * kPi * r / d);
}

QuditState QuditState::from_amplitudes(CVector amplitudes) {
  if (amplitudes.size() < 2) {
    throw DimensionError("QuditState: dimension must be at least 2");
  }
  if (!amplitudes.allFinite()) {
    throw InvariantError("QuditState: non-finite amplitude");
  }
  const double n2 = amplitudes.squaredNorm();
  if (std::abs(n2 - 1.0) > tol::kNorm) {
    throw InvariantError("QuditState: squared norm " + std::to_string(n2) + " != 1");
  }
  return QuditState(std::move(amplitudes));
}

QuditState QuditState::normalized(CVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvariantError("QuditState: cannot normalise a zero or non-finite vector");
  }
  amplitudes /= n;
  return from_amplitudes(std::move(amplitudes));
}

QuditState QuditState::normalized(std::initializer_list<Complex> amplitudes) {
  CVector v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amplitudes) v(i++) = a;
  return normalized(std::move(v));
}

QuditState QuditState::basis(int dim, int level) {
  if (dim < 2) throw DimensionError("QuditState::basis: dim < 2");
  if (level < 0 || level >= dim) throw DimensionError("QuditState::basis: level out of range");
  CVector v = CVector::Zero(dim);
  v(level) = 1.0;
  return QuditState(std::move(v));
}

DensityMatrix DensityMatrix::from_matrix(CMatrix m) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw DimensionError("DensityMatrix: expected a square matrix of dimension >= 2");
  }
  if (!m.allFinite()) throw InvariantError("DensityMatrix: non-finite entry");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::kHermitian) {
    throw InvariantError("DensityMatrix: not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    throw InvariantError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  const double lo = min_eigenvalue(m);
  if (lo < -tol::kPsd) {
    throw InvariantError("DensityMatrix: negative eigenvalue " + std::to_string(lo));
  }
  return DensityMatrix(hermitian_part(m));
}

DensityMatrix DensityMatrix::pure(const QuditState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 2) throw DimensionError("DensityMatrix: dim < 2");
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

BipartiteState BipartiteState::from_amplitudes(int dim, CVector amplitudes) {
  if (dim < 2 || amplitudes.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DimensionError("BipartiteState: expected dim^2 amplitudes");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > tol::kNorm) {
    throw InvariantError("BipartiteState: not normalised");
  }
  return BipartiteState(dim, std::move(amplitudes));
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CMatrix clip_to_psd(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qtele
