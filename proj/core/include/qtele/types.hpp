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

// Value types shared by every module: pure qudit states, density matrices,
// Bell labels and bipartite pure states. All are immutable once built and
// validate their invariants on construction.

#ifndef QTELE_TYPES_HPP
#define QTELE_TYPES_HPP

#include <complex>
#include <initializer_list>
#include <numbers>

#include <Eigen/Dense>

namespace qtele {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

/// e^{2 pi i k / d}
Complex root_of_unity(int k, int d);

namespace tol {
inline constexpr double kNorm = 1e-12;       // pure-state normalisation
inline constexpr double kHermitian = 1e-9;   // density-matrix Hermiticity
inline constexpr double kPsd = 1e-9;         // smallest admissible eigenvalue is -kPsd
inline constexpr double kTrace = 1e-9;
}  // namespace tol

/// Normalised pure state of a single qudit.
class QuditState {
 public:
  /// Throws InvariantError unless sum |a_k|^2 = 1 within 1e-12.
  static QuditState from_amplitudes(CVector amplitudes);
  /// Rescales to unit norm; throws on the zero vector.
  static QuditState normalized(CVector amplitudes);
  static QuditState normalized(std::initializer_list<Complex> amplitudes);
  static QuditState basis(int dim, int level);

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](int k) const { return amps_(k); }
  CMatrix projector() const { return amps_ * amps_.adjoint(); }
  Complex inner(const QuditState& other) const { return amps_.dot(other.amps_); }

 private:
  explicit QuditState(CVector a) : amps_(std::move(a)) {}
  CVector amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-9), eigenvalues >= -1e-9 and trace 1 (1e-9).
  static DensityMatrix from_matrix(CMatrix m);
  static DensityMatrix pure(const QuditState& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

 private:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Index pair (n, m) of the d-dimensional Bell state |psi_nm>.
struct BellLabel {
  int n = 0;
  int m = 0;

  bool valid_for(int dim) const { return n >= 0 && n < dim && m >= 0 && m < dim; }
  friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

/// Pure state of two qudits; amplitude of |i>|j> stored at i * dim + j.
class BipartiteState {
 public:
  static BipartiteState from_amplitudes(int dim, CVector amplitudes);

  int dim() const { return dim_; }
  const CVector& amplitudes() const { return amps_; }
  Complex operator()(int i, int j) const { return amps_(i * dim_ + j); }

 private:
  BipartiteState(int dim, CVector a) : dim_(dim), amps_(std::move(a)) {}
  int dim_;
  CVector amps_;
};

/// Hermitian part (M + M^dag) / 2.
CMatrix hermitian_part(const CMatrix& m);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const CMatrix& m);

/// Eigenvalues of the Hermitian part clipped at zero.
CMatrix clip_to_psd(const CMatrix& m);

}  // namespace qtele

#endif  // QTELE_TYPES_HPP
