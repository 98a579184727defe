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

#include "qtele/algebra.hpp"

#include <cmath>
#include <string>

#include "qtele/errors.hpp"

namespace qtele {
namespace {

constexpr Complex kI{0.0, 1.0};

int mod(int a, int d) { return ((a % d) + d) % d; }

void require_label(BellLabel label, int dim) {
  if (dim < 2) throw DimensionError("dimension must be at least 2");
  if (!label.valid_for(dim)) {
    throw DimensionError("Bell label (" + std::to_string(label.n) + "," +
                         std::to_string(label.m) + ") out of range for d=" +
                         std::to_string(dim));
  }
}

void require_qutrit(int dim, const char* what) {
  if (dim != 3) throw DimensionError(std::string(what) + ": only dim = 3 is supported");
}

}  // namespace

std::vector<CMatrix> gell_mann_basis(int dim) {
  require_qutrit(dim, "gell_mann_basis");
  std::vector<CMatrix> l(9, CMatrix::Zero(3, 3));
  l[0] = CMatrix::Identity(3, 3);
  l[1](0, 1) = 1.0;
  l[1](1, 0) = 1.0;
  l[2](0, 1) = -kI;
  l[2](1, 0) = kI;
  l[3](0, 0) = 1.0;
  l[3](1, 1) = -1.0;
  l[4](0, 2) = 1.0;
  l[4](2, 0) = 1.0;
  l[5](0, 2) = -kI;
  l[5](2, 0) = kI;
  l[6](1, 2) = 1.0;
  l[6](2, 1) = 1.0;
  l[7](1, 2) = -kI;
  l[7](2, 1) = kI;
  const double s = 1.0 / std::sqrt(3.0);
  l[8](0, 0) = s;
  l[8](1, 1) = s;
  l[8](2, 2) = -2.0 * s;
  return l;
}

CMatrix weyl_operator(BellLabel label, int dim) {
  require_label(label, dim);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    u(k, mod(k + label.m, dim)) = root_of_unity(k * label.n, dim);
  }
  return u;
}

CMatrix shift_up_weyl_operator(BellLabel label, int dim) {
  require_label(label, dim);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    u(mod(j + label.m, dim), j) = root_of_unity(j * label.n, dim);
  }
  return u;
}

BipartiteState bell_state(BellLabel label, int dim) {
  require_label(label, dim);
  CVector a = CVector::Zero(dim * dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) {
    a(j * dim + mod(j + label.m, dim)) = norm * root_of_unity(j * label.n, dim);
  }
  return BipartiteState::from_amplitudes(dim, std::move(a));
}

std::vector<QuditState> mub_family(int dim) {
  require_qutrit(dim, "mub_family");
  const Complex w = root_of_unity(1, 3);
  const Complex w2 = w * w;
  const Complex one{1.0, 0.0};
  std::vector<QuditState> out;
  out.reserve(12);
  for (int k = 0; k < 3; ++k) out.push_back(QuditState::basis(3, k));
  out.push_back(QuditState::normalized({one, one, one}));
  out.push_back(QuditState::normalized({one, w, w2}));
  out.push_back(QuditState::normalized({one, w2, w}));
  out.push_back(QuditState::normalized({w, one, one}));
  out.push_back(QuditState::normalized({one, w, one}));
  out.push_back(QuditState::normalized({one, one, w}));
  out.push_back(QuditState::normalized({w2, one, one}));
  out.push_back(QuditState::normalized({one, w2, one}));
  out.push_back(QuditState::normalized({one, one, w2}));
  return out;
}

double fidelity(const CMatrix& rho, const QuditState& target) {
  if (rho.rows() != target.dim() || rho.cols() != target.dim()) {
    throw DimensionError("fidelity: dimension mismatch");
  }
  const Complex f = target.amplitudes().dot(rho * target.amplitudes());
  return f.real();
}

double fidelity(const DensityMatrix& rho, const QuditState& target) {
  return fidelity(rho.matrix(), target);
}

std::array<double, 8> bloch_vector(const CMatrix& rho) {
  if (rho.rows() != 3 || rho.cols() != 3) throw DimensionError("bloch_vector: dim must be 3");
  const auto l = gell_mann_basis(3);
  std::array<double, 8> b{};
  for (int i = 1; i <= 8; ++i) b[i - 1] = (rho * l[i]).trace().real();
  return b;
}

std::array<double, 8> bloch_vector(const DensityMatrix& rho) { return bloch_vector(rho.matrix()); }

CMatrix from_bloch_vector(const std::array<double, 8>& b) {
  const auto l = gell_mann_basis(3);
  CMatrix m = l[0] / 3.0;
  for (int i = 1; i <= 8; ++i) m += 0.5 * b[i - 1] * l[i];
  return m;
}

int aux_pairs_needed(int dim) {
  if (dim < 2) throw DimensionError("aux_pairs_needed: dim must be at least 2");
  int bits = 0;
  while ((1 << bits) < dim) ++bits;
  return bits - 1;
}

}  // namespace qtele
