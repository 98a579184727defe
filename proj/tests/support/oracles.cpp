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


#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qtele::testing {

BranchOracle bell_projection_oracle(const std::vector<double>& schmidt, const CVector& phi,
                                    int n, int m) {
  constexpr int d = 3;
  const Complex w = std::polar(1.0, 2.0 * std::acos(-1.0) / d);
  // index (i1, i2, i3) -> 9 i1 + 3 i2 + i3
  CVector full = CVector::Zero(27);
  for (int i1 = 0; i1 < d; ++i1) {
    for (int k = 0; k < d; ++k) full(9 * i1 + 3 * k + k) = phi(i1) * schmidt[k];
  }
  CVector bell = CVector::Zero(9);
  for (int j = 0; j < d; ++j) bell(3 * j + (j + m) % d) = std::pow(w, j * n) / std::sqrt(3.0);

  BranchOracle out;
  out.photon3 = CVector::Zero(d);
  for (int i3 = 0; i3 < d; ++i3) {
    Complex acc = 0.0;
    for (int ab = 0; ab < 9; ++ab) acc += std::conj(bell(ab)) * full(3 * ab + i3);
    out.photon3(i3) = acc;
  }
  out.probability = out.photon3.squaredNorm();
  return out;
}

double grid_feasibility_margin(const CMatrix& rho, double mu, int points) {
  const CMatrix t = mu * CMatrix::Identity(3, 3) / 3.0 + (1.0 - mu) * rho;
  const double d0 = t(0, 0).real();
  const double d1 = t(1, 1).real();
  const double d2 = t(2, 2).real();
  const double c01 = std::norm(t(0, 1));
  const double c02 = std::norm(t(0, 2));
  const double c12 = std::norm(t(1, 2));
  if (d0 < 0.0 || d1 < 0.0 || d2 < 0.0) return -std::numeric_limits<double>::infinity();

  auto at = [points](double total, int k) { return total * k / (points - 1); };
  double best = -std::numeric_limits<double>::infinity();
  // D0 = p0 + q0, D1 = p1 + r1, D2 = q2 + r2
  for (int i = 0; i < points; ++i) {
    const double p0 = at(d0, i);
    const double q0 = d0 - p0;
    for (int j = 0; j < points; ++j) {
      const double p1 = at(d1, j);
      const double r1 = d1 - p1;
      const double s01 = p0 * p1 - c01;
      if (s01 < best) continue;
      for (int k = 0; k < points; ++k) {
        const double q2 = at(d2, k);
        const double r2 = d2 - q2;
        const double s = std::min({s01, q0 * q2 - c02, r1 * r2 - c12});
        best = std::max(best, s);
      }
    }
  }
  return best;
}

double grid_robustness(const CMatrix& rho, int points, double width) {
  double lo = -1.0;
  double hi = 1.0;
  if (grid_feasibility_margin(rho, lo, points) >= 0.0) return lo;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (grid_feasibility_margin(rho, mid, points) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

CVector random_ket(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = Complex(g(rng), g(rng));
  return v / v.norm();
}

CMatrix random_density(int dim, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(dim, rank);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < rank; ++c) a(r, c) = Complex(g(rng), g(rng));
  }
  CMatrix rho = a * a.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return rho / rho.trace().real();
}

CMatrix coherent_density(double a, double b) {
  CVector v(3);
  v << 1.0, std::polar(1.0, a), std::polar(1.0, b);
  return v * v.adjoint() / 3.0;
}

}  // namespace qtele::testing
