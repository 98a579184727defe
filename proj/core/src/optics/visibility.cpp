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

#include "qtele/optics/visibility.hpp"

#include <cmath>
#include <string>

#include "qtele/errors.hpp"

namespace qtele::optics {

void VisibilityModel::validate() const {
  for (double v : {v_1t_23, v_1t_45, v_23_45}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvariantError("VisibilityModel: visibility " + std::to_string(v) +
                           " outside [0, 1]");
    }
  }
}

Eigen::Matrix3d VisibilityModel::gram() const {
  validate();
  Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
  g(0, 1) = g(1, 0) = std::sqrt(v_1t_23);
  g(0, 2) = g(2, 0) = std::sqrt(v_1t_45);
  g(1, 2) = g(2, 1) = std::sqrt(v_23_45);
  return g;
}

Eigen::MatrixXd VisibilityModel::internal_states() const {
  const Eigen::Matrix3d g = gram();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);
  if (es.eigenvalues().minCoeff() < -1e-12) {
    throw InvariantError("VisibilityModel: visibilities are not jointly realisable "
                         "(source Gram matrix is not positive semidefinite)");
  }
  // Largest eigenvalue first so that indistinguishable photons share tag 0.
  int rank = 0;
  for (int i = 0; i < 3; ++i) {
    if (es.eigenvalues()(i) > 1e-14) ++rank;
  }
  Eigen::MatrixXd w(3, rank);
  for (int c = 0; c < rank; ++c) {
    const int i = 2 - c;
    Eigen::Vector3d v = es.eigenvectors().col(i);
    if (v.sum() < 0.0) v = -v;
    w.col(c) = v * std::sqrt(es.eigenvalues()(i));
  }
  // Zero out rounding noise so that V = 1 reproduces single-tag states exactly.
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      if (std::abs(w(r, c)) < 1e-15) w(r, c) = 0.0;
    }
    w.row(r) /= w.row(r).norm();
  }
  return w;
}

double visibility_damping_factor(const VisibilityModel& model, std::pair<int, int> coherence) {
  model.validate();
  auto [i, j] = coherence;
  if (i > j) std::swap(i, j);
  if (i < 0 || j > 2 || i == j) {
    throw DimensionError("visibility_damping_factor: expected a pair of distinct levels in 0..2");
  }
  if (i == 0 && j == 1) return model.v_1t_23;
  return model.v_1t_45 * model.v_23_45;
}

}  // namespace qtele::optics
