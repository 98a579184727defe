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

// Qutrit state tomography from projector counts.

#ifndef QTELE_TOMOGRAPHY_HPP
#define QTELE_TOMOGRAPHY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qtele/types.hpp"

namespace qtele {

struct ProjectorSet {
  std::string name;
  std::vector<std::string> labels;
  std::vector<QuditState> kets;

  /// |0>, |1>, |2>, (|0>+|1>)/sqrt2, (|0>+i|1>)/sqrt2, (|0>+|2>)/sqrt2,
  /// (|0>+i|2>)/sqrt2, (|1>+|2>)/sqrt2, (|1>+i|2>)/sqrt2 labelled
  /// "0", "1", "2", "0+1", "0+i1", "0+2", "0+i2", "1+2", "1+i2".
  static ProjectorSet canonical();
  /// The twelve MUB states, labelled "mub1" .. "mub12".
  static ProjectorSet mub();

  std::size_t size() const { return kets.size(); }
  /// <psi_j| rho |psi_j> for every projector.
  Eigen::VectorXd probabilities(const CMatrix& rho) const;
  /// Index of a label; throws ParseError when absent.
  std::size_t index_of(const std::string& label) const;
};

struct CountsTable {
  ProjectorSet projectors;
  std::vector<std::int64_t> counts;
  double exposure = 1.0;

  /// Throws InvariantError on size mismatch, negative counts or exposure <= 0.
  void validate() const;
  std::int64_t total() const;
};

/// count_j ~ Poisson(exposure * <psi_j|rho|psi_j>), reproducible per seed.
CountsTable simulate_counts(const DensityMatrix& rho, const ProjectorSet& projectors,
                            double exposure, std::uint64_t seed);

/// Expected counts exposure * p_j rounded to the nearest integer.
CountsTable expected_counts(const CMatrix& rho, const ProjectorSet& projectors, double exposure);

enum class StateMethod { linear, mle };

struct StateEstimate {
  CMatrix matrix;         // Hermitian, trace one
  bool physical = false;  // matrix is positive semidefinite within 1e-9
  double log_likelihood = 0.0;
  int iterations = 0;

  /// Validated density matrix; throws InvariantError when !physical.
  DensityMatrix density() const { return DensityMatrix::from_matrix(matrix); }
};

/// Linear inversion solves <psi_j|X|psi_j> = n_j for a Hermitian X in the
/// least-squares sense and normalises by Tr X; on the canonical set this is
/// the usual closed form with diagonal normalised by n0 + n1 + n2. The MLE
/// maximises the Poisson likelihood with the intensity profiled out over
/// rho = T T^dag / Tr, T lower triangular. Throws InsufficientDataError for
/// all-zero counts and IllPosedError when the projectors are not
/// informationally complete.
StateEstimate reconstruct_state(const CountsTable& counts, StateMethod method);

/// Poisson log-likelihood with the intensity profiled out.
double profile_log_likelihood(const CountsTable& counts, const CMatrix& rho);

}  // namespace qtele

#endif  // QTELE_TOMOGRAPHY_HPP
