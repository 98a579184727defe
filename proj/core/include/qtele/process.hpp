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

// Qutrit process matrices: rho -> sum_lk chi_lk E_l rho E_k^dag.
//
// The operator basis is E_0 = I, E_i = sqrt(3/2) lambda_i, so that
// Tr(E_l^dag E_k) = 3 delta_lk. With this normalisation the identity channel
// has chi_00 = 1 and Tr(chi) = 1 for every trace-preserving channel.

#ifndef QTELE_PROCESS_HPP
#define QTELE_PROCESS_HPP

#include <array>
#include <vector>

#include "qtele/tomography.hpp"
#include "qtele/types.hpp"

namespace qtele {

/// E_0 .. E_8 as described above.
const std::vector<CMatrix>& process_basis();

class ProcessMatrix {
 public:
  /// Validates shape 9 x 9, Hermiticity (1e-9) and eigenvalues >= -1e-9.
  /// Trace preservation is reported, not enforced.
  static ProcessMatrix from_matrix(CMatrix chi);
  static ProcessMatrix ideal();
  /// (1 - w) chi_ideal + w I/9.
  static ProcessMatrix white_noise_mixture(double w);

  const CMatrix& matrix() const { return chi_; }
  Complex operator()(int l, int k) const { return chi_(l, k); }

  /// sum_lk chi_lk E_k^dag E_l, equal to I for a trace-preserving channel.
  CMatrix trace_map() const;
  /// Largest entry of |trace_map() - I|.
  double tp_residual() const;
  bool trace_preserving(double tol = 1e-6) const { return tp_residual() <= tol; }

 private:
  explicit ProcessMatrix(CMatrix chi) : chi_(std::move(chi)) {}
  CMatrix chi_;
};

struct InputOutputPair {
  QuditState input;
  DensityMatrix output;
};

struct ProcessImage {
  DensityMatrix rho = DensityMatrix::maximally_mixed(3);
  double raw_trace = 1.0;     // trace before renormalisation
  bool renormalized = false;  // |raw_trace - 1| > 1e-9
};

/// Unnormalised sum_lk chi_lk E_l rho E_k^dag.
CMatrix apply_process_raw(const CMatrix& chi, const CMatrix& rho);
/// Hermitian part of the image, renormalised to unit trace (flagged).
ProcessImage apply_process_checked(const ProcessMatrix& chi, const CMatrix& rho);
DensityMatrix apply_process(const ProcessMatrix& chi, const DensityMatrix& rho);

/// Re chi_00 = Tr(chi_ideal chi).
double process_fidelity(const ProcessMatrix& chi);

/// (f d + 1) / (d + 1).
double average_fidelity_from_process(double f_process, int dim);

struct MubFidelities {
  std::array<double, 12> values{};
  double mean = 0.0;
};

/// <psi_i| apply_process(chi, |psi_i><psi_i|) |psi_i> over the twelve MUB states.
MubFidelities mub_fidelities(const ProcessMatrix& chi);

enum class ProcessMetric {
  measurement,  // squared error of the projector probabilities of each output
  frobenius,    // squared Frobenius error of each output matrix
};

struct ProcessFitOptions {
  ProcessMetric metric = ProcessMetric::measurement;
  ProjectorSet projectors = ProjectorSet::canonical();
  double tolerance = 1e-10;
  int max_iterations = 200000;
};

struct ProcessFit {
  ProcessMatrix chi = ProcessMatrix::ideal();
  double residual = 0.0;  // objective value at the solution
  int iterations = 0;     // 0 when the unconstrained fit was already physical
};

/// Least-squares chi subject to chi >= 0 and trace preservation. Throws
/// IllPosedError when the inputs do not span the operator space and
/// SolverError when the iteration fails to converge.
ProcessFit reconstruct_process(const std::vector<InputOutputPair>& pairs,
                               const ProcessFitOptions& options = {});

/// Same fit from Hermitian output estimates that need not be positive, such
/// as linear-inversion states.
ProcessFit reconstruct_process(const std::vector<QuditState>& inputs,
                               const std::vector<CMatrix>& outputs,
                               const ProcessFitOptions& options = {});

/// Trace-preserving least-squares fit without the positivity constraint.
/// The result is Hermitian but may have negative eigenvalues, so it is
/// returned as a raw matrix for use with apply_process_raw.
CMatrix fit_process_tp(const std::vector<QuditState>& inputs, const std::vector<CMatrix>& outputs,
                       const ProcessFitOptions& options = {});

}  // namespace qtele

#endif  // QTELE_PROCESS_HPP
