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

// Genuine-qutrit certification.
//
// A state is qubit-simulable when rho = s01 + s02 + s12 with every s_ij PSD
// and supported on span{|i>, |j>}. The robustness mu is the least white-noise
// weight making mu I/3 + (1 - mu) rho simulable; mu > 0 certifies a genuine
// qutrit.
//
// Each off-diagonal entry of the target belongs to exactly one block, so
// feasibility reduces to splitting the diagonal: with D_k the target
// diagonal and a, b, c the moduli of entries (0,1), (0,2), (1,2), the blocks
// are PSD iff p0 p1 >= a^2, q0 q2 >= b^2, r1 r2 >= c^2 where p0 + q0 = D0,
// p1 + r1 = D1, q2 + r2 = D2. Taking p1, q2 minimal leaves one free variable
// p0, and the remaining condition (D1 - a^2/p0)(D2 - b^2/(D0 - p0)) >= c^2 has
// a log-concave left side, maximised by golden-section search.

#ifndef QTELE_CERTIFICATION_HPP
#define QTELE_CERTIFICATION_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qtele/process.hpp"
#include "qtele/types.hpp"

namespace qtele {

struct SubspaceDecomposition {
  CMatrix sigma_01;
  CMatrix sigma_02;
  CMatrix sigma_12;

  CMatrix sum() const { return sigma_01 + sigma_02 + sigma_12; }
  /// Largest violation of PSD, support and unit-trace constraints.
  double constraint_violation() const;
};

enum class Verdict { genuine_qutrit, qubit_simulable };
std::string to_string(Verdict v);

struct CertificationOptions {
  double bisection_width = 1e-6;
  double verdict_threshold = 1e-7;
};

/// The index triples (1,4,6), (1,4,7), (1,5,6), (1,5,7), (2,4,6), (2,4,7),
/// (2,5,6), (2,5,7).
const std::array<std::array<int, 3>, 8>& linear_criteria_triples();

/// |<l_a> + <l_b> + <l_c>| for each triple; a value above 1 certifies.
std::array<double, 8> linear_criteria(const DensityMatrix& rho);

/// sqrt(<l1>^2+<l2>^2) + sqrt(<l4>^2+<l5>^2) + sqrt(<l6>^2+<l7>^2); > 1 certifies.
double nonlinear_criterion(const DensityMatrix& rho);

/// Overlap with (|0>+|1>+|2>)/sqrt3; above 2/3 certifies.
double fidelity_witness(const DensityMatrix& rho);

/// Feasibility of the fixed-mu target mu I/3 + (1 - mu) rho. Returns the
/// decomposition of the target when it is qubit-simulable.
std::optional<SubspaceDecomposition> mixture_feasibility(const CMatrix& rho, double mu);

/// Decomposition of rho itself, or nothing when rho is a genuine qutrit.
std::optional<SubspaceDecomposition> qubit_mixture_feasibility(const DensityMatrix& rho);

struct Robustness {
  double mu = 0.0;
  SubspaceDecomposition decomposition;  // of the target at mu
};

/// Bisection over [-1, 1]; the returned mu is the feasible end of the final
/// bracket, so the decomposition always exists.
Robustness robustness_mu(const DensityMatrix& rho, const CertificationOptions& opt = {});

struct CertificationReport {
  std::array<double, 8> linear_values{};
  double nonlinear_lhs = 0.0;
  double fidelity_witness = 0.0;
  double mu = 0.0;
  std::optional<SubspaceDecomposition> decomposition;  // present when simulable
  Verdict verdict = Verdict::qubit_simulable;
};

CertificationReport certify(const DensityMatrix& rho, const CertificationOptions& opt = {});

/// Phases phi = k pi / n (half-open [0, pi)) or k pi / (n - 1) (closed [0, pi]).
struct PhaseGrid {
  int n1 = 20;
  int n2 = 20;
  bool closed_interval = false;

  std::vector<double> phases(int n) const;
  /// (|0> + e^{i phi1}|1> + e^{i phi2}|2>)/sqrt3 in row-major (phi1, phi2) order.
  std::vector<QuditState> states() const;
};

struct BatchSummary {
  int n_genuine = 0;
  int n_simulable = 0;
  double mean_mu_genuine = 0.0;
  double std_mu_genuine = 0.0;  // population standard deviation
  std::vector<double> mus;      // row-major over the grid
};

/// Evolves every grid state through chi and certifies it. Solver failures are
/// rethrown as SolverError naming the grid coordinates.
BatchSummary batch_certification(const ProcessMatrix& chi, const PhaseGrid& grid,
                                 const CertificationOptions& opt = {});

}  // namespace qtele

#endif  // QTELE_CERTIFICATION_HPP
