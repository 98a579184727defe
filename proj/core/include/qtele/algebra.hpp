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

#ifndef QTELE_ALGEBRA_HPP
#define QTELE_ALGEBRA_HPP

#include <array>
#include <vector>

#include "qtele/types.hpp"

namespace qtele {

/// [I, lambda_1, ..., lambda_8]. Only dim = 3 is supported.
std::vector<CMatrix> gell_mann_basis(int dim);

/// U_nm = sum_k w^{kn} |k><k+m|, w = e^{2 pi i / d}. Undoes the Bell outcome
/// |psi_nm> exactly: (U_nm (x) I)|psi_00> = |psi_nm>.
CMatrix weyl_operator(BellLabel label, int dim);

/// The alternative table U_nm = sum_j w^{nj} |j+m><j| (shift up, then phase).
/// Equals a global phase times weyl_operator({n, -m}).
CMatrix shift_up_weyl_operator(BellLabel label, int dim);

/// |psi_nm> = d^{-1/2} sum_j w^{jn} |j>|j+m>.
BipartiteState bell_state(BellLabel label, int dim);

/// The twelve qutrit MUB states in the order of four bases of three:
/// computational, Fourier, and the two w-twisted bases.
std::vector<QuditState> mub_family(int dim);

/// <psi| rho |psi>.
double fidelity(const DensityMatrix& rho, const QuditState& target);
/// Same, for a matrix that has not been validated as a density matrix.
double fidelity(const CMatrix& rho, const QuditState& target);

/// Tr(rho lambda_i) for i = 1..8.
std::array<double, 8> bloch_vector(const DensityMatrix& rho);
std::array<double, 8> bloch_vector(const CMatrix& rho);

/// I/3 + (1/2) sum_i b_i lambda_i.
CMatrix from_bloch_vector(const std::array<double, 8>& b);

/// ceil(log2 d) - 1 auxiliary pairs for a linear-optical d-dimensional BSM.
int aux_pairs_needed(int dim);

}  // namespace qtele

#endif  // QTELE_ALGEBRA_HPP
