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


#include "qtele/tomography.hpp"

#include <cmath>
#include <random>

#include "detail/hermitian.hpp"
#include "detail/rng.hpp"
#include "qtele/algebra.hpp"
#include "qtele/errors.hpp"

namespace qtele {
namespace {

// Row j maps Hermitian coordinates x to <psi_j| X |psi_j>.
Eigen::MatrixXd measurement_matrix(const ProjectorSet& set, int dim) {
  const auto basis = detail::hermitian_basis(dim);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(set.size()), dim * dim);
  for (std::size_t j = 0; j < set.size(); ++j) {
    const CVector& v = set.kets[j].amplitudes();
    for (int k = 0; k < dim * dim; ++k) {
      a(static_cast<Eigen::Index>(j), k) = v.dot(basis[static_cast<std::size_t>(k)] * v).real();
    }
  }
  return a;
}

}  // namespace

// Defined in state_mle.cpp.
StateEstimate maximum_likelihood_state(const CountsTable& counts, const CMatrix& seed);

ProjectorSet ProjectorSet::canonical() {
  const Complex one{1.0, 0.0};
  const Complex zero{};
  const Complex i{0.0, 1.0};
  ProjectorSet s;
  s.name = "canonical";
  s.labels = {"0", "1", "2", "0+1", "0+i1", "0+2", "0+i2", "1+2", "1+i2"};
  s.kets = {QuditState::basis(3, 0),
            QuditState::basis(3, 1),
            QuditState::basis(3, 2),
            QuditState::normalized({one, one, zero}),
            QuditState::normalized({one, i, zero}),
            QuditState::normalized({one, zero, one}),
            QuditState::normalized({one, zero, i}),
            QuditState::normalized({zero, one, one}),
            QuditState::normalized({zero, one, i})};
  return s;
}

ProjectorSet ProjectorSet::mub() {
  ProjectorSet s;
  s.name = "mub";
  s.kets = mub_family(3);
  for (std::size_t k = 0; k < s.kets.size(); ++k) s.labels.push_back("mub" + std::to_string(k + 1));
  return s;
}

Eigen::VectorXd ProjectorSet::probabilities(const CMatrix& rho) const {
  Eigen::VectorXd p(static_cast<Eigen::Index>(kets.size()));
  for (std::size_t j = 0; j < kets.size(); ++j) {
    p(static_cast<Eigen::Index>(j)) = fidelity(rho, kets[j]);
  }
  return p;
}

std::size_t ProjectorSet::index_of(const std::string& label) const {
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] == label) return j;
  }
  throw ParseError("unknown measurement setting '" + label + "' for projector set " + name);
}

void CountsTable::validate() const {
  if (counts.size() != projectors.size() || projectors.labels.size() != projectors.size()) {
    throw InvariantError("CountsTable: counts do not match the projector set");
  }
  for (auto c : counts) {
    if (c < 0) throw InvariantError("CountsTable: negative count");
  }
  if (!(exposure > 0.0)) throw InvariantError("CountsTable: exposure must be positive");
}

std::int64_t CountsTable::total() const {
  std::int64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

CountsTable simulate_counts(const DensityMatrix& rho, const ProjectorSet& projectors,
                            double exposure, std::uint64_t seed) {
  if (!(exposure > 0.0)) throw InvariantError("simulate_counts: exposure must be positive");
  auto rng = detail::make_engine(seed);
  CountsTable t;
  t.projectors = projectors;
  t.exposure = exposure;
  const Eigen::VectorXd p = projectors.probabilities(rho.matrix());
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const double mean = exposure * std::max(p(j), 0.0);
    if (mean <= 0.0) {
      t.counts.push_back(0);
      continue;
    }
    std::poisson_distribution<std::int64_t> dist(mean);
    t.counts.push_back(dist(rng));
  }
  return t;
}

CountsTable expected_counts(const CMatrix& rho, const ProjectorSet& projectors, double exposure) {
  CountsTable t;
  t.projectors = projectors;
  t.exposure = exposure;
  const Eigen::VectorXd p = projectors.probabilities(rho);
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    t.counts.push_back(static_cast<std::int64_t>(std::llround(exposure * std::max(p(j), 0.0))));
  }
  return t;
}

double profile_log_likelihood(const CountsTable& counts, const CMatrix& rho) {
  const Eigen::VectorXd p = counts.projectors.probabilities(rho);
  double l = 0.0;
  double n = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const auto c = static_cast<double>(counts.counts[static_cast<std::size_t>(j)]);
    n += c;
    if (c > 0.0) l += c * std::log(std::max(p(j), 1e-300));
  }
  return l - n * std::log(p.sum());
}

StateEstimate reconstruct_state(const CountsTable& counts, StateMethod method) {
  counts.validate();
  if (counts.total() == 0) throw InsufficientDataError("reconstruct_state: all counts are zero");
  const int dim = counts.projectors.kets.front().dim();
  const Eigen::MatrixXd a = measurement_matrix(counts.projectors, dim);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  if (svd.rank() < dim * dim) {
    throw IllPosedError("reconstruct_state: projector set is not informationally complete");
  }
  Eigen::VectorXd n(a.rows());
  for (Eigen::Index j = 0; j < n.size(); ++j) {
    n(j) = static_cast<double>(counts.counts[static_cast<std::size_t>(j)]);
  }
  CMatrix x = detail::from_coords(svd.solve(n), dim);
  const double tr = x.trace().real();
  if (!(tr > 0.0)) {
    throw InsufficientDataError("reconstruct_state: counts imply a non-positive intensity");
  }
  StateEstimate lin;
  lin.matrix = x / tr;
  lin.physical = min_eigenvalue(lin.matrix) >= -tol::kPsd;
  if (lin.physical) lin.log_likelihood = profile_log_likelihood(counts, lin.matrix);
  if (method == StateMethod::linear) return lin;

  // On a saturated projector set a physical inversion already maximises the
  // likelihood.
  const bool saturated = static_cast<int>(counts.projectors.size()) == dim * dim;
  if (saturated && lin.physical) {
    lin.matrix = clip_to_psd(lin.matrix);
    lin.matrix /= lin.matrix.trace().real();
    return lin;
  }
  return maximum_likelihood_state(counts, lin.matrix);
}

}  // namespace qtele
