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


// Maximum-likelihood state estimation over rho = T T^dag / Tr(T T^dag) with T
// lower triangular and a real diagonal.

#include <cmath>
#include <vector>

#include <ceres/ceres.h>

#include "qtele/errors.hpp"
#include "qtele/tomography.hpp"

namespace qtele {
namespace {

constexpr double kFloor = 1e-300;

int parameter_count(int dim) { return dim * dim; }

// Parameter layout: dim real diagonal entries, then (Re, Im) of T(r, c) for
// r > c in row-major order.
CMatrix unpack(const double* x, int dim) {
  CMatrix t = CMatrix::Zero(dim, dim);
  int k = 0;
  for (int r = 0; r < dim; ++r) t(r, r) = x[k++];
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < r; ++c) {
      t(r, c) = Complex(x[k], x[k + 1]);
      k += 2;
    }
  }
  return t;
}

std::vector<double> pack(const CMatrix& t) {
  const int dim = static_cast<int>(t.rows());
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(parameter_count(dim)));
  for (int r = 0; r < dim; ++r) x.push_back(t(r, r).real());
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < r; ++c) {
      x.push_back(t(r, c).real());
      x.push_back(t(r, c).imag());
    }
  }
  return x;
}

// Negative profile log-likelihood  -sum n_j log p_j + N log sum p_j  with
// p_j = |T^dag v_j|^2, which is invariant under rescaling T.
class NegLogLikelihood final : public ceres::FirstOrderFunction {
 public:
  NegLogLikelihood(const CountsTable& counts, int dim) : counts_(counts), dim_(dim) {
    for (auto c : counts.counts) total_ += static_cast<double>(c);
  }

  int NumParameters() const override { return parameter_count(dim_); }

  bool Evaluate(const double* x, double* cost, double* gradient) const override {
    const CMatrix t = unpack(x, dim_);
    const std::size_t m = counts_.projectors.size();
    std::vector<CVector> w(m);
    std::vector<double> p(m);
    double psum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      w[j] = t.adjoint() * counts_.projectors.kets[j].amplitudes();
      p[j] = std::max(w[j].squaredNorm(), kFloor);
      psum += p[j];
    }
    double f = total_ * std::log(psum);
    for (std::size_t j = 0; j < m; ++j) {
      const double n = static_cast<double>(counts_.counts[j]);
      if (n > 0.0) f -= n * std::log(p[j]);
    }
    if (!std::isfinite(f)) return false;
    *cost = f;
    if (gradient == nullptr) return true;

    const int np = parameter_count(dim_);
    std::fill(gradient, gradient + np, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const double n = static_cast<double>(counts_.counts[j]);
      const double coeff = total_ / psum - (n > 0.0 ? n / p[j] : 0.0);
      const CVector& v = counts_.projectors.kets[j].amplitudes();
      // dp/dRe T(r,c) = 2 Re(conj(w_c) v_r), dp/dIm T(r,c) = 2 Im(conj(w_c) v_r).
      int k = 0;
      for (int r = 0; r < dim_; ++r) {
        gradient[k++] += coeff * 2.0 * (std::conj(w[j](r)) * v(r)).real();
      }
      for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < r; ++c) {
          const Complex z = std::conj(w[j](c)) * v(r);
          gradient[k++] += coeff * 2.0 * z.real();
          gradient[k++] += coeff * 2.0 * z.imag();
        }
      }
    }
    return true;
  }

 private:
  const CountsTable& counts_;
  int dim_;
  double total_ = 0.0;
};

}  // namespace

StateEstimate maximum_likelihood_state(const CountsTable& counts, const CMatrix& seed) {
  const int dim = static_cast<int>(seed.rows());
  // Start from the clipped inversion, lifted off the boundary so every
  // parameter direction is live.
  CMatrix start = clip_to_psd(seed);
  start /= start.trace().real();
  start = 0.98 * start + 0.02 * CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  const Eigen::LLT<CMatrix> llt(start);
  if (llt.info() != Eigen::Success) throw SolverError("state MLE: seed factorisation failed");
  std::vector<double> x = pack(llt.matrixL());

  ceres::GradientProblem problem(new NegLogLikelihood(counts, dim));
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::BFGS;
  options.max_num_iterations = 2000;
  options.function_tolerance = 1e-13;
  options.gradient_tolerance = 1e-12;
  options.parameter_tolerance = 1e-12;
  options.logging_type = ceres::SILENT;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, x.data(), &summary);
  if (summary.termination_type == ceres::FAILURE) {
    throw SolverError("state MLE did not converge: " + summary.message);
  }

  const CMatrix t = unpack(x.data(), dim);
  CMatrix rho = t * t.adjoint();
  rho = hermitian_part(rho) / rho.trace().real();
  StateEstimate est;
  est.matrix = rho;
  est.physical = true;
  est.iterations = static_cast<int>(summary.iterations.size());
  est.log_likelihood = profile_log_likelihood(counts, rho);
  return est;
}

}  // namespace qtele
