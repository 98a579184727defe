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


#include "qtele/process.hpp"

#include <cmath>
#include <string>

#include "detail/hermitian.hpp"
#include "qtele/algebra.hpp"
#include "qtele/errors.hpp"

namespace qtele {
namespace {

constexpr int kDim = 3;
constexpr int kOps = 9;
constexpr int kCoords = kOps * kOps;

struct LinearModel {
  Eigen::MatrixXd a;  // data rows x 81
  Eigen::VectorXd y;
};

LinearModel build_model(const std::vector<QuditState>& inputs, const std::vector<CMatrix>& outputs,
                        const ProcessFitOptions& opt) {
  const auto basis = detail::hermitian_basis(kOps);
  const int per = opt.metric == ProcessMetric::measurement
                      ? static_cast<int>(opt.projectors.size())
                      : kDim * kDim;
  const auto rows = static_cast<Eigen::Index>(inputs.size()) * per;
  LinearModel m{Eigen::MatrixXd(rows, kCoords), Eigen::VectorXd(rows)};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const CMatrix in = inputs[i].projector();
    const auto r0 = static_cast<Eigen::Index>(i) * per;
    for (int k = 0; k < kCoords; ++k) {
      const CMatrix img = apply_process_raw(basis[static_cast<std::size_t>(k)], in);
      if (opt.metric == ProcessMetric::measurement) {
        m.a.block(r0, k, per, 1) = opt.projectors.probabilities(img);
      } else {
        m.a.block(r0, k, per, 1) = detail::to_coords(img);
      }
    }
    const CMatrix& out = outputs[i];
    m.y.segment(r0, per) = opt.metric == ProcessMetric::measurement
                               ? opt.projectors.probabilities(out)
                               : detail::to_coords(out);
  }
  return m;
}

// Rows map chi coordinates to coordinates of sum_lk chi_lk E_k^dag E_l.
Eigen::MatrixXd trace_constraint() {
  const auto basis = detail::hermitian_basis(kOps);
  const auto& e = process_basis();
  Eigen::MatrixXd c(kDim * kDim, kCoords);
  for (int k = 0; k < kCoords; ++k) {
    const CMatrix& b = basis[static_cast<std::size_t>(k)];
    CMatrix t = CMatrix::Zero(kDim, kDim);
    for (int l = 0; l < kOps; ++l) {
      for (int m = 0; m < kOps; ++m) {
        if (b(l, m) != Complex{}) t += b(l, m) * e[m].adjoint() * e[l];
      }
    }
    c.col(k) = detail::to_coords(t);
  }
  return c;
}

}  // namespace

const std::vector<CMatrix>& process_basis() {
  static const std::vector<CMatrix> basis = [] {
    auto l = gell_mann_basis(3);
    for (std::size_t i = 1; i < l.size(); ++i) l[i] *= std::sqrt(1.5);
    return l;
  }();
  return basis;
}

ProcessMatrix ProcessMatrix::from_matrix(CMatrix chi) {
  if (chi.rows() != kOps || chi.cols() != kOps) {
    throw DimensionError("ProcessMatrix: expected a 9 x 9 matrix");
  }
  if (!chi.allFinite()) throw InvariantError("ProcessMatrix: non-finite entry");
  const double herm = (chi - chi.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::kHermitian) {
    throw InvariantError("ProcessMatrix: not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const double lo = min_eigenvalue(chi);
  if (lo < -tol::kPsd) {
    throw InvariantError("ProcessMatrix: negative eigenvalue " + std::to_string(lo));
  }
  return ProcessMatrix(hermitian_part(chi));
}

ProcessMatrix ProcessMatrix::ideal() {
  CMatrix chi = CMatrix::Zero(kOps, kOps);
  chi(0, 0) = 1.0;
  return ProcessMatrix(chi);
}

ProcessMatrix ProcessMatrix::white_noise_mixture(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw InvariantError("white_noise_mixture: weight outside [0, 1]");
  return ProcessMatrix((1.0 - w) * ideal().matrix() +
                       w * CMatrix::Identity(kOps, kOps) / static_cast<double>(kOps));
}

CMatrix ProcessMatrix::trace_map() const {
  const auto& e = process_basis();
  CMatrix t = CMatrix::Zero(kDim, kDim);
  for (int l = 0; l < kOps; ++l) {
    for (int k = 0; k < kOps; ++k) t += chi_(l, k) * e[k].adjoint() * e[l];
  }
  return t;
}

double ProcessMatrix::tp_residual() const {
  return (trace_map() - CMatrix::Identity(kDim, kDim)).cwiseAbs().maxCoeff();
}

CMatrix apply_process_raw(const CMatrix& chi, const CMatrix& rho) {
  if (chi.rows() != kOps || rho.rows() != kDim) throw DimensionError("apply_process: shape");
  const auto& e = process_basis();
  std::vector<CMatrix> left(kOps);
  for (int l = 0; l < kOps; ++l) left[l] = e[l] * rho;
  CMatrix out = CMatrix::Zero(kDim, kDim);
  for (int l = 0; l < kOps; ++l) {
    for (int k = 0; k < kOps; ++k) {
      if (chi(l, k) != Complex{}) out += chi(l, k) * left[l] * e[k].adjoint();
    }
  }
  return out;
}

ProcessImage apply_process_checked(const ProcessMatrix& chi, const CMatrix& rho) {
  CMatrix out = hermitian_part(apply_process_raw(chi.matrix(), rho));
  ProcessImage img;
  img.raw_trace = out.trace().real();
  if (!(img.raw_trace > 0.0)) throw InvariantError("apply_process: image has no weight");
  img.renormalized = std::abs(img.raw_trace - 1.0) > tol::kTrace;
  out /= img.raw_trace;
  // A PSD chi gives a PSD image; clip rounding noise only.
  if (min_eigenvalue(out) < 0.0) {
    out = clip_to_psd(out);
    out /= out.trace().real();
  }
  img.rho = DensityMatrix::from_matrix(out);
  return img;
}

DensityMatrix apply_process(const ProcessMatrix& chi, const DensityMatrix& rho) {
  return apply_process_checked(chi, rho.matrix()).rho;
}

double process_fidelity(const ProcessMatrix& chi) { return chi(0, 0).real(); }

double average_fidelity_from_process(double f_process, int dim) {
  if (dim < 2) throw DimensionError("average_fidelity_from_process: dim < 2");
  return (f_process * dim + 1.0) / (dim + 1.0);
}

MubFidelities mub_fidelities(const ProcessMatrix& chi) {
  MubFidelities f;
  const auto states = mub_family(3);
  double sum = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const ProcessImage img = apply_process_checked(chi, states[i].projector());
    f.values[i] = fidelity(img.rho, states[i]);
    sum += f.values[i];
  }
  f.mean = sum / static_cast<double>(states.size());
  return f;
}

ProcessFit reconstruct_process(const std::vector<InputOutputPair>& pairs,
                               const ProcessFitOptions& options) {
  std::vector<QuditState> inputs;
  std::vector<CMatrix> outputs;
  for (const auto& p : pairs) {
    inputs.push_back(p.input);
    outputs.push_back(p.output.matrix());
  }
  return reconstruct_process(inputs, outputs, options);
}

namespace {

// Least squares in measurement or Frobenius space with the trace-preservation
// constraint imposed through a KKT system; the positivity constraint is left
// to the caller.
struct TpProblem {
  LinearModel m;
  Eigen::MatrixXd ata;
  Eigen::VectorXd aty;
  Eigen::MatrixXd c;
  Eigen::VectorXd d;
  double top = 0.0;

  TpProblem(const std::vector<QuditState>& inputs, const std::vector<CMatrix>& outputs,
            const ProcessFitOptions& options) {
    if (inputs.size() != outputs.size()) {
      throw InvariantError("reconstruct_process: one output per input is required");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i].dim() != kDim || outputs[i].rows() != kDim || outputs[i].cols() != kDim) {
        throw DimensionError("reconstruct_process: qutrit pairs required");
      }
      if ((outputs[i] - outputs[i].adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian) {
        throw InvariantError("reconstruct_process: output estimates must be Hermitian");
      }
    }
    if (inputs.empty()) throw IllPosedError("reconstruct_process: no input/output pairs");
    m = build_model(inputs, outputs, options);
    ata = m.a.transpose() * m.a;
    aty = m.a.transpose() * m.y;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spec(ata, Eigen::EigenvaluesOnly);
    top = spec.eigenvalues().maxCoeff();
    if (!(spec.eigenvalues().minCoeff() > 1e-10 * top)) {
      throw IllPosedError("reconstruct_process: inputs do not determine the process matrix");
    }
    c = trace_constraint();
    d = detail::to_coords(CMatrix::Identity(kDim, kDim));
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> kkt(double rho) const {
    const auto nc = c.rows();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(kCoords + nc, kCoords + nc);
    k.topLeftCorner(kCoords, kCoords) = ata;
    k.topLeftCorner(kCoords, kCoords).diagonal().array() += rho;
    k.topRightCorner(kCoords, nc) = c.transpose();
    k.bottomLeftCorner(nc, kCoords) = c;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(k);
  }

  Eigen::VectorXd solve(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                        const Eigen::VectorXd& g) const {
    Eigen::VectorXd rhs(kCoords + c.rows());
    rhs << g, d;
    return lu.solve(rhs).head(kCoords);
  }

  double objective(const Eigen::VectorXd& x) const { return (m.a * x - m.y).squaredNorm(); }
};

}  // namespace

CMatrix fit_process_tp(const std::vector<QuditState>& inputs, const std::vector<CMatrix>& outputs,
                       const ProcessFitOptions& options) {
  const TpProblem p(inputs, outputs, options);
  return detail::from_coords(p.solve(p.kkt(0.0), p.aty), kOps);
}

ProcessFit reconstruct_process(const std::vector<QuditState>& inputs,
                               const std::vector<CMatrix>& outputs,
                               const ProcessFitOptions& options) {
  const TpProblem p(inputs, outputs, options);
  const double top = p.top;
  const auto& aty = p.aty;
  auto kkt = [&](double rho) { return p.kkt(rho); };
  auto solve = [&](const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, const Eigen::VectorXd& g) {
    return p.solve(lu, g);
  };
  auto objective = [&](const Eigen::VectorXd& x) { return p.objective(x); };

  ProcessFit fit;
  Eigen::VectorXd x = solve(kkt(0.0), aty);
  if (min_eigenvalue(detail::from_coords(x, kOps)) >= -1e-12) {
    const Eigen::VectorXd z = detail::project_psd(x, kOps);
    fit.chi = ProcessMatrix::from_matrix(detail::from_coords(z, kOps));
    fit.residual = objective(z);
    return fit;
  }

  // ADMM on  min |Ax - y|^2  s.t. Cx = d,  x = z,  z PSD.
  const double rho = top / static_cast<double>(kCoords);
  const auto lu = kkt(rho);
  Eigen::VectorXd z = detail::project_psd(x, kOps);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(kCoords);
  for (int it = 1; it <= options.max_iterations; ++it) {
    x = solve(lu, aty + rho * (z - u));
    const Eigen::VectorXd z_new = detail::project_psd(x + u, kOps);
    u += x - z_new;
    const double primal = (x - z_new).norm();
    const double dual = (z_new - z).norm();
    z = z_new;
    if (primal < options.tolerance && dual < options.tolerance) {
      fit.chi = ProcessMatrix::from_matrix(detail::from_coords(z, kOps));
      fit.residual = objective(z);
      fit.iterations = it;
      return fit;
    }
  }
  throw SolverError("reconstruct_process: ADMM did not reach tolerance " +
                    std::to_string(options.tolerance) + " in " +
                    std::to_string(options.max_iterations) + " iterations");
}

}  // namespace qtele
