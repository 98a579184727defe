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


#include "qtele/certification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtele/algebra.hpp"
#include "qtele/errors.hpp"

namespace qtele {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack on the hyperbolic constraint r1 r2 >= c^2 and on the diagonal.
constexpr double kSlack = 1e-12;

// Smallest admissible partner of a diagonal entry x sharing an off-diagonal of
// modulus t: t^2 / x, with 0/0 = 0 and t^2/0 = inf.
double partner(double t, double x) {
  if (t == 0.0) return 0.0;
  return x > 0.0 ? t * t / x : kInf;
}

CMatrix block(int i, int j, double di, double dj, Complex off) {
  CMatrix s = CMatrix::Zero(3, 3);
  s(i, i) = di;
  s(j, j) = dj;
  s(i, j) = off;
  s(j, i) = std::conj(off);
  return s;
}

}  // namespace

std::string to_string(Verdict v) {
  return v == Verdict::genuine_qutrit ? "genuine_qutrit" : "qubit_simulable";
}

double SubspaceDecomposition::constraint_violation() const {
  double v = 0.0;
  const std::array<std::pair<const CMatrix*, int>, 3> blocks = {
      std::pair{&sigma_01, 2}, std::pair{&sigma_02, 1}, std::pair{&sigma_12, 0}};
  for (const auto& [s, outside] : blocks) {
    v = std::max(v, -min_eigenvalue(*s));
    v = std::max(v, s->row(outside).cwiseAbs().maxCoeff());
    v = std::max(v, s->col(outside).cwiseAbs().maxCoeff());
  }
  return v;
}

const std::array<std::array<int, 3>, 8>& linear_criteria_triples() {
  static const std::array<std::array<int, 3>, 8> t = {{{1, 4, 6},
                                                       {1, 4, 7},
                                                       {1, 5, 6},
                                                       {1, 5, 7},
                                                       {2, 4, 6},
                                                       {2, 4, 7},
                                                       {2, 5, 6},
                                                       {2, 5, 7}}};
  return t;
}

std::array<double, 8> linear_criteria(const DensityMatrix& rho) {
  const auto b = bloch_vector(rho);
  std::array<double, 8> out{};
  const auto& t = linear_criteria_triples();
  for (std::size_t k = 0; k < t.size(); ++k) {
    out[k] = std::abs(b[t[k][0] - 1] + b[t[k][1] - 1] + b[t[k][2] - 1]);
  }
  return out;
}

double nonlinear_criterion(const DensityMatrix& rho) {
  const auto b = bloch_vector(rho);
  return std::hypot(b[0], b[1]) + std::hypot(b[3], b[4]) + std::hypot(b[5], b[6]);
}

double fidelity_witness(const DensityMatrix& rho) {
  const Complex one{1.0, 0.0};
  return fidelity(rho, QuditState::normalized({one, one, one}));
}

std::optional<SubspaceDecomposition> mixture_feasibility(const CMatrix& rho, double mu) {
  if (rho.rows() != 3 || rho.cols() != 3) throw DimensionError("mixture_feasibility: dim != 3");
  const CMatrix t = mu * CMatrix::Identity(3, 3) / 3.0 + (1.0 - mu) * hermitian_part(rho);
  const double d0 = t(0, 0).real();
  const double d1 = t(1, 1).real();
  const double d2 = t(2, 2).real();
  if (std::min({d0, d1, d2}) < -kSlack) return std::nullopt;
  const double a = std::abs(t(0, 1));
  const double b = std::abs(t(0, 2));
  const double c = std::abs(t(1, 2));

  // p0 must leave room for p1 = a^2/p0 <= D1 and q2 = b^2/(D0 - p0) <= D2.
  const double lo = std::max(0.0, a == 0.0 ? 0.0 : (d1 > 0.0 ? a * a / d1 : kInf));
  const double hi = std::min(d0, d0 - (b == 0.0 ? 0.0 : (d2 > 0.0 ? b * b / d2 : kInf)));
  if (!(lo <= hi + kSlack)) return std::nullopt;

  auto product = [&](double p0) {
    const double f1 = d1 - partner(a, p0);
    const double f2 = d2 - partner(b, d0 - p0);
    if (!(f1 >= -kSlack) || !(f2 >= -kSlack)) return -kInf;
    return std::max(f1, 0.0) * std::max(f2, 0.0);
  };

  double best_p = std::clamp(0.5 * (lo + hi), std::min(lo, hi), std::max(lo, hi));
  if (hi > lo) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x0 = lo;
    double x3 = hi;
    double x1 = x3 - g * (x3 - x0);
    double x2 = x0 + g * (x3 - x0);
    double f1 = product(x1);
    double f2 = product(x2);
    for (int it = 0; it < 200 && x3 - x0 > 1e-16 * std::max(1.0, d0); ++it) {
      if (f1 < f2) {
        x0 = x1;
        x1 = x2;
        f1 = f2;
        x2 = x0 + g * (x3 - x0);
        f2 = product(x2);
      } else {
        x3 = x2;
        x2 = x1;
        f2 = f1;
        x1 = x3 - g * (x3 - x0);
        f1 = product(x1);
      }
    }
    best_p = f1 >= f2 ? x1 : x2;
    for (double cand : {lo, hi}) {
      if (product(cand) > product(best_p)) best_p = cand;
    }
  }
  if (!(product(best_p) >= c * c - kSlack)) return std::nullopt;

  const double p0 = best_p;
  const double p1 = partner(a, p0);
  const double q0 = d0 - p0;
  const double q2 = partner(b, q0);
  const double r1 = std::max(d1 - p1, 0.0);
  const double r2 = std::max(d2 - q2, 0.0);
  SubspaceDecomposition dec;
  dec.sigma_01 = block(0, 1, p0, p1, t(0, 1));
  dec.sigma_02 = block(0, 2, q0, q2, t(0, 2));
  dec.sigma_12 = block(1, 2, r1, r2, t(1, 2));
  return dec;
}

std::optional<SubspaceDecomposition> qubit_mixture_feasibility(const DensityMatrix& rho) {
  return mixture_feasibility(rho.matrix(), 0.0);
}

Robustness robustness_mu(const DensityMatrix& rho, const CertificationOptions& opt) {
  if (rho.dim() != 3) throw DimensionError("robustness_mu: dim != 3");
  double lo = -1.0;
  double hi = 1.0;
  if (auto dec = mixture_feasibility(rho.matrix(), lo)) return {lo, *dec};
  auto best = mixture_feasibility(rho.matrix(), hi);
  if (!best) throw SolverError("robustness_mu: maximally mixed end of the bracket is infeasible");
  while (hi - lo > opt.bisection_width) {
    const double mid = 0.5 * (lo + hi);
    if (auto dec = mixture_feasibility(rho.matrix(), mid)) {
      hi = mid;
      best = std::move(dec);
    } else {
      lo = mid;
    }
  }
  return {hi, *best};
}

CertificationReport certify(const DensityMatrix& rho, const CertificationOptions& opt) {
  CertificationReport r;
  r.linear_values = linear_criteria(rho);
  r.nonlinear_lhs = nonlinear_criterion(rho);
  r.fidelity_witness = fidelity_witness(rho);
  r.decomposition = qubit_mixture_feasibility(rho);
  r.mu = robustness_mu(rho, opt).mu;
  // Decide on feasibility at the threshold itself rather than on the
  // bisection end point, which may overshoot by the bracket width.
  r.verdict = (r.decomposition || mixture_feasibility(rho.matrix(), opt.verdict_threshold))
                  ? Verdict::qubit_simulable
                  : Verdict::genuine_qutrit;
  return r;
}

std::vector<double> PhaseGrid::phases(int n) const {
  if (n < 1) throw InvariantError("PhaseGrid: grid sizes must be at least 1");
  std::vector<double> p(static_cast<std::size_t>(n));
  const double step = closed_interval ? (n > 1 ? kPi / (n - 1) : 0.0) : kPi / n;
  for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = k * step;
  return p;
}

std::vector<QuditState> PhaseGrid::states() const {
  std::vector<QuditState> out;
  const Complex one{1.0, 0.0};
  for (double p1 : phases(n1)) {
    for (double p2 : phases(n2)) {
      out.push_back(QuditState::normalized({one, std::polar(1.0, p1), std::polar(1.0, p2)}));
    }
  }
  return out;
}

BatchSummary batch_certification(const ProcessMatrix& chi, const PhaseGrid& grid,
                                 const CertificationOptions& opt) {
  const auto states = grid.states();
  BatchSummary s;
  s.mus.reserve(states.size());
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    const int i = static_cast<int>(idx) / grid.n2;
    const int j = static_cast<int>(idx) % grid.n2;
    try {
      const DensityMatrix out = apply_process(chi, DensityMatrix::pure(states[idx]));
      const double mu = robustness_mu(out, opt).mu;
      const bool genuine = !mixture_feasibility(out.matrix(), opt.verdict_threshold);
      s.mus.push_back(mu);
      if (genuine) {
        ++s.n_genuine;
        sum += mu;
        sum2 += mu * mu;
      } else {
        ++s.n_simulable;
      }
    } catch (const Error& e) {
      throw SolverError("batch_certification: grid point (" + std::to_string(i) + "," +
                        std::to_string(j) + "): " + e.what());
    }
  }
  if (s.n_genuine > 0) {
    s.mean_mu_genuine = sum / s.n_genuine;
    s.std_mu_genuine = std::sqrt(std::max(0.0, sum2 / s.n_genuine - s.mean_mu_genuine * s.mean_mu_genuine));
  }
  return s;
}

}  // namespace qtele
