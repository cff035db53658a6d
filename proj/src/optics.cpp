// Copyright 2026 The lindblad-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindblad/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

namespace lindblad {

Matrix JumpMap::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (const Jump& j : kraus) out += j.weight * j.op.adjoint() * x * j.op;
  return out;
}

Matrix JumpMap::apply_predual(const Matrix& rho) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (const Jump& j : kraus) out += j.weight * j.op * rho * j.op.adjoint();
  return out;
}

Matrix JumpMap::superop() const {
  Matrix s = Matrix::Zero(dim * dim, dim * dim);
  for (const Jump& j : kraus) s += j.weight * sandwich(j.op.adjoint(), j.op);
  return s;
}

std::vector<Matrix> JumpMap::folded() const {
  std::vector<Matrix> out;
  for (const Jump& j : kraus) out.push_back(std::sqrt(j.weight) * j.op);
  return out;
}

JumpMap jump_map(const LindbladGenerator& l) {
  StandardForm sf = to_standard_form(l);
  JumpMap psi;
  psi.dim = l.dim;
  for (std::size_t i = 0; i < sf.units.size(); ++i) psi.kraus.push_back({sf.units[i], sf.weights[i]});
  return psi;
}

ChoiMatrix choi_matrix(const JumpMap& psi) {
  Index n = psi.dim;
  std::vector<Matrix> v = psi.folded();
  ChoiMatrix out;
  out.factor = Matrix::Zero(static_cast<Index>(v.size()), n * n);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (Index r = 0; r < n; ++r)
      for (Index b = 0; b < n; ++b) out.factor(static_cast<Index>(i), r * n + b) = v[i](r, b);
  out.matrix = out.factor.adjoint() * out.factor;
  return out;
}

ComparisonResult compare_jump_maps(const LindbladGenerator& l, const LindbladGenerator& lp,
                                   CompareMethod mode) {
  if (l.dim != lp.dim) throw Error(ErrorKind::DimensionMismatch, "generators act on different spaces");
  ChoiMatrix c = choi_matrix(jump_map(l)), cp = choi_matrix(jump_map(lp));
  ComparisonResult span;
  span.method = CompareMethod::Span;
  if (mode != CompareMethod::PsdBisection) {
    Index m = c.factor.rows(), mp = cp.factor.rows();
    if (m == 0) {
      span.holds = true;
      span.optimal_c = 0.0;
      span.coeff_matrix = Matrix::Zero(0, mp);
    } else if (mp == 0) {
      span.residual = 1.0;
    } else {
      // W = A W'
      Eigen::CompleteOrthogonalDecomposition<Matrix> cod(cp.factor.transpose());
      cod.setThreshold(1e-10);
      Matrix at = cod.solve(c.factor.transpose());
      Matrix a = at.transpose();
      double wn = c.factor.norm();
      span.residual = wn > 0.0 ? (a * cp.factor - c.factor).norm() / wn : 0.0;
      span.holds = span.residual <= default_tolerances().span;
      span.coeff_matrix = a;
      if (span.holds) {
        Matrix ata = a.adjoint() * a;
        span.optimal_c = hermitian_eig(0.5 * (ata + ata.adjoint())).values.maxCoeff();
      }
    }
    if (mode == CompareMethod::Span) return span;
  }
  std::optional<double> bis = psd_order_constant(c.matrix, cp.matrix);
  if (mode == CompareMethod::PsdBisection) {
    ComparisonResult out;
    out.method = CompareMethod::PsdBisection;
    out.holds = bis.has_value();
    out.optimal_c = bis;
    return out;
  }
  if (span.holds != bis.has_value())
    throw Error(ErrorKind::MethodsDisagree, "Choi span route and bisection disagree on feasibility");
  if (span.holds && std::abs(*span.optimal_c - *bis) >
                        1e-6 * std::max(std::abs(*span.optimal_c), std::abs(*bis)) + 1e-12)
    throw Error(ErrorKind::MethodsDisagree, "Choi span route and bisection constants disagree");
  span.method = CompareMethod::Both;
  return span;
}

double emission_rate(const LindbladGenerator& l, const DensityMatrix& rho) {
  if (rho.dim() != l.dim) throw Error(ErrorKind::DimensionMismatch, "state does not match generator");
  JumpMap psi = jump_map(l);
  return (psi.apply(Matrix::Identity(l.dim, l.dim)) * rho.matrix()).trace().real();
}

double g2(const JumpMap& psi, const DensityMatrix& rho) {
  if (rho.dim() != psi.dim) throw Error(ErrorKind::DimensionMismatch, "state does not match jump map");
  const Matrix& r = rho.matrix();
  Matrix once = psi.apply_predual(r);
  double den = once.trace().real();
  if (den <= kG2DenominatorTol) throw Error(ErrorKind::ZeroEmission, "no photons are emitted from this state");
  double num = psi.apply_predual(once).trace().real();
  Matrix id = Matrix::Identity(psi.dim, psi.dim);
  double dual = (r * psi.apply(psi.apply(id))).trace().real();
  if (std::abs(num - dual) > 1e-10 * (1.0 + std::abs(num)))
    throw Error(ErrorKind::VerificationFailed, "predual and dual second-order counts disagree");
  return num / (den * den);
}

double g2(const LindbladGenerator& l, const DensityMatrix& rho) { return g2(jump_map(l), rho); }

namespace {

LindbladGenerator g2_perturbation(const StandardForm& sf, const PerturbationModel& model,
                                  std::size_t trial, std::size_t trials, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), 0x92u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::normal_distribution<double> gauss;
  double magnitude = static_cast<double>(trial + 1) / static_cast<double>(std::max<std::size_t>(trials, 1));
  double eta_w = magnitude * model.weight_jitter, eta_r = magnitude * model.rotation;
  Index m = static_cast<Index>(sf.units.size());
  LindbladGenerator out = LindbladGenerator::zero(sf.dim());
  out.hamiltonian = sf.hamiltonian;
  std::vector<double> w;
  for (double c : sf.weights) w.push_back(c * (1.0 + eta_w * unif(rng)));
  Matrix a(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index k = 0; k < m; ++k) a(i, k) = Complex(gauss(rng), gauss(rng));
  a = a - a.adjoint().eval();
  if (a.norm() > 0.0) a /= a.norm();
  Matrix rot = (eta_r * a).exp();
  for (Index i = 0; i < m; ++i) {
    Matrix u = Matrix::Zero(sf.dim(), sf.dim());
    for (Index k = 0; k < m; ++k) u += rot(i, k) * sf.units[static_cast<std::size_t>(k)];
    out.jumps.push_back({u, w[static_cast<std::size_t>(i)]});
  }
  return out;
}

}  // namespace

std::vector<G2ScanRow> g2_stability_scan(const LindbladGenerator& l, const DensityMatrix& rho,
                                         std::span<const double> eps, const PerturbationModel& model,
                                         std::size_t trials, std::uint64_t seed, unsigned jobs) {
  if (!(model.weight_jitter >= 0.0 && model.weight_jitter < 1.0) || !(model.rotation >= 0.0))
    throw Error(ErrorKind::InputError, "weight jitter must lie in [0, 1) and rotation be non-negative");
  double base = g2(l, rho);
  if (!(base > 0.0)) throw Error(ErrorKind::DegenerateState, "g2 of the reference generator must be positive");
  StandardForm sf = to_standard_form(l);
  Matrix s = superoperator_matrix(l);
  std::vector<G2ScanRow> rows(trials * eps.size());
  auto work = [&](std::size_t t) {
    LindbladGenerator lp = g2_perturbation(sf, model, t, trials, seed);
    double delta = operator_norm(s - superoperator_matrix(lp));
    double value = g2(lp, rho);
    for (std::size_t k = 0; k < eps.size(); ++k)
      rows[t * eps.size() + k] = {t, delta, eps[k], value, value >= (1.0 - eps[k]) * base,
                                  value <= (1.0 + eps[k]) * base};
  };
  unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) work(t);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < trials; t += workers) work(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (std::thread& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }
  return rows;
}

std::vector<G2FrontierPoint> g2_frontier(std::span<const G2ScanRow> rows) {
  std::vector<double> eps;
  for (const G2ScanRow& r : rows)
    if (std::find(eps.begin(), eps.end(), r.epsilon) == eps.end()) eps.push_back(r.epsilon);
  std::sort(eps.begin(), eps.end());
  std::vector<G2FrontierPoint> out;
  for (double e : eps) {
    G2FrontierPoint p{e, std::numeric_limits<double>::infinity(), 0.0};
    for (const G2ScanRow& r : rows)
      if (r.epsilon == e && !(r.lower_ok && r.upper_ok)) p.first_failure = std::min(p.first_failure, r.delta);
    for (const G2ScanRow& r : rows)
      if (r.epsilon == e && r.lower_ok && r.upper_ok && r.delta < p.first_failure)
        p.last_pass = std::max(p.last_pass, r.delta);
    out.push_back(p);
  }
  return out;
}

}  // namespace lindblad
