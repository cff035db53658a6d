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

#pragma once

// Reference computations used by the tests. They deliberately avoid the
// library's own numerics: raw Eigen solvers, quadrature, finite differences
// and brute-force sums.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline M dagger(const M& a) { return a.adjoint(); }

// Power of a positive-definite matrix via Eigen's self-adjoint solver.
inline M herm_pow(const M& a, double p) {
  Eigen::SelfAdjointEigenSolver<M> es(0.5 * (a + a.adjoint()));
  Eigen::VectorXd d = es.eigenvalues().array().pow(p);
  return es.eigenvectors() * d.cast<C>().asDiagonal() * es.eigenvectors().adjoint();
}

inline M herm_log(const M& a) {
  Eigen::SelfAdjointEigenSolver<M> es(0.5 * (a + a.adjoint()));
  Eigen::VectorXd d = es.eigenvalues().array().log();
  return es.eigenvectors() * d.cast<C>().asDiagonal() * es.eigenvectors().adjoint();
}

// Composite Simpson rule on [0,1] with `intervals` (even) panels.
inline C simpson(const std::function<C(double)>& f, int intervals = 2000) {
  double h = 1.0 / intervals;
  C sum = f(0.0) + f(1.0);
  for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return sum * h / 3.0;
}

// int_0^1 Tr(x^* sigma^s y sigma^{1-s}) ds by quadrature.
inline C bkm_quadrature(const M& sigma, const M& x, const M& y, int intervals = 2000) {
  Eigen::SelfAdjointEigenSolver<M> es(sigma);
  const M& q = es.eigenvectors();
  Eigen::VectorXd l = es.eigenvalues();
  return simpson(
      [&](double s) {
        Eigen::VectorXd a = l.array().pow(s), b = l.array().pow(1.0 - s);
        M ss = q * a.cast<C>().asDiagonal() * q.adjoint();
        M s1 = q * b.cast<C>().asDiagonal() * q.adjoint();
        return (x.adjoint() * ss * y * s1).trace();
      },
      intervals);
}

// The same form written out in the eigenbasis of sigma with the logarithmic
// mean as kernel.
inline C bkm_eigen(const M& sigma, const M& x, const M& y) {
  Eigen::SelfAdjointEigenSolver<M> es(sigma);
  const M& q = es.eigenvectors();
  M a = q.adjoint() * x * q, b = q.adjoint() * y * q;
  C s = 0;
  for (Eigen::Index u = 0; u < sigma.rows(); ++u)
    for (Eigen::Index v = 0; v < sigma.rows(); ++v) {
      double lu = es.eigenvalues()(u), lv = es.eigenvalues()(v);
      double k = std::abs(lu - lv) < 1e-14 ? lu : (lu - lv) / (std::log(lu) - std::log(lv));
      s += k * std::conj(a(u, v)) * b(u, v);
    }
  return s;
}

// Column-major vectorization, independent of the library.
inline V vec(const M& x) { return Eigen::Map<const V>(x.data(), x.size()); }
inline M unvec(const V& v, Eigen::Index n) { return Eigen::Map<const M>(v.data(), n, n); }

// Heisenberg action L(x) = i[H,x] + sum c (V^* x V - 1/2{V^*V, x}).
struct JumpList {
  M h;
  std::vector<M> ops;
  std::vector<double> weights;
};

inline M lindblad_apply(const JumpList& g, const M& x) {
  M out = C(0, 1) * (g.h * x - x * g.h);
  for (std::size_t j = 0; j < g.ops.size(); ++j) {
    const M& v = g.ops[j];
    M vv = v.adjoint() * v;
    out += g.weights[j] * (v.adjoint() * x * v - 0.5 * (vv * x + x * vv));
  }
  return out;
}

// Superoperator matrix built column by column from matrix units.
inline M superop_by_units(const std::function<M(const M&)>& f, Eigen::Index n) {
  M s(n * n, n * n);
  for (Eigen::Index b = 0; b < n; ++b)
    for (Eigen::Index a = 0; a < n; ++a) {
      M e = M::Zero(n, n);
      e(a, b) = 1.0;
      s.col(b * n + a) = vec(f(e));
    }
  return s;
}

// Relative entropy Tr rho (log rho - log sigma) for strict states.
inline double relative_entropy(const M& rho, const M& sigma) {
  return (rho * (herm_log(rho) - herm_log(sigma))).trace().real();
}

// Predual evolution rho -> T_{t*}(rho) from a Heisenberg superoperator.
inline M evolve_predual(const M& superop, const M& rho, double t) {
  M e = (t * superop.adjoint()).exp();
  return unvec(e * vec(rho), rho.rows());
}

// -d/dt D(T_{t*} rho || ref) at 0: central differences at h, h/2, h/4
// combined by two rounds of Richardson extrapolation. The step is halved
// until the backward point keeps at least half of rho's smallest eigenvalue.
inline double entropy_production_fd(const M& superop, const M& rho, const M& ref, double h = 1e-3) {
  auto min_eig = [](const M& a) {
    return Eigen::SelfAdjointEigenSolver<M>(0.5 * (a + a.adjoint())).eigenvalues()(0);
  };
  double floor = 0.5 * min_eig(rho);
  while (h > 1e-8 && min_eig(evolve_predual(superop, rho, -h)) < floor) h /= 2;
  auto d = [&](double t) { return relative_entropy(evolve_predual(superop, rho, t), ref); };
  auto central = [&](double s) { return (d(s) - d(-s)) / (2 * s); };
  double a0 = central(h), a1 = central(h / 2), a2 = central(h / 4);
  double b0 = (4 * a1 - a0) / 3, b1 = (4 * a2 - a1) / 3;
  return -((16 * b1 - b0) / 15);
}

// Smallest r with r e - v and r e + v positive semidefinite on range(e),
// decided by Cholesky (LLT) feasibility and plain bisection.
inline double order_norm_bisection(const M& v, const M& e, double rel_tol = 1e-10) {
  Eigen::JacobiSVD<M> svd(e, Eigen::ComputeFullU);
  double smax = svd.singularValues()(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rel_tol * smax) ++rank;
  M p = svd.matrixU().leftCols(rank);
  M er = p.adjoint() * e * p, vr = p.adjoint() * v * p;
  auto feasible = [&](double r) {
    M a = r * er - vr, b = r * er + vr;
    Eigen::LLT<M> la(0.5 * (a + a.adjoint())), lb(0.5 * (b + b.adjoint()));
    return la.info() == Eigen::Success && lb.info() == Eigen::Success;
  };
  double hi = 1.0;
  while (!feasible(hi)) hi *= 2;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Smallest C with C b - a PSD, kernels assumed compatible; LLT bisection.
inline double loewner_constant(const M& a, const M& b, double rel_tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<M> es(0.5 * (b + b.adjoint()));
  double bmax = es.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > rel_tol * bmax) keep.push_back(i);
  M p(b.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) p.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  M ar = p.adjoint() * a * p, br = p.adjoint() * b * p;
  auto feasible = [&](double c) {
    M d = c * br - ar;
    Eigen::LLT<M> l(0.5 * (d + d.adjoint()));
    return l.info() == Eigen::Success;
  };
  double hi = 1.0;
  while (!feasible(hi)) hi *= 2;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Brute-force g2: sum_ij <V_j^* V_i^* V_i V_j> / (sum_j <V_j^* V_j>)^2 with
// weights folded into the operators.
inline double g2_double_sum(const std::vector<M>& ops, const M& rho) {
  C num = 0, den = 0;
  for (const M& vi : ops)
    for (const M& vj : ops) num += (rho * vj.adjoint() * vi.adjoint() * vi * vj).trace();
  for (const M& vj : ops) den += (rho * vj.adjoint() * vj).trace();
  return num.real() / (den.real() * den.real());
}

// Dimension of the joint commutant {x : [a, x] = 0 for all a}, counted from
// the singular values of the stacked commutator maps.
inline Eigen::Index commutant_dim(const std::vector<M>& ops, Eigen::Index n) {
  M stack(static_cast<Eigen::Index>(ops.size()) * n * n, n * n);
  M id = M::Identity(n, n);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    M block = Eigen::kroneckerProduct(id, ops[k]).eval() - Eigen::kroneckerProduct(ops[k].transpose(), id).eval();
    stack.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = block;
  }
  Eigen::JacobiSVD<M> svd(stack);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index kernel = n * n - sv.size();
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-9 * (1.0 + sv(0))) ++kernel;
  return kernel;
}

// Operator norm via Jacobi SVD.
inline double opnorm(const M& a) {
  Eigen::JacobiSVD<M> svd(a);
  return svd.singularValues()(0);
}

}  // namespace oracle
