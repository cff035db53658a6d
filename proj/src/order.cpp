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

#include "lindblad/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "lindblad/conditional_expectation.hpp"

namespace lindblad {

Eigen::SparseMatrix<Complex> gradient_map(Index n) {
  Index n2 = n * n, n3 = n2 * n;
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(3 * n2 * n2 * n));
  auto at = [n3](Index row, Index col) { return col * n3 + row; };
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        for (Index d = 0; d < n; ++d) {
          // unit map e_cd -> e_ab
          Index column = (d * n + c) * n2 + (b * n + a);
          for (Index r = 0; r < n; ++r)
            entries.emplace_back(at((r * n + c) * n + a, (r * n + d) * n + b), column, 1.0);
          for (Index s = 0; s < n; ++s)
            entries.emplace_back(at((a * n + s) * n + s, (c * n + d) * n + b), column, -1.0);
          for (Index v = 0; v < n; ++v)
            entries.emplace_back(at((d * n + c) * n + a, (b * n + v) * n + v), column, -1.0);
        }
  Eigen::SparseMatrix<Complex> phi(n3 * n3, n2 * n2);
  phi.setFromTriplets(entries.begin(), entries.end());
  return phi;
}

Matrix recover_map(const Matrix& v, Index n) {
  Index n3 = n * n * n;
  if (v.rows() != n3 || v.cols() != n3)
    throw Error(ErrorKind::DimensionMismatch, "gradient matrix must be n^3 x n^3");
  Eigen::SparseMatrix<Complex> phi = gradient_map(n);
  Vector target = Eigen::Map<const Vector>(v.data(), v.size());
  Matrix normal = Matrix(phi.adjoint() * phi);
  Vector rhs = phi.adjoint() * target;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(normal);
  cod.setThreshold(1e-10);
  Vector sol = cod.solve(rhs);
  Matrix s = Eigen::Map<const Matrix>(sol.data(), n * n, n * n);

  // M#(x) = M(x*)* has the same gradient matrix when v is Hermitian
  Matrix sharp(n * n, n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      sharp.col(b * n + a) = vec(apply_superoperator(s, matrix_unit(n, b, a)).adjoint());
  s = 0.5 * (s + sharp);

  Vector fit = phi * Eigen::Map<const Vector>(s.data(), s.size());
  double scale = 1.0 + max_abs(v);
  double residual = (fit - target).cwiseAbs().maxCoeff() / scale;
  double unital = max_abs(apply_superoperator(s, Matrix::Identity(n, n))) / scale;
  if (residual > 1e-8 || unital > 1e-8)
    throw Error(ErrorKind::NotGammaShaped, "matrix is not the gradient matrix of a *-preserving map with M(I)=0");
  return s;
}

bool in_cone(const Matrix& v, double tol) {
  require_hermitian(v, "cone element");
  Index n = static_cast<Index>(std::llround(std::cbrt(static_cast<double>(v.rows()))));
  if (n * n * n != v.rows()) throw Error(ErrorKind::DimensionMismatch, "size is not a cube");
  recover_map(v, n);
  return is_psd(v, tol);
}

namespace {

struct RangeProjection {
  Matrix vr;      // v restricted to range(e)
  RealVector er;  // eigenvalues of e on its range
  Matrix q;
};

RangeProjection project_to_range(const Matrix& v, const Matrix& e) {
  require_hermitian(v, "order-norm argument");
  require_hermitian(e, "order unit");
  require_same_dim(v, e, "order_norm");
  HermitianEig ee = hermitian_eig(e);
  double top = ee.values.cwiseAbs().maxCoeff();
  std::vector<Index> range, kernel;
  for (Index i = 0; i < ee.values.size(); ++i)
    (top > 0.0 && ee.values(i) > 1e-10 * top ? range : kernel).push_back(i);
  if (!kernel.empty()) {
    Matrix k(v.rows(), static_cast<Index>(kernel.size()));
    for (std::size_t i = 0; i < kernel.size(); ++i) k.col(static_cast<Index>(i)) = ee.vectors.col(kernel[i]);
    if (max_abs(v * k) > 1e-8 * max_abs(v))
      throw Error(ErrorKind::OutsideSpan, "kernel of the order unit is not inside the kernel of v");
  }
  RangeProjection p;
  p.q.resize(v.rows(), static_cast<Index>(range.size()));
  p.er.resize(static_cast<Index>(range.size()));
  for (std::size_t i = 0; i < range.size(); ++i) {
    p.q.col(static_cast<Index>(i)) = ee.vectors.col(range[i]);
    p.er(static_cast<Index>(i)) = ee.values(range[i]);
  }
  p.vr = p.q.adjoint() * v * p.q;
  p.vr = 0.5 * (p.vr + p.vr.adjoint()).eval();
  return p;
}

double spectral_order_norm(const RangeProjection& p) {
  if (p.er.size() == 0) return 0.0;
  RealVector inv = p.er.array().rsqrt();
  Matrix t = inv.cast<Complex>().asDiagonal() * p.vr * inv.cast<Complex>().asDiagonal();
  return hermitian_eig(0.5 * (t + t.adjoint())).values.cwiseAbs().maxCoeff();
}

double bisection_order_norm(const RangeProjection& p) {
  if (p.er.size() == 0) return 0.0;
  Matrix er = p.er.cast<Complex>().asDiagonal();
  double vmax = hermitian_eig(p.vr).values.cwiseAbs().maxCoeff();
  if (vmax == 0.0) return 0.0;
  double emax = p.er.maxCoeff();
  auto feasible = [&](double r) {
    double slack = 1e-13 * (vmax + r * emax);
    return min_eigenvalue(r * er - p.vr) >= -slack && min_eigenvalue(r * er + p.vr) >= -slack;
  };
  double lo = 0.0, hi = 2.0 * vmax / p.er.minCoeff();
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double order_norm(const Matrix& v, const Matrix& e) {
  RangeProjection p = project_to_range(v, e);
  double r = spectral_order_norm(p);
  double check = bisection_order_norm(p);
  if (std::abs(r - check) > 1e-8 * std::max(1.0, r))
    throw Error(ErrorKind::MethodsDisagree, "order norm: spectral formula and bisection disagree");
  return r;
}

double order_norm_bisection(const Matrix& v, const Matrix& e) {
  return bisection_order_norm(project_to_range(v, e));
}

NormEquivalence measure_norm_equivalence(std::span<const Matrix> samples, const Matrix& e) {
  NormEquivalence out{std::numeric_limits<double>::infinity(), 0.0};
  for (const Matrix& v : samples) {
    double two = spectral_norm(v);
    if (two == 0.0) continue;
    double ratio = order_norm(v, e) / two;
    out.lower = std::min(out.lower, ratio);
    out.upper = std::max(out.upper, ratio);
  }
  if (out.upper == 0.0) out.lower = 0.0;
  return out;
}

DetailedBalanceData perturb(const DetailedBalanceData& db, const PerturbationModel& model,
                            double magnitude, std::mt19937_64& rng) {
  if (!(model.weight_jitter >= 0.0 && model.weight_jitter < 1.0) || !(model.rotation >= 0.0))
    throw Error(ErrorKind::InputError, "weight jitter must lie in [0, 1) and rotation be non-negative");
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::normal_distribution<double> gauss;
  double eta_w = magnitude * model.weight_jitter;
  double eta_r = magnitude * model.rotation;
  DetailedBalanceData out = db;
  for (std::size_t c = 0; c < db.omegas.size(); ++c) {
    const std::vector<std::size_t>& group = db.partition[c];
    if (group.empty() || db.omegas[c] < -1e-8) continue;
    bool self_adjoint = std::abs(db.omegas[c]) <= 1e-8;
    Index m = static_cast<Index>(group.size());
    std::vector<Matrix> jitter;
    for (std::size_t j : group) jitter.push_back(db.jumps[j].op * std::sqrt(1.0 + eta_w * unif(rng)));
    Matrix rot;
    if (self_adjoint) {
      RealMatrix a(m, m);
      for (Index i = 0; i < m; ++i)
        for (Index k = 0; k < m; ++k) a(i, k) = gauss(rng);
      a = a - a.transpose().eval();
      double norm = a.norm();
      if (norm > 0.0) a /= norm;
      RealMatrix r = (eta_r * a).exp();
      rot = r.cast<Complex>();
    } else {
      Matrix a(m, m);
      for (Index i = 0; i < m; ++i)
        for (Index k = 0; k < m; ++k) a(i, k) = Complex(gauss(rng), gauss(rng));
      a = a - a.adjoint().eval();
      double norm = a.norm();
      if (norm > 0.0) a /= norm;
      rot = (eta_r * a).exp();
    }
    for (Index i = 0; i < m; ++i) {
      Matrix w = Matrix::Zero(db.dim(), db.dim());
      for (Index k = 0; k < m; ++k) w += rot(i, k) * jitter[static_cast<std::size_t>(k)];
      std::size_t j = group[static_cast<std::size_t>(i)];
      out.jumps[j].op = self_adjoint ? Matrix(0.5 * (w + w.adjoint())) : w;
      if (!self_adjoint) out.jumps[db.jumps[j].partner].op = w.adjoint();
    }
  }
  return out;
}

DetailedBalanceData scan_perturbation(const DetailedBalanceData& db, const PerturbationModel& model,
                                      std::size_t trial, std::size_t trials, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), 0x5ca9u};
  std::mt19937_64 rng(seq);
  double magnitude = static_cast<double>(trial + 1) / static_cast<double>(std::max<std::size_t>(trials, 1));
  return perturb(db, model, magnitude, rng);
}

std::vector<ScanRow> stability_scan(const LindbladGenerator& l, const DensityMatrix& sigma,
                                    const SubalgebraSpec& n, std::span<const double> eps,
                                    const PerturbationModel& model, std::size_t trials,
                                    std::uint64_t seed, unsigned jobs) {
  if (n.dim() != l.dim) throw Error(ErrorKind::DimensionMismatch, "subalgebra spec dimension mismatch");
  DetailedBalanceData db = db_spectral_data(l, sigma);
  Matrix s = superoperator_matrix(l);
  Matrix m = gradient_matrix(s).matrix;
  Matrix e = upper_bound_unit(n).matrix;
  std::vector<ScanRow> rows(trials * eps.size());

  auto work = [&](std::size_t t) {
    DetailedBalanceData p = scan_perturbation(db, model, t, trials, seed);
    Matrix sp = superoperator_matrix(p.as_generator());
    double delta = operator_norm(s - sp);
    Matrix mp = gradient_matrix(sp).matrix;
    for (std::size_t k = 0; k < eps.size(); ++k) {
      SandwichResult r = sandwich_check(m, mp, e, eps[k]);
      rows[t * eps.size() + k] = {t, delta, eps[k], r.lower, r.upper};
    }
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

std::vector<FrontierPoint> frontier(std::span<const ScanRow> rows) {
  std::vector<double> eps;
  for (const ScanRow& r : rows)
    if (std::find(eps.begin(), eps.end(), r.epsilon) == eps.end()) eps.push_back(r.epsilon);
  std::sort(eps.begin(), eps.end());
  std::vector<FrontierPoint> out;
  for (double e : eps) {
    FrontierPoint p{e, std::numeric_limits<double>::infinity(), 0.0};
    for (const ScanRow& r : rows)
      if (r.epsilon == e && !(r.lower_ok && r.upper_ok)) p.first_failure = std::min(p.first_failure, r.delta);
    for (const ScanRow& r : rows)
      if (r.epsilon == e && r.lower_ok && r.upper_ok && r.delta < p.first_failure)
        p.last_pass = std::max(p.last_pass, r.delta);
    out.push_back(p);
  }
  return out;
}

}  // namespace lindblad
