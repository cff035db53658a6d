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

#include "lindblad/gradient.hpp"

#include <algorithm>
#include <cmath>

#include "lindblad/conditional_expectation.hpp"

namespace lindblad {

namespace {

Index superop_dim(const Matrix& superop) {
  require_square(superop, "superoperator");
  Index n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(superop.rows()))));
  if (n * n != superop.rows())
    throw Error(ErrorKind::DimensionMismatch, "superoperator size is not a square number");
  return n;
}

}  // namespace

Matrix gradient_form(const Matrix& superop, const Matrix& x, const Matrix& y) {
  Index n = superop_dim(superop);
  if (x.rows() != n || x.cols() != n || y.rows() != n || y.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "gradient_form arguments do not match the map");
  Matrix xs = x.adjoint();
  return apply_superoperator(superop, xs * y) - xs * apply_superoperator(superop, y) -
         apply_superoperator(superop, xs) * y;
}

GradientMatrix gradient_matrix(const Matrix& superop) {
  Index n = superop_dim(superop);
  std::vector<Matrix> images(static_cast<std::size_t>(n * n));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      images[static_cast<std::size_t>(a * n + b)] = apply_superoperator(superop, matrix_unit(n, a, b));
  auto img = [&](Index a, Index b) -> const Matrix& { return images[static_cast<std::size_t>(a * n + b)]; };

  GradientMatrix out{n, Matrix::Zero(n * n * n, n * n * n)};
  Matrix blk(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index s = 0; s < n; ++s)
      for (Index t = 0; t < n; ++t)
        for (Index v = 0; v < n; ++v) {
          // Gamma(e_rs, e_tv) = d_rt L(e_sv) - e_sr L(e_tv) - L(e_sr) e_tv
          blk.setZero();
          if (r == t) blk += img(s, v);
          blk.row(s) -= img(t, v).row(r);
          blk.col(v) -= img(s, r).col(t);
          out.matrix.block((r * n + s) * n, (t * n + v) * n, n, n) = blk;
        }
  return out;
}

GradientMatrix gradient_matrix(const LindbladGenerator& gen) {
  return gradient_matrix(superoperator_matrix(gen));
}

DerivationMatrix derivation_matrix(std::span<const Matrix> folded, Index n) {
  Index m = static_cast<Index>(folded.size());
  DerivationMatrix out{n, m, Matrix::Zero(m * n, n * n * n)};
  for (Index i = 0; i < m; ++i) {
    const Matrix& v = folded[static_cast<std::size_t>(i)];
    if (v.rows() != n || v.cols() != n) throw Error(ErrorKind::DimensionMismatch, "jump has the wrong size");
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s)
        out.matrix.block(i * n, (r * n + s) * n, n, n) = commutator(v, matrix_unit(n, r, s));
  }
  return out;
}

DerivationMatrix derivation_matrix(const StandardForm& sf) {
  std::vector<Matrix> f = sf.folded();
  return derivation_matrix(f, sf.dim());
}

ComparisonResult span_comparison(std::span<const Matrix> x, std::span<const Matrix> xp) {
  ComparisonResult out;
  out.method = CompareMethod::Span;
  Index m = static_cast<Index>(x.size()), mp = static_cast<Index>(xp.size());
  if (m == 0) {
    out.holds = true;
    out.optimal_c = 0.0;
    out.coeff_matrix = Matrix::Zero(0, mp);
    return out;
  }
  Index n = x.front().rows();
  Matrix target(n * n, m);
  for (Index i = 0; i < m; ++i) target.col(i) = vec(x[static_cast<std::size_t>(i)]);
  if (mp == 0) {
    out.residual = 1.0;
    return out;
  }
  Matrix basis(n * n, mp);
  for (Index j = 0; j < mp; ++j) {
    const Matrix& v = xp[static_cast<std::size_t>(j)];
    if (v.rows() != n) throw Error(ErrorKind::DimensionMismatch, "jump lists differ in dimension");
    basis.col(j) = vec(v);
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(basis);
  cod.setThreshold(1e-10);
  Matrix y = cod.solve(target);  // mp x m
  double tn = target.norm();
  out.residual = tn > 0.0 ? (basis * y - target).norm() / tn : 0.0;
  out.holds = out.residual <= default_tolerances().span;
  Matrix a = y.transpose();
  out.coeff_matrix = a;
  if (out.holds) {
    Matrix ata = a.adjoint() * a;
    out.optimal_c = hermitian_eig(0.5 * (ata + ata.adjoint())).values.maxCoeff();
  }
  return out;
}

std::optional<double> psd_order_constant(const Matrix& a_in, const Matrix& b_in) {
  require_same_dim(a_in, b_in, "psd_order_constant");
  Matrix a = 0.5 * (a_in + a_in.adjoint());
  Matrix b = 0.5 * (b_in + b_in.adjoint());
  double a_scale = max_abs(a);
  HermitianEig eb = hermitian_eig(b);
  double top = eb.values.cwiseAbs().maxCoeff();
  if (top == 0.0) return a_scale == 0.0 ? std::optional<double>(0.0) : std::nullopt;
  std::vector<Index> range, kernel;
  for (Index i = 0; i < eb.values.size(); ++i)
    (eb.values(i) > 1e-10 * top ? range : kernel).push_back(i);
  if (!kernel.empty()) {
    Matrix k(a.rows(), static_cast<Index>(kernel.size()));
    for (std::size_t i = 0; i < kernel.size(); ++i) k.col(static_cast<Index>(i)) = eb.vectors.col(kernel[i]);
    if (max_abs(a * k) > 1e-8 * a_scale) return std::nullopt;
  }
  Matrix q(a.rows(), static_cast<Index>(range.size()));
  RealVector lam(static_cast<Index>(range.size()));
  for (std::size_t i = 0; i < range.size(); ++i) {
    q.col(static_cast<Index>(i)) = eb.vectors.col(range[i]);
    lam(static_cast<Index>(i)) = eb.values(range[i]);
  }
  Matrix ar = q.adjoint() * a * q;
  Matrix br = lam.cast<Complex>().asDiagonal();
  double amax = hermitian_eig(0.5 * (ar + ar.adjoint())).values.maxCoeff();
  if (amax <= 0.0) return 0.0;
  double bnorm = lam.maxCoeff();
  auto feasible = [&](double c) {
    Matrix d = c * br - ar;
    double slack = 1e-13 * (max_abs(ar) + c * bnorm);
    return min_eigenvalue(0.5 * (d + d.adjoint())) >= -slack;
  };
  double lo = 0.0, hi = 2.0 * amax / lam.minCoeff();
  if (!feasible(hi)) return std::nullopt;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

ComparisonResult compare(const LindbladGenerator& l, const LindbladGenerator& lp, CompareMethod mode) {
  if (l.dim != lp.dim) throw Error(ErrorKind::DimensionMismatch, "generators act on different spaces");
  StandardForm sf = to_standard_form(l), sfp = to_standard_form(lp);
  ComparisonResult span;
  std::optional<double> bis;
  if (mode != CompareMethod::PsdBisection) {
    std::vector<Matrix> x = sf.folded(), xp = sfp.folded();
    span = span_comparison(x, xp);
  }
  if (mode != CompareMethod::Span) {
    GradientMatrix m = gradient_matrix(superoperator_matrix(sf));
    GradientMatrix mp = gradient_matrix(superoperator_matrix(sfp));
    bis = psd_order_constant(m.matrix, mp.matrix);
  }
  if (mode == CompareMethod::Span) return span;
  if (mode == CompareMethod::PsdBisection) {
    ComparisonResult out;
    out.method = CompareMethod::PsdBisection;
    out.holds = bis.has_value();
    out.optimal_c = bis;
    return out;
  }
  if (span.holds != bis.has_value())
    throw Error(ErrorKind::MethodsDisagree, "span route and bisection disagree on feasibility");
  if (span.holds) {
    double c1 = *span.optimal_c, c2 = *bis;
    if (std::abs(c1 - c2) > 1e-6 * std::max(std::abs(c1), std::abs(c2)) + 1e-12)
      throw Error(ErrorKind::MethodsDisagree, "span route and bisection constants disagree");
  }
  span.method = CompareMethod::Both;
  return span;
}

ComparisonResult compare_jump_lists(std::span<const Matrix> x, std::span<const Matrix> xp) {
  auto traceless = [](std::span<const Matrix> ops) {
    std::vector<Matrix> out;
    for (const Matrix& v : ops) out.push_back(v - tau(v) * Matrix::Identity(v.rows(), v.cols()));
    return out;
  };
  std::vector<Matrix> tx = traceless(x), txp = traceless(xp);
  ComparisonResult out = span_comparison(tx, txp);
  out.possibly_non_minimal = true;
  return out;
}

double comparison_constant(const LindbladGenerator& l, const LindbladGenerator& lp) {
  ComparisonResult r = compare(l, lp, CompareMethod::Both);
  if (!r.holds) throw Error(ErrorKind::SpanNotIncluded, "jump span of L is not contained in that of L'");
  return *r.optimal_c;
}

SandwichResult sandwich_check(const Matrix& m, const Matrix& mp, const Matrix& unit, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InputError, "epsilon must lie in (0, 1)");
  require_same_dim(m, mp, "sandwich_check");
  require_same_dim(m, unit, "sandwich_check unit");
  SandwichResult out;
  out.lower_margin = psd_margin(mp - (1.0 - eps) * m);
  out.upper_margin = psd_margin(m + eps * unit - mp);
  out.lower = out.lower_margin >= -default_tolerances().psd;
  out.upper = out.upper_margin >= -default_tolerances().psd;
  return out;
}

SandwichResult sandwich_check(const LindbladGenerator& l, const LindbladGenerator& lp, double eps,
                              const std::optional<SubalgebraSpec>& n) {
  if (l.dim != lp.dim) throw Error(ErrorKind::DimensionMismatch, "generators act on different spaces");
  SubalgebraSpec spec = n ? *n : SubalgebraSpec::scalars(l.dim);
  if (spec.dim() != l.dim) throw Error(ErrorKind::DimensionMismatch, "subalgebra spec dimension mismatch");
  GradientMatrix m = gradient_matrix(l), mp = gradient_matrix(lp);
  GradientMatrix e = upper_bound_unit(spec);
  return sandwich_check(m.matrix, mp.matrix, e.matrix, eps);
}

}  // namespace lindblad
