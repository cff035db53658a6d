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

#include "lindblad/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lindblad {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol * (1.0 + max_abs(m));
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square");
}

void require_hermitian(const Matrix& m, const char* what) {
  require_square(m, what);
  if (!is_hermitian(m))
    throw Error(ErrorKind::NotHermitian, std::string(what) + " is not Hermitian");
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": dimension mismatch");
}

HermitianEig hermitian_eig(const Matrix& m) {
  require_hermitian(m, "hermitian_eig input");
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return hermitian_eig(m).values(0);
}

double psd_margin(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  HermitianEig e = hermitian_eig(m);
  double big = e.values.cwiseAbs().maxCoeff();
  return e.values(0) / (1.0 + big);
}

bool is_psd(const Matrix& m, double tol) { return psd_margin(m) >= -tol; }

Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Subsystem traced) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "partial_trace: dimension factorization does not match");
  if (traced == Subsystem::B) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_a; ++i) out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

Complex tau(const Matrix& m) { return m.trace() / static_cast<double>(m.rows()); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix matrix_unit(Index n, Index i, Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Index n) { return Eigen::Map<const Matrix>(v.data(), n, n); }

Matrix left_multiplication(const Matrix& a) {
  return kron(Matrix::Identity(a.rows(), a.rows()), a);
}

Matrix right_multiplication(const Matrix& b) {
  return kron(b.transpose(), Matrix::Identity(b.rows(), b.rows()));
}

Matrix sandwich(const Matrix& a, const Matrix& b) { return kron(b.transpose(), a); }

Matrix apply_superoperator(const Matrix& s, const Matrix& x) {
  Index n = x.rows();
  if (s.cols() != n * n) throw Error(ErrorKind::DimensionMismatch, "superoperator size mismatch");
  return unvec(s * vec(x), n);
}

DensityMatrix::DensityMatrix(const Matrix& m, bool strict) : m_(m), strict_(strict) {
  require_hermitian(m, "density matrix");
  const Tolerances& tol = default_tolerances();
  eig_ = hermitian_eig(m);
  if (std::abs(m.trace() - Complex(1.0)) > tol.trace)
    throw Error(ErrorKind::InputError, "density matrix must have unit trace");
  if (eig_.values(0) < -tol.psd)
    throw Error(ErrorKind::InputError, "density matrix must be positive semidefinite");
  if (strict && eig_.values(0) <= tol.psd)
    throw Error(ErrorKind::SigmaNotStrict, "density matrix is not strictly positive");
}

DensityMatrix DensityMatrix::maximally_mixed(Index n) {
  return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(n), true);
}

InnerProductKind InnerProductKind::make(Kind k, const DensityMatrix& s) {
  if (!s.strict()) throw Error(ErrorKind::SigmaNotStrict, "inner product requires a strict sigma");
  InnerProductKind out;
  out.kind = k;
  out.sigma = s;
  return out;
}

Complex inner_product(const Matrix& x, const Matrix& y, const InnerProductKind& kind) {
  require_same_dim(x, y, "inner_product");
  require_square(x, "inner_product argument");
  using K = InnerProductKind::Kind;
  if (kind.kind != K::HsNormalized) {
    if (!kind.sigma.strict()) throw Error(ErrorKind::SigmaNotStrict, "sigma must be strict");
    require_same_dim(x, kind.sigma.matrix(), "inner_product sigma");
  }
  switch (kind.kind) {
    case K::HsNormalized:
      return tau(x.adjoint() * y);
    case K::Gns:
      return (kind.sigma.matrix() * x.adjoint() * y).trace();
    case K::Kms: {
      Matrix r = hermitian_function(kind.sigma.matrix(), [](double s) { return std::sqrt(s); });
      return (r * x.adjoint() * r * y).trace();
    }
    case K::Bkm:
      return bkm_inner_product(kind.sigma.eig(), x, y);
  }
  return {};
}

double log_mean(double a, double b) {
  double hi = std::max(a, b), lo = std::min(a, b);
  if (hi - lo <= 1e-12 * hi) return 0.5 * (a + b);
  double x = (lo - hi) / hi;
  return (lo - hi) / std::log1p(x);
}

double inverse_log_mean(double a, double b) { return 1.0 / log_mean(a, b); }

Complex bkm_inner_product(const HermitianEig& sigma, const Matrix& x, const Matrix& y) {
  const Matrix& q = sigma.vectors;
  Matrix xt = q.adjoint() * x * q;
  Matrix yt = q.adjoint() * y * q;
  Complex acc = 0.0;
  for (Index a = 0; a < xt.rows(); ++a)
    for (Index b = 0; b < xt.cols(); ++b)
      acc += log_mean(sigma.values(a), sigma.values(b)) * std::conj(xt(a, b)) * yt(a, b);
  return acc;
}

std::vector<Matrix> orthonormalize_traceless(std::span<const Matrix> ops) {
  std::vector<Matrix> out;
  if (ops.empty()) return out;
  Index n = ops.front().rows();
  double scale = 0.0;
  for (const Matrix& op : ops) {
    if (op.rows() != n || op.cols() != n)
      throw Error(ErrorKind::DimensionMismatch, "orthonormalize_traceless: mixed dimensions");
    scale = std::max(scale, op.norm());
  }
  Matrix id = Matrix::Identity(n, n);
  double dn = static_cast<double>(n);
  for (const Matrix& op : ops) {
    Matrix w = op - tau(op) * id;
    // two passes of classical Gram-Schmidt are enough for our sizes
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& b : out) w -= tau(b.adjoint() * w) * b;
    double norm = std::sqrt(std::max(0.0, tau(w.adjoint() * w).real()));
    if (norm * std::sqrt(dn) > 1e-10 * std::max(scale, 1e-300)) out.push_back(w / norm);
  }
  return out;
}

std::vector<Matrix> self_adjoint_basis(Index r) {
  std::vector<Matrix> out;
  double dr = static_cast<double>(r);
  out.push_back(Matrix::Identity(r, r));
  for (Index k = 1; k < r; ++k) {
    Matrix d = Matrix::Zero(r, r);
    for (Index j = 0; j < k; ++j) d(j, j) = 1.0;
    d(k, k) = -static_cast<double>(k);
    out.push_back(d * std::sqrt(dr / static_cast<double>(k * (k + 1))));
  }
  double s = std::sqrt(dr / 2.0);
  for (Index j = 0; j < r; ++j)
    for (Index k = j + 1; k < r; ++k) {
      Matrix m = Matrix::Zero(r, r);
      m(j, k) = m(k, j) = s;
      out.push_back(m);
    }
  for (Index j = 0; j < r; ++j)
    for (Index k = j + 1; k < r; ++k) {
      Matrix m = Matrix::Zero(r, r);
      m(j, k) = -kI * s;
      m(k, j) = kI * s;
      out.push_back(m);
    }
  return out;
}

std::vector<Matrix> traceless_basis(Index n) {
  std::vector<Matrix> all = self_adjoint_basis(n);
  return {all.begin() + 1, all.end()};
}

Matrix null_space(const Matrix& a, double rel_tol) {
  Index cols = a.cols();
  if (a.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  double top = s.size() ? s(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * top && top > 0.0) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Index numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(a);
  const RealVector& s = svd.singularValues();
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0) && s(0) > 0.0) ++rank;
  return rank;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace lindblad
