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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "lindblad/errors.hpp"

namespace lindblad {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // columns, unitary
};

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = default_tolerances().hermitian);
void require_hermitian(const Matrix& m, const char* what);
void require_square(const Matrix& m, const char* what);
void require_same_dim(const Matrix& a, const Matrix& b, const char* what);

// Throws NotHermitian; the input is symmetrized before the solve.
HermitianEig hermitian_eig(const Matrix& m);

double min_eigenvalue(const Matrix& m);
// Smallest eigenvalue divided by (1 + largest eigenvalue magnitude).
double psd_margin(const Matrix& m);
bool is_psd(const Matrix& m, double tol = default_tolerances().psd);

template <typename A, typename B>
Matrix kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.eval(), b.eval()).eval();
}

enum class Subsystem { A, B };

// Traces out `traced` of a matrix acting on C^{dim_a} (x) C^{dim_b}.
Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Subsystem traced);

// Tr(m)/n.
Complex tau(const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix matrix_unit(Index n, Index i, Index j);

// Column-major vectorization: vec(AXB) = (B^T (x) A) vec(X).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index n);
Matrix left_multiplication(const Matrix& a);   // x -> a x
Matrix right_multiplication(const Matrix& b);  // x -> x b
Matrix sandwich(const Matrix& a, const Matrix& b);  // x -> a x b
Matrix apply_superoperator(const Matrix& s, const Matrix& x);

// Functional calculus on Hermitian matrices.
template <typename F>
Matrix hermitian_function(const Matrix& m, F&& f) {
  HermitianEig e = hermitian_eig(m);
  Vector d(e.values.size());
  for (Index i = 0; i < e.values.size(); ++i) d(i) = f(e.values(i));
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates Hermiticity, positivity, unit trace; `strict` demands a
  // positive-definite matrix (throws SigmaNotStrict otherwise).
  explicit DensityMatrix(const Matrix& m, bool strict = false);

  static DensityMatrix maximally_mixed(Index n);

  const Matrix& matrix() const { return m_; }
  bool strict() const { return strict_; }
  Index dim() const { return m_.rows(); }
  const HermitianEig& eig() const { return eig_; }

 private:
  Matrix m_;
  bool strict_ = false;
  HermitianEig eig_;
};

struct InnerProductKind {
  enum class Kind { HsNormalized, Gns, Kms, Bkm };
  Kind kind = Kind::HsNormalized;
  DensityMatrix sigma;

  static InnerProductKind hs() { return {}; }
  static InnerProductKind gns(const DensityMatrix& s) { return make(Kind::Gns, s); }
  static InnerProductKind kms(const DensityMatrix& s) { return make(Kind::Kms, s); }
  static InnerProductKind bkm(const DensityMatrix& s) { return make(Kind::Bkm, s); }

 private:
  static InnerProductKind make(Kind k, const DensityMatrix& s);
};

Complex inner_product(const Matrix& x, const Matrix& y, const InnerProductKind& kind);

// Logarithmic mean (a-b)/(log a - log b); a when the arguments coincide.
double log_mean(double a, double b);
// Its reciprocal kernel (log a - log b)/(a - b); 1/a on the diagonal.
double inverse_log_mean(double a, double b);

// BKM form sum_{uv} lm(s_u, s_v) conj(x_uv) y_uv in the eigenbasis of sigma.
Complex bkm_inner_product(const HermitianEig& sigma, const Matrix& x, const Matrix& y);

// tau-orthonormal traceless basis of span{ops, I} minus CI.
std::vector<Matrix> orthonormalize_traceless(std::span<const Matrix> ops);

// Generalized Gell-Mann basis of M_r with Tr(V*V) = r: identity, the
// remaining diagonal elements, then symmetric, then antisymmetric ones.
std::vector<Matrix> self_adjoint_basis(Index r);
// Same without the identity.
std::vector<Matrix> traceless_basis(Index n);

// Orthonormal basis (columns) of the null space of a, singular values below
// rel_tol * max treated as zero.
Matrix null_space(const Matrix& a, double rel_tol = 1e-10);
Index numerical_rank(const Matrix& a, double rel_tol = 1e-10);

// Largest singular value.
double spectral_norm(const Matrix& m);

}  // namespace lindblad
