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

#include "lindblad/subalgebra.hpp"

#include <cmath>
#include <random>
#include <string>

namespace lindblad {

Index SubalgebraSpec::dim() const {
  Index n = 0;
  for (const Block& b : blocks) n += b.factor_dim * b.multiplicity;
  return n;
}

bool SubalgebraSpec::trace_preserving() const {
  if (block_states.empty()) return true;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Index r = blocks[k].multiplicity;
    Matrix uniform = Matrix::Identity(r, r) / static_cast<double>(r);
    if (max_abs(block_states[k] - uniform) > 1e-12) return false;
  }
  return true;
}

Matrix SubalgebraSpec::conjugating_unitary() const {
  return unitary ? *unitary : Matrix::Identity(dim(), dim());
}

void SubalgebraSpec::validate() const {
  if (blocks.empty()) throw Error(ErrorKind::BadBlockStructure, "subalgebra spec has no blocks");
  for (const Block& b : blocks)
    if (b.factor_dim < 1 || b.multiplicity < 1)
      throw Error(ErrorKind::BadBlockStructure, "block dimensions must be positive");
  Index n = dim();
  if (unitary) {
    if (unitary->rows() != n || unitary->cols() != n)
      throw Error(ErrorKind::DimensionMismatch, "conjugating unitary has the wrong size");
    if (max_abs(unitary->adjoint() * *unitary - Matrix::Identity(n, n)) > 1e-10 * n)
      throw Error(ErrorKind::BadBlockStructure, "conjugating matrix is not unitary");
  }
  if (!block_states.empty()) {
    if (block_states.size() != blocks.size())
      throw Error(ErrorKind::BadBlockStructure, "one block state per block is required");
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (block_states[k].rows() != blocks[k].multiplicity)
        throw Error(ErrorKind::DimensionMismatch, "block state has the wrong size");
      DensityMatrix check(block_states[k]);
      (void)check;
    }
  }
}

std::vector<Matrix> algebra_basis(const SubalgebraSpec& spec) {
  spec.validate();
  Index n = spec.dim();
  Matrix u = spec.conjugating_unitary();
  std::vector<Matrix> out;
  Index offset = 0;
  for (const Block& b : spec.blocks) {
    Index nk = b.factor_dim, rk = b.multiplicity;
    double norm = std::sqrt(static_cast<double>(n) / static_cast<double>(rk));
    for (Index i = 0; i < nk; ++i)
      for (Index j = 0; j < nk; ++j) {
        Matrix e = Matrix::Zero(n, n);
        e.block(offset, offset, nk * rk, nk * rk) =
            kron(matrix_unit(nk, i, j), Matrix::Identity(rk, rk)) * norm;
        out.push_back(u * e * u.adjoint());
      }
    offset += nk * rk;
  }
  return out;
}

namespace {

// Orthonormal (Frobenius) basis of the span.
std::vector<Matrix> orthonormal_span(std::span<const Matrix> ops, Index n) {
  Matrix cols(n * n, static_cast<Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) cols.col(static_cast<Index>(i)) = vec(ops[i]);
  Eigen::BDCSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  std::vector<Matrix> out;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-9 * s(0)) out.push_back(unvec(svd.matrixU().col(i), n));
  return out;
}

// Real span of Hermitian matrices, orthonormalized.
std::vector<Matrix> hermitian_span(const std::vector<Matrix>& herm, Index n) {
  if (herm.empty()) return {};
  RealMatrix cols(2 * n * n, static_cast<Index>(herm.size()));
  for (std::size_t i = 0; i < herm.size(); ++i) {
    Vector v = vec(herm[i]);
    cols.col(static_cast<Index>(i)) << v.real(), v.imag();
  }
  Eigen::BDCSVD<RealMatrix> svd(cols, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  std::vector<Matrix> out;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) <= 1e-9 * s(0)) continue;
    RealVector c = svd.matrixU().col(i);
    Vector v = c.head(n * n).cast<Complex>() + kI * c.tail(n * n).cast<Complex>();
    Matrix h = unvec(v, n);
    out.push_back(0.5 * (h + h.adjoint()));
  }
  return out;
}

// Groups ascending eigenvalues separated by gaps larger than `gap`.
std::vector<std::vector<Index>> clusters(const RealVector& values, double gap) {
  std::vector<std::vector<Index>> out;
  for (Index i = 0; i < values.size(); ++i) {
    if (out.empty() || values(i) - values(i - 1) > gap) out.emplace_back();
    out.back().push_back(i);
  }
  return out;
}

Matrix columns(const Matrix& v, const std::vector<Index>& idx) {
  Matrix out(v.rows(), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Index>(i)) = v.col(idx[i]);
  return out;
}

constexpr double kGap = 1e-7;
constexpr int kMaxProbes = 16;

}  // namespace

SubalgebraSpec block_structure(std::span<const Matrix> algebra, std::uint64_t seed) {
  if (algebra.empty()) throw Error(ErrorKind::BadBlockStructure, "empty algebra");
  Index n = algebra.front().rows();
  std::vector<Matrix> basis = orthonormal_span(algebra, n);
  Index d = static_cast<Index>(basis.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  // center: sum_i a_i B_i commuting with every B_k
  Matrix constraints(d * n * n, d);
  for (Index k = 0; k < d; ++k)
    for (Index i = 0; i < d; ++i)
      constraints.block(k * n * n, i, n * n, 1) = vec(commutator(basis[i], basis[k]));
  Matrix coeffs = null_space(constraints, 1e-9);
  std::vector<Matrix> herm;
  for (Index c = 0; c < coeffs.cols(); ++c) {
    Matrix z = Matrix::Zero(n, n);
    for (Index i = 0; i < d; ++i) z += coeffs(i, c) * basis[i];
    herm.push_back(0.5 * (z + z.adjoint()));
    herm.push_back((z - z.adjoint()) / (2.0 * kI));
  }
  std::vector<Matrix> center = hermitian_span(herm, n);
  Index zdim = static_cast<Index>(center.size());
  if (zdim != coeffs.cols())
    throw Error(ErrorKind::BadBlockStructure, "center is not closed under adjoints");

  std::vector<std::vector<Index>> groups;
  HermitianEig probe;
  for (int attempt = 0; attempt < kMaxProbes; ++attempt) {
    Matrix h = Matrix::Zero(n, n);
    for (const Matrix& z : center) h += gauss(rng) * z;
    probe = hermitian_eig(h);
    double scale = 1.0 + probe.values.cwiseAbs().maxCoeff();
    groups = clusters(probe.values, kGap * scale);
    if (static_cast<Index>(groups.size()) == zdim) break;
    groups.clear();
  }
  if (groups.empty()) throw Error(ErrorKind::BadBlockStructure, "could not separate the center");

  std::vector<Matrix> herm_all;
  for (const Matrix& b : basis) {
    herm_all.push_back(0.5 * (b + b.adjoint()));
    herm_all.push_back((b - b.adjoint()) / (2.0 * kI));
  }
  std::vector<Matrix> herm_basis = hermitian_span(herm_all, n);

  SubalgebraSpec spec;
  Matrix u(n, n);
  Index offset = 0;
  Index total = 0;
  for (const std::vector<Index>& g : groups) {
    Matrix w = columns(probe.vectors, g);
    Index dk = w.cols();
    std::vector<Matrix> restricted;
    for (const Matrix& b : basis) restricted.push_back(w.adjoint() * b * w);
    Index dim_k = static_cast<Index>(orthonormal_span(restricted, dk).size());
    Index nk = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dim_k))));
    if (nk * nk != dim_k || dk % nk != 0)
      throw Error(ErrorKind::BadBlockStructure, "block is not a full matrix algebra with multiplicity");
    Index rk = dk / nk;
    total += dim_k;

    Matrix uk;
    if (nk == 1) {
      uk = w;
    } else {
      for (int attempt = 0; attempt < kMaxProbes && uk.size() == 0; ++attempt) {
        Matrix h = Matrix::Zero(n, n);
        for (const Matrix& b : herm_basis) h += gauss(rng) * b;
        HermitianEig eh = hermitian_eig(w.adjoint() * h * w);
        double scale = 1.0 + eh.values.cwiseAbs().maxCoeff();
        auto sub = clusters(eh.values, kGap * scale);
        if (static_cast<Index>(sub.size()) != nk) continue;
        bool sizes_ok = true;
        for (const auto& s : sub) sizes_ok = sizes_ok && static_cast<Index>(s.size()) == rk;
        if (!sizes_ok) continue;
        Matrix y = Matrix::Zero(n, n);
        for (const Matrix& b : basis) y += Complex(gauss(rng), gauss(rng)) * b;
        Matrix yk = w.adjoint() * y * w;
        Matrix e0 = columns(eh.vectors, sub[0]);
        Matrix local(dk, dk);
        local.leftCols(rk) = e0;
        bool ok = true;
        for (Index a = 1; a < nk && ok; ++a) {
          Matrix ea = columns(eh.vectors, sub[static_cast<std::size_t>(a)]);
          Matrix m = ea.adjoint() * yk * e0;
          double s = m.col(0).norm();
          if (s < 1e-6 * (1.0 + yk.norm())) { ok = false; break; }
          Matrix unit = m / s;
          if (max_abs(unit.adjoint() * unit - Matrix::Identity(rk, rk)) > 1e-6) { ok = false; break; }
          local.middleCols(a * rk, rk) = ea * unit;
        }
        if (ok) uk = w * local;
      }
      if (uk.size() == 0) throw Error(ErrorKind::BadBlockStructure, "could not align block bases");
    }
    u.middleCols(offset, dk) = uk;
    spec.blocks.push_back({nk, rk});
    offset += dk;
  }
  if (total != d) throw Error(ErrorKind::BadBlockStructure, "block dimensions do not add up");
  spec.unitary = u;

  // every basis element must be of the form U (sum A_k (x) 1) U^*
  for (const Matrix& b : basis) {
    Matrix y = u.adjoint() * b * u;
    Matrix rebuilt = Matrix::Zero(n, n);
    Index o = 0;
    for (const Block& blk : spec.blocks) {
      Index dk = blk.factor_dim * blk.multiplicity;
      Matrix x = y.block(o, o, dk, dk);
      Matrix a = partial_trace(x, blk.factor_dim, blk.multiplicity, Subsystem::B) /
                 static_cast<double>(blk.multiplicity);
      rebuilt.block(o, o, dk, dk) = kron(a, Matrix::Identity(blk.multiplicity, blk.multiplicity));
      o += dk;
    }
    if (max_abs(rebuilt - y) > 1e-7 * (1.0 + max_abs(y)))
      throw Error(ErrorKind::BadBlockStructure, "recovered block structure does not reproduce the algebra");
  }
  return spec;
}

}  // namespace lindblad
