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

#include "lindblad/conditional_expectation.hpp"

#include <cmath>

namespace lindblad {

Matrix conditional_expectation(const SubalgebraSpec& spec, const Matrix& x) {
  spec.validate();
  Index n = spec.dim();
  if (x.rows() != n || x.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "operator does not match the subalgebra dimension");
  Matrix u = spec.conjugating_unitary();
  Matrix y = u.adjoint() * x * u;
  Matrix out = Matrix::Zero(n, n);
  Index offset = 0;
  for (std::size_t k = 0; k < spec.blocks.size(); ++k) {
    Index nk = spec.blocks[k].factor_dim, rk = spec.blocks[k].multiplicity, dk = nk * rk;
    Matrix state = spec.block_states.empty() ? Matrix(Matrix::Identity(rk, rk) / static_cast<double>(rk))
                                             : spec.block_states[k];
    Matrix weighted = y.block(offset, offset, dk, dk) * kron(Matrix::Identity(nk, nk), state);
    Matrix a = partial_trace(weighted, nk, rk, Subsystem::B);
    out.block(offset, offset, dk, dk) = kron(a, Matrix::Identity(rk, rk));
    offset += dk;
  }
  return u * out * u.adjoint();
}

Matrix conditional_expectation_superop(const SubalgebraSpec& spec) {
  Index n = spec.dim();
  Matrix s(n * n, n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      s.col(b * n + a) = vec(conditional_expectation(spec, matrix_unit(n, a, b)));
  return s;
}

Matrix depolarizer_superop(const SubalgebraSpec& spec) {
  Index n = spec.dim();
  return conditional_expectation_superop(spec) - Matrix::Identity(n * n, n * n);
}

LindbladGenerator DepolarizerConstruction::as_generator(Index n) const {
  LindbladGenerator g = LindbladGenerator::zero(n);
  for (const Matrix& v : jumps) g.jumps.push_back({v, 1.0});
  return g;
}

LindbladGenerator DepolarizerConstruction::unit_generator(Index n) const {
  LindbladGenerator g = LindbladGenerator::zero(n);
  for (const Matrix& v : jumps) g.jumps.push_back({v, 1.0 / scale});
  return g;
}

DepolarizerConstruction depolarizer_generator(const SubalgebraSpec& spec) {
  spec.validate();
  if (!spec.trace_preserving())
    throw Error(ErrorKind::BadBlockStructure, "the explicit construction needs uniform block states");
  Index n = spec.dim();
  Matrix u = spec.conjugating_unitary();
  Matrix id = Matrix::Identity(n, n);
  double r1 = static_cast<double>(spec.blocks.front().multiplicity);

  DepolarizerConstruction out;
  std::vector<Matrix> center;
  Index offset = 0;
  for (const Block& b : spec.blocks) {
    Index nk = b.factor_dim, rk = b.multiplicity, dk = nk * rk;
    // blocks of M_{r_k} carry Tr(V^2) = r_k and the weight r_1/r_k
    double w = r1 / static_cast<double>(rk);
    std::vector<Matrix> local = self_adjoint_basis(rk);
    for (std::size_t i = 0; i < local.size(); ++i) {
      Matrix v = Matrix::Zero(n, n);
      v.block(offset, offset, dk, dk) = kron(Matrix::Identity(nk, nk), local[i]) * w;
      if (i == 0)
        center.push_back(v - tau(v) * id);
      else
        out.jumps.push_back(u * v * u.adjoint());
    }
    offset += dk;
  }
  // Scalar parts do not move the generator; orthogonalize the remaining
  // center directions through their Gram matrix.
  Index c = static_cast<Index>(center.size());
  RealMatrix gram(c, c);
  for (Index i = 0; i < c; ++i)
    for (Index j = 0; j < c; ++j)
      gram(i, j) = tau(center[static_cast<std::size_t>(i)] * center[static_cast<std::size_t>(j)]).real();
  if (c > 0) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
    double top = es.eigenvalues().cwiseAbs().maxCoeff();
    for (Index g = c - 1; g >= 0; --g) {
      if (es.eigenvalues()(g) <= 1e-12 * top || top == 0.0) continue;
      Matrix v = Matrix::Zero(n, n);
      for (Index i = 0; i < c; ++i) v += es.eigenvectors()(i, g) * center[static_cast<std::size_t>(i)];
      out.jumps.push_back(u * v * u.adjoint());
    }
  }

  Matrix sum = superoperator_matrix(out.as_generator(n));
  Matrix target = depolarizer_superop(spec);
  double tt = target.squaredNorm();
  out.scale = tt > 0.0 ? (target.adjoint() * sum).trace().real() / tt : 1.0;
  out.residual = operator_norm(sum - out.scale * target);
  if (out.residual > 1e-9 * (1.0 + out.scale))
    throw Error(ErrorKind::VerificationFailed, "depolarizer construction does not reproduce -(I - E)");
  return out;
}

GradientMatrix upper_bound_unit(const SubalgebraSpec& spec) {
  return gradient_matrix(depolarizer_superop(spec));
}

}  // namespace lindblad
