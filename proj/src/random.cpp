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

#include "lindblad/random.hpp"

#include <cmath>

#include "lindblad/functional.hpp"

namespace lindblad {

Matrix random_matrix(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

Matrix random_hermitian(Index n, std::mt19937_64& rng) {
  Matrix g = random_matrix(n, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix random_unitary(Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, rng));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

DensityMatrix random_density(Index n, std::mt19937_64& rng) { return sample_state(n, rng); }

LindbladGenerator random_generator(Index n, Index m, std::mt19937_64& rng, bool hamiltonian) {
  std::uniform_real_distribution<double> weight(0.2, 1.5);
  LindbladGenerator g = LindbladGenerator::zero(n);
  if (hamiltonian) g.hamiltonian = random_hermitian(n, rng);
  for (Index j = 0; j < m; ++j) g.jumps.push_back({random_matrix(n, rng) / std::sqrt(static_cast<double>(n)), weight(rng)});
  return g;
}

StandardForm random_standard_form(Index n, Index m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(0.2, 1.5);
  std::vector<Matrix> raw;
  for (Index j = 0; j < m; ++j) raw.push_back(random_matrix(n, rng));
  StandardForm sf;
  sf.hamiltonian = random_hermitian(n, rng);
  sf.units = orthonormalize_traceless(raw);
  for (std::size_t j = 0; j < sf.units.size(); ++j) sf.weights.push_back(weight(rng));
  return sf;
}

DbInstance random_db_generator(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;
  Matrix q = random_unitary(n, rng);
  RealVector p(n);
  for (Index i = 0; i < n; ++i) p(i) = std::exp(gauss(rng) * 0.6);
  p /= p.sum();
  Matrix sigma = q * p.cast<Complex>().asDiagonal() * q.adjoint();
  LindbladGenerator g = LindbladGenerator::zero(n);
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) {
      double omega = std::log(p(v)) - std::log(p(u));
      Complex a(gauss(rng), gauss(rng));
      Matrix op = a * q * matrix_unit(n, u, v) * q.adjoint();
      g.jumps.push_back({op, std::exp(-0.5 * omega)});
      g.jumps.push_back({op.adjoint(), std::exp(0.5 * omega)});
    }
  for (Index k = 0; k < n - 1; ++k) {
    RealVector d(n);
    for (Index i = 0; i < n; ++i) d(i) = gauss(rng);
    g.jumps.push_back({q * d.cast<Complex>().asDiagonal() * q.adjoint(), 0.2 + unif(rng)});
  }
  return {g, DensityMatrix(0.5 * (sigma + sigma.adjoint()), true)};
}

DbInstance random_db_generator(Index outer, Index inner, std::mt19937_64& rng) {
  DbInstance base = random_db_generator(inner, rng);
  Matrix id = Matrix::Identity(outer, outer);
  LindbladGenerator g = LindbladGenerator::zero(outer * inner);
  for (const Jump& j : base.generator.jumps) g.jumps.push_back({kron(id, j.op), j.weight});
  Matrix sigma = kron(id / static_cast<double>(outer), base.sigma.matrix());
  return {g, DensityMatrix(sigma, true)};
}

}  // namespace lindblad
