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

#include <cstdint>
#include <string>
#include <vector>

#include "lindblad/matrix_core.hpp"
#include "lindblad/subalgebra.hpp"

namespace lindblad {

// half:   L(x) = i[H,x] + sum_j c_j (V_j^* x V_j - 1/2 {V_j^* V_j, x})
// double: L(x) = i[H,x] + sum_j c_j (2 V_j^* x V_j - {V_j^* V_j, x})
enum class Convention { Half, Double };

struct Jump {
  Matrix op;
  double weight = 1.0;
};

struct LindbladGenerator {
  Index dim = 0;
  Matrix hamiltonian;
  std::vector<Jump> jumps;
  Convention convention = Convention::Half;

  static LindbladGenerator zero(Index n);
  // Checks dimensions, Hermiticity of H and non-negative weights.
  void validate() const;
  // Same superoperator, half convention (V -> sqrt(2) V for double input).
  LindbladGenerator to_half() const;
  // Folded jumps sqrt(c_j) V_j in the half convention.
  std::vector<Matrix> folded_jumps() const;
  LindbladGenerator scaled(double s) const;
};

struct GksForm {
  std::vector<Matrix> basis;
  Matrix coeff;
  Matrix hamiltonian;
  Convention convention = Convention::Half;
};

// Traceless tau-orthonormal units with weights; folded() = sqrt(weight)*unit.
struct StandardForm {
  Matrix hamiltonian;
  std::vector<Matrix> units;
  std::vector<double> weights;

  Index dim() const { return hamiltonian.rows(); }
  std::vector<Matrix> folded() const;
  LindbladGenerator as_generator() const;
};

Matrix superoperator_matrix(const LindbladGenerator& gen);
Matrix superoperator_matrix(const StandardForm& sf);
Matrix superoperator_matrix(const GksForm& gks);

// Norm on L^2(M, tau); the tau weighting cancels, so it is the largest
// singular value of the superoperator matrix.
double operator_norm(const Matrix& superop);

StandardForm to_standard_form(const LindbladGenerator& gen);
StandardForm to_standard_form(const GksForm& gks);
LindbladGenerator to_generator(const GksForm& gks);

struct Witness {
  std::string check;
  bool passed = false;
  double margin = 0.0;
};

struct ValidationResult {
  bool valid = false;
  std::vector<Witness> witnesses;
};

ValidationResult validate_lindblad(const Matrix& superop, double tol = default_tolerances().psd);

bool check_detailed_balance(const Matrix& superop, const DensityMatrix& sigma,
                            double tol = default_tolerances().hermitian);
bool check_detailed_balance(const LindbladGenerator& gen, const DensityMatrix& sigma,
                            double tol = default_tolerances().hermitian);

// Jump V with Delta_sigma(V) = sigma V sigma^{-1} = e^{-omega} V, entering the
// generator with weight e^{-omega/2}; `partner` indexes the jump carrying V^*.
struct DbJump {
  Matrix op;
  double omega = 0.0;
  std::size_t partner = 0;
};

struct DetailedBalanceData {
  DensityMatrix sigma;
  std::vector<DbJump> jumps;
  std::vector<double> omegas;                    // distinct, ascending
  std::vector<std::vector<std::size_t>> partition;  // jump indices per omega

  Index dim() const { return sigma.dim(); }
  LindbladGenerator as_generator() const;
};

DetailedBalanceData db_spectral_data(const LindbladGenerator& gen, const DensityMatrix& sigma);
// Rebuilds partition/omegas after the jump list changed.
void regroup(DetailedBalanceData& db);

struct FixedPointAlgebra {
  std::vector<Matrix> basis;  // tau-orthonormal
  SubalgebraSpec spec;
};

FixedPointAlgebra fixed_point_algebra(const LindbladGenerator& gen, std::uint64_t seed = 0x5eedULL);

}  // namespace lindblad
