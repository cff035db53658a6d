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
#include <span>
#include <vector>

#include "lindblad/generator.hpp"
#include "lindblad/gradient.hpp"
#include "lindblad/order.hpp"

namespace lindblad {

// Psi(x) = sum_j c_j V_j^* x V_j, Psi_*(rho) = sum_j c_j V_j rho V_j^*.
struct JumpMap {
  Index dim = 0;
  std::vector<Jump> kraus;

  Matrix apply(const Matrix& x) const;
  Matrix apply_predual(const Matrix& rho) const;
  Matrix superop() const;
  std::vector<Matrix> folded() const;
};

// tau = W^* W with W(i, r*n + b) = <r| V_i |b> for folded V_i.
struct ChoiMatrix {
  Matrix matrix;
  Matrix factor;
};

// Built from the standard-form jumps of L.
JumpMap jump_map(const LindbladGenerator& l);
ChoiMatrix choi_matrix(const JumpMap& psi);

ComparisonResult compare_jump_maps(const LindbladGenerator& l, const LindbladGenerator& lp,
                                   CompareMethod mode = CompareMethod::Both);

double emission_rate(const LindbladGenerator& l, const DensityMatrix& rho);

inline constexpr double kG2DenominatorTol = 1e-12;

// Tr(Psi_* Psi_*(rho)) / Tr(Psi_*(rho))^2; throws ZeroEmission.
double g2(const LindbladGenerator& l, const DensityMatrix& rho);
double g2(const JumpMap& psi, const DensityMatrix& rho);

struct G2ScanRow {
  std::size_t trial = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  double g2_value = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
};

struct G2FrontierPoint {
  double epsilon = 0.0;
  double first_failure = 0.0;
  double last_pass = 0.0;
};

// Perturbs the standard-form weights (jitter) and rotates the unit jumps
// inside their span; bounds are (1 -+ eps) g2(L).
std::vector<G2ScanRow> g2_stability_scan(const LindbladGenerator& l, const DensityMatrix& rho,
                                         std::span<const double> eps, const PerturbationModel& model,
                                         std::size_t trials, std::uint64_t seed, unsigned jobs = 1);

std::vector<G2FrontierPoint> g2_frontier(std::span<const G2ScanRow> rows);

}  // namespace lindblad
