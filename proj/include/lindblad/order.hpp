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
#include <random>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "lindblad/generator.hpp"
#include "lindblad/gradient.hpp"
#include "lindblad/subalgebra.hpp"

namespace lindblad {

// Linear map vec(S) -> vec(m_S) from n^2 x n^2 superoperators to n^3 x n^3
// gradient matrices (column-major on both sides).
Eigen::SparseMatrix<Complex> gradient_map(Index n);

// Map M with m_M = v, made *-preserving; throws NotGammaShaped when v is not
// the gradient matrix of a *-preserving map annihilating I.
Matrix recover_map(const Matrix& v, Index n);

bool in_cone(const Matrix& v, double tol = default_tolerances().psd);

// min r >= 0 with -r e <= v <= r e. Throws OutsideSpan if ker e is not inside
// ker v, MethodsDisagree if the spectral formula and bisection drift apart.
double order_norm(const Matrix& v, const Matrix& e);
double order_norm_bisection(const Matrix& v, const Matrix& e);

struct NormEquivalence {
  double lower = 0.0;  // min ||v||_or / ||v||_2 over the samples
  double upper = 0.0;  // max of the same ratio
};
NormEquivalence measure_norm_equivalence(std::span<const Matrix> samples, const Matrix& e);

// Weight jitter c -> c (1 + eta u), u ~ U[-1,1], and rotation of the jumps
// inside each modular eigenspace by exp(eta A); eta = magnitude * model.
struct PerturbationModel {
  double weight_jitter = 0.1;
  double rotation = 0.1;
};

DetailedBalanceData perturb(const DetailedBalanceData& db, const PerturbationModel& model,
                            double magnitude, std::mt19937_64& rng);

struct ScanRow {
  std::size_t trial = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
};

struct FrontierPoint {
  double epsilon = 0.0;
  double first_failure = 0.0;  // smallest delta of a failing trial (inf if none)
  double last_pass = 0.0;      // largest passing delta below first_failure
};

// Trial t uses magnitude (t+1)/trials and its own seeded stream, so results
// do not depend on `jobs`.
std::vector<ScanRow> stability_scan(const LindbladGenerator& l, const DensityMatrix& sigma,
                                    const SubalgebraSpec& n, std::span<const double> eps,
                                    const PerturbationModel& model, std::size_t trials,
                                    std::uint64_t seed, unsigned jobs = 1);

std::vector<FrontierPoint> frontier(std::span<const ScanRow> rows);

// Per-trial generator used by stability_scan (exposed for the stability checks).
DetailedBalanceData scan_perturbation(const DetailedBalanceData& db, const PerturbationModel& model,
                                      std::size_t trial, std::size_t trials, std::uint64_t seed);

}  // namespace lindblad
