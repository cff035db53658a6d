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
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lindblad/generator.hpp"
#include "lindblad/subalgebra.hpp"

namespace lindblad {

// A detailed-balanced generator in modular form together with its
// fixed-point algebra N and the sigma-preserving projection onto it.
struct DirichletData {
  DetailedBalanceData db;
  std::vector<Matrix> fixed_basis;
  std::optional<SubalgebraSpec> fixed_spec;
  Matrix projection;  // E_{N,sigma}: GNS-orthogonal projection onto N

  Index dim() const { return db.dim(); }
  const DensityMatrix& sigma() const { return db.sigma; }
};

DirichletData make_dirichlet_data(const LindbladGenerator& l, const DensityMatrix& sigma,
                                  std::uint64_t seed = 0x5eedULL);
DirichletData make_dirichlet_data(const DetailedBalanceData& db, std::uint64_t seed = 0x5eedULL);

// GNS(sigma)-orthogonal projection onto span(basis), as a superoperator.
Matrix sigma_projection(const DensityMatrix& sigma, std::span<const Matrix> basis);
Matrix conditional_expectation_sigma(const DirichletData& dd, const Matrix& x);
// Predual E_{N*}(rho).
Matrix predual_projection(const DirichletData& dd, const Matrix& rho);

double bkm_variance(const DensityMatrix& sigma, const SubalgebraSpec& n, const Matrix& x);
double bkm_variance(const DirichletData& dd, const Matrix& x);

// E(X) = -int_0^1 Tr(X^* sigma^s L(X) sigma^{1-s}) ds >= 0, evaluated in
// closed form over the modular jumps.
double dirichlet_form(const DirichletData& dd, const Matrix& x);
// Hermitian Gram matrix E(B_a, B_b).
Matrix dirichlet_gram(const DirichletData& dd, std::span<const Matrix> basis);

struct GapResult {
  double gap = std::numeric_limits<double>::infinity();
  Matrix witness;
};

GapResult spectral_gap(const DirichletData& dd);
// Throws FixedAlgebraMismatch when `n` is not the fixed-point algebra of dd.
GapResult spectral_gap(const DirichletData& dd, const SubalgebraSpec& n);

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double relative_entropy(const Matrix& rho, const Matrix& sigma);

// EP(rho) = -d/dt D(T_{t*} rho || E_{N*} rho) at t = 0, >= 0.
double entropy_production(const DirichletData& dd, const DensityMatrix& rho);
double mlsi_ratio(const DirichletData& dd, const DensityMatrix& rho);

// L (x) id_R with sigma (x) 1/d_R and fixed points N (x) M_{d_R}.
DirichletData amplify(const DirichletData& dd, Index d_r);

// Upper bound on the complete MLSI constant by sampling.
struct CmlsiProbe {
  double value = std::numeric_limits<double>::infinity();
  Index reference_dim = 0;
  Matrix argmin;
};

CmlsiProbe cmlsi_probe(const DirichletData& dd, Index d_r_max, std::size_t samples, std::uint64_t seed);

// Strict random state on C^n, reproducible from the stream.
DensityMatrix sample_state(Index n, std::mt19937_64& rng);

bool stability_check_pi(const DirichletData& l, const DirichletData& lp, double eps);
// Pointwise (1 - eps) EP_L(rho) <= EP_L'(rho); states of dimension n*d_R are
// evaluated on the d_R-fold amplification.
bool stability_check_cmlsi(const DirichletData& l, const DirichletData& lp, double eps,
                           std::span<const DensityMatrix> states);

// Relative slack used for the "exact" inequalities above.
inline constexpr double kStabilitySlack = 1e-9;

}  // namespace lindblad
