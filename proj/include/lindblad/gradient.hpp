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

#include <optional>
#include <span>
#include <vector>

#include "lindblad/generator.hpp"
#include "lindblad/subalgebra.hpp"

namespace lindblad {

// Block (rs),(tv) is Gamma_L(e_rs, e_tv); entry (a,b) of that block sits at
// row (r*n + s)*n + a, column (t*n + v)*n + b, so the matrix is n^3 x n^3.
struct GradientMatrix {
  Index n = 0;
  Matrix matrix;
};

// Block row i, block column (rs) holds [V_i, e_rs].
struct DerivationMatrix {
  Index n = 0;
  Index jumps = 0;
  Matrix matrix;
};

enum class CompareMethod { Span, PsdBisection, Both };

struct ComparisonResult {
  bool holds = false;
  std::optional<double> optimal_c;
  std::optional<Matrix> coeff_matrix;  // A with V_i = sum_j A_ij V'_j
  double residual = 0.0;               // relative span residual
  CompareMethod method = CompareMethod::Both;
  bool possibly_non_minimal = false;
};

// L(x*y) - x* L(y) - L(x*) y for a superoperator matrix.
Matrix gradient_form(const Matrix& superop, const Matrix& x, const Matrix& y);
GradientMatrix gradient_matrix(const Matrix& superop);
GradientMatrix gradient_matrix(const LindbladGenerator& gen);

DerivationMatrix derivation_matrix(const StandardForm& sf);
DerivationMatrix derivation_matrix(std::span<const Matrix> folded_jumps, Index n);

// Span route on folded jump lists: least-squares A with X = A X'.
ComparisonResult span_comparison(std::span<const Matrix> x, std::span<const Matrix> xp);

// Smallest C with a <= C b (Loewner order), or nullopt when ker b is not in
// ker a. Bisection after projecting onto range(b).
std::optional<double> psd_order_constant(const Matrix& a, const Matrix& b);

ComparisonResult compare(const LindbladGenerator& l, const LindbladGenerator& lp,
                         CompareMethod mode = CompareMethod::Both);

// Raw jump families (not canonicalized): the constant is valid but flagged.
ComparisonResult compare_jump_lists(std::span<const Matrix> x, std::span<const Matrix> xp);

// Throws SpanNotIncluded when no finite constant exists.
double comparison_constant(const LindbladGenerator& l, const LindbladGenerator& lp);

struct SandwichResult {
  bool lower = false;
  bool upper = false;
  double lower_margin = 0.0;
  double upper_margin = 0.0;
};

SandwichResult sandwich_check(const Matrix& m, const Matrix& mp, const Matrix& unit, double eps);
// N = nullopt means the full depolarizer E_tau.
SandwichResult sandwich_check(const LindbladGenerator& l, const LindbladGenerator& lp, double eps,
                              const std::optional<SubalgebraSpec>& n = std::nullopt);

}  // namespace lindblad
