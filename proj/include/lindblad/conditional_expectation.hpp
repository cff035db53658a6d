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

#include <vector>

#include "lindblad/generator.hpp"
#include "lindblad/gradient.hpp"
#include "lindblad/subalgebra.hpp"

namespace lindblad {

// X -> U (sum_k Tr_K(P_k X' P_k (1 (x) tau_k)) (x) 1_{r_k}) U^* with X' = U^* X U.
Matrix conditional_expectation(const SubalgebraSpec& spec, const Matrix& x);
Matrix conditional_expectation_superop(const SubalgebraSpec& spec);
// Superoperator of -(I - E_{N,tau}).
Matrix depolarizer_superop(const SubalgebraSpec& spec);

struct DepolarizerConstruction {
  std::vector<Matrix> jumps;  // self-adjoint, traceless, weight 1
  double scale = 0.0;         // sum_j L_{V_j} = -scale (I - E_{N,tau})
  double residual = 0.0;      // operator-norm residual of that identity

  LindbladGenerator as_generator(Index n) const;
  // Jumps divided by sqrt(scale): exactly -(I - E_{N,tau}).
  LindbladGenerator unit_generator(Index n) const;
};

DepolarizerConstruction depolarizer_generator(const SubalgebraSpec& spec);

// Gradient matrix of exactly -(I - E_{N,tau}).
GradientMatrix upper_bound_unit(const SubalgebraSpec& spec);

}  // namespace lindblad
