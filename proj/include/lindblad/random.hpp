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

#include <random>

#include "lindblad/generator.hpp"

namespace lindblad {

Matrix random_matrix(Index n, std::mt19937_64& rng);
Matrix random_hermitian(Index n, std::mt19937_64& rng);
Matrix random_unitary(Index n, std::mt19937_64& rng);
// Strictly positive random state.
DensityMatrix random_density(Index n, std::mt19937_64& rng);

// m Ginibre jumps with weights in [0.2, 1.5] and a random Hamiltonian.
LindbladGenerator random_generator(Index n, Index m, std::mt19937_64& rng, bool hamiltonian = true);
// m random orthonormal traceless units with random weights.
StandardForm random_standard_form(Index n, Index m, std::mt19937_64& rng);

struct DbInstance {
  LindbladGenerator generator;
  DensityMatrix sigma;
};

// Random sigma and random modular jumps (conjugate pairs for every off-diagonal
// eigen-pair of sigma plus random diagonal self-adjoint jumps).
DbInstance random_db_generator(Index n, std::mt19937_64& rng);
// 1_{outer} (x) L_inner: fixed-point algebra M_outer (x) 1.
DbInstance random_db_generator(Index outer, Index inner, std::mt19937_64& rng);

}  // namespace lindblad
