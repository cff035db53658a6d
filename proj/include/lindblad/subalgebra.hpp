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
#include <optional>
#include <vector>

#include "lindblad/matrix_core.hpp"

namespace lindblad {

// N = U (sum_k M_{n_k} (x) 1_{r_k}) U^*, blocks ordered along the diagonal.
struct Block {
  Index factor_dim;    // n_k
  Index multiplicity;  // r_k
};

struct SubalgebraSpec {
  std::vector<Block> blocks;
  std::optional<Matrix> unitary;
  std::vector<Matrix> block_states;  // empty: uniform tau_k = 1/r_k

  Index dim() const;
  bool trace_preserving() const;
  Matrix conjugating_unitary() const;
  // Throws BadBlockStructure / DimensionMismatch on malformed specs.
  void validate() const;

  static SubalgebraSpec full(Index n) { return {{{n, 1}}, std::nullopt, {}}; }
  static SubalgebraSpec scalars(Index n) { return {{{1, n}}, std::nullopt, {}}; }
};

// tau-orthonormal basis of N (matrix units of each factor, conjugated by U).
std::vector<Matrix> algebra_basis(const SubalgebraSpec& spec);

// Block structure of a *-subalgebra given by a basis (any inner product),
// recovered from random self-adjoint probes of the algebra and its center.
SubalgebraSpec block_structure(std::span<const Matrix> algebra, std::uint64_t seed = 0x5eedULL);

}  // namespace lindblad
