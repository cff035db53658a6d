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

#include <stdexcept>
#include <string>
#include <string_view>

namespace lindblad {

enum class ErrorKind {
  NotHermitian,
  DimensionMismatch,
  SigmaNotStrict,
  CoeffNotPSD,
  NotLindblad,
  NotDetailedBalanced,
  FixedPointsNotAlgebra,
  SpanNotIncluded,
  MethodsDisagree,
  BadBlockStructure,
  VerificationFailed,
  NotGammaShaped,
  OutsideSpan,
  FixedAlgebraMismatch,
  SupportViolation,
  RhoNotStrict,
  ZeroEmission,
  DegenerateState,
  InputError,
};

std::string_view to_string(ErrorKind kind);

// Verification failures map to CLI exit code 2, everything else to 1.
bool is_verification_failure(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Tolerances shared by the predicates. The defaults can be changed globally
// (the CLI does this for --tol) but every predicate also accepts an override.
struct Tolerances {
  double hermitian = 1e-9;
  double psd = 1e-9;
  double trace = 1e-9;
  double rank = 1e-10;
  double span = 1e-8;
};

Tolerances& default_tolerances();

}  // namespace lindblad
