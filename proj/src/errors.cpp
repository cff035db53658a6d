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

#include "lindblad/errors.hpp"

namespace lindblad {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SigmaNotStrict: return "SigmaNotStrict";
    case ErrorKind::CoeffNotPSD: return "CoeffNotPSD";
    case ErrorKind::NotLindblad: return "NotLindblad";
    case ErrorKind::NotDetailedBalanced: return "NotDetailedBalanced";
    case ErrorKind::FixedPointsNotAlgebra: return "FixedPointsNotAlgebra";
    case ErrorKind::SpanNotIncluded: return "SpanNotIncluded";
    case ErrorKind::MethodsDisagree: return "MethodsDisagree";
    case ErrorKind::BadBlockStructure: return "BadBlockStructure";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotGammaShaped: return "NotGammaShaped";
    case ErrorKind::OutsideSpan: return "OutsideSpan";
    case ErrorKind::FixedAlgebraMismatch: return "FixedAlgebraMismatch";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::RhoNotStrict: return "RhoNotStrict";
    case ErrorKind::ZeroEmission: return "ZeroEmission";
    case ErrorKind::DegenerateState: return "DegenerateState";
    case ErrorKind::InputError: return "InputError";
  }
  return "Unknown";
}

bool is_verification_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotLindblad:
    case ErrorKind::NotDetailedBalanced:
    case ErrorKind::FixedPointsNotAlgebra:
    case ErrorKind::SpanNotIncluded:
    case ErrorKind::MethodsDisagree:
    case ErrorKind::VerificationFailed:
    case ErrorKind::NotGammaShaped:
    case ErrorKind::OutsideSpan:
    case ErrorKind::FixedAlgebraMismatch:
      return true;
    default:
      return false;
  }
}

Tolerances& default_tolerances() {
  static Tolerances tol;
  return tol;
}

}  // namespace lindblad
