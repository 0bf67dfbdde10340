/* Copyright 2026 The rankfuzz Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "rankfuzz/error.hpp"

namespace rankfuzz {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrimeQ: return "non_prime_q";
    case ErrorCode::DegreeOutOfRange: return "degree_out_of_range";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::MismatchedField: return "mismatched_field";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::TwistMismatch: return "twist_mismatch";
    case ErrorCode::BadTwist: return "bad_twist";
    case ErrorCode::DivisionByZeroPoly: return "division_by_zero_poly";
    case ErrorCode::DependentPoints: return "dependent_points";
    case ErrorCode::DependentRestriction: return "dependent_restriction";
    case ErrorCode::BadDimensions: return "bad_dimensions";
    case ErrorCode::BadDistance: return "bad_distance";
    case ErrorCode::TooLarge: return "too_large";
    case ErrorCode::ParamMismatch: return "param_mismatch";
    case ErrorCode::DependentFeatures: return "dependent_features";
    case ErrorCode::DuplicateFeatures: return "duplicate_features";
    case ErrorCode::NotNormal: return "not_normal";
    case ErrorCode::BadRange: return "bad_range";
    case ErrorCode::InfeasibleShape: return "infeasible_shape";
    case ErrorCode::ParseError: return "parse_error";
  }
  return "unknown";
}

}  // namespace rankfuzz
