// Copyright (c) 2026 The framelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * @file
 * @brief Shared vocabulary: scalar/matrix aliases, the error type and the
 * numerical tolerances every module reads.
 */

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#ifndef FRAMELAB_VERSION
#define FRAMELAB_VERSION "0.1.0"
#endif

namespace framelab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr std::string_view version = FRAMELAB_VERSION;

enum class ErrorKind {
  invalid_argument,
  parse_error,
  non_square,
  non_hermitian,
  not_positive_definite,
  numerical_failure,
  dimension_mismatch,
  not_a_frame,
  not_riesz_basis,
  bad_exponent,
  insufficient_data,
  ladder_too_short,
  precondition_evidence,
  perturbation_violation,
  not_separated,
  quadrature_failure,
  generator_unsuitable,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::non_square: return "NonSquare";
    case ErrorKind::non_hermitian: return "NonHermitian";
    case ErrorKind::not_positive_definite: return "NotPositiveDefinite";
    case ErrorKind::numerical_failure: return "NumericalFailure";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::not_a_frame: return "NotAFrame";
    case ErrorKind::not_riesz_basis: return "NotRieszBasis";
    case ErrorKind::bad_exponent: return "BadExponent";
    case ErrorKind::insufficient_data: return "InsufficientData";
    case ErrorKind::ladder_too_short: return "LadderTooShort";
    case ErrorKind::precondition_evidence: return "PreconditionEvidence";
    case ErrorKind::perturbation_violation: return "PerturbationViolation";
    case ErrorKind::not_separated: return "NotSeparated";
    case ErrorKind::quadrature_failure: return "QuadratureFailure";
    case ErrorKind::generator_unsuitable: return "GeneratorUnsuitable";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical thresholds. Defaults are sized for double precision on
/// matrices up to a few thousand rows.
struct Tolerances {
  double eig = 1e-10;       ///< relative eigen-reconstruction tolerance
  double herm = 1e-12;      ///< Hermitian asymmetry, absolute for O(1) entries
  double pd = 1e-12;        ///< smallest admissible eigenvalue for fractional powers
  double sing = 1e-12;      ///< singular if sigma_min <= sing * sigma_max
  double calc = 1e-8;       ///< functional-calculus / reconstruction tolerance
  double frame = 1e-10;     ///< lower bounds at or below this are numerically zero
  double growth = 0.05;     ///< ladder ratio allowed for a "localized" verdict
  double ladder_decay = 4;  ///< allowed first-to-last decay of uniform lower bounds
  double quad = 1e-10;      ///< quadrature tolerance
  double sep_min = 1e-6;    ///< minimal spacing of sampling points
};

/// Lp index of the three operator norms the library works with.
enum class NormIndex { one, two, inf };

inline std::string_view to_string(NormIndex p) {
  switch (p) {
    case NormIndex::one: return "1";
    case NormIndex::two: return "2";
    case NormIndex::inf: return "inf";
  }
  return "?";
}

inline NormIndex parse_norm_index(std::string_view text) {
  if (text == "1") return NormIndex::one;
  if (text == "2") return NormIndex::two;
  if (text == "inf" || text == "infinity") return NormIndex::inf;
  throw Error(ErrorKind::invalid_argument, "unknown norm index '" + std::string(text) + "'");
}

inline void require_valid(const ComplexMatrix& a, std::string_view what) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw Error(ErrorKind::invalid_argument, std::string(what) + " must have at least one row and column");
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::invalid_argument, std::string(what) + " has non-finite entries");
  }
}

}  // namespace framelab
