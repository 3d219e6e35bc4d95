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
 * @brief Dense complex kernels: Hermitian eigendecomposition, fractional
 * powers of positive definite matrices, operator p-norms for p in {1, 2, inf},
 * condition numbers and lower gains.
 *
 * Decompositions are delegated to Eigen. Everything here is a pure function.
 */

#include "framelab/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace framelab {

struct SpectralDecomposition {
  RealVector eigenvalues;     ///< ascending
  ComplexMatrix eigenvectors; ///< unitary, columns match eigenvalues
};

/**
 * @brief Eigendecomposition of a Hermitian matrix.
 *
 * The input is symmetrized as (A + A^H)/2 after the asymmetry check. The
 * asymmetry threshold is `tol.herm` scaled by max(1, max|A_ij|).
 */
inline SpectralDecomposition hermitian_eig(const ComplexMatrix& a, const Tolerances& tol = {}) {
  require_valid(a, "hermitian_eig input");
  if (a.rows() != a.cols()) throw Error(ErrorKind::non_square, "hermitian_eig needs a square matrix");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol.herm * scale) {
    throw Error(ErrorKind::non_hermitian, "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_failure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// V diag(lambda^alpha) V^H for Hermitian positive definite `a`.
inline ComplexMatrix matrix_power(const ComplexMatrix& a, double alpha, const Tolerances& tol = {}) {
  const auto eig = hermitian_eig(a, tol);
  if (eig.eigenvalues(0) <= tol.pd) {
    throw Error(ErrorKind::not_positive_definite,
                "smallest eigenvalue " + std::to_string(eig.eigenvalues(0)) + " is not above tol_pd");
  }
  RealVector powered(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < powered.size(); ++i) powered(i) = std::pow(eig.eigenvalues(i), alpha);
  return eig.eigenvectors * powered.asDiagonal() * eig.eigenvectors.adjoint();
}

/// Singular values, descending.
inline RealVector singular_values(const ComplexMatrix& a) {
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  if (svd.info() != Eigen::Success) throw Error(ErrorKind::numerical_failure, "SVD did not converge");
  return svd.singularValues();
}

namespace detail {

// Column sums run over rows in index order and row sums over columns in index
// order, so ||A||_1 and ||A^H||_inf perform identical floating-point work.
inline double max_column_sum(const ComplexMatrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) sum += std::abs(a(i, j));
    best = std::max(best, sum);
  }
  return best;
}

inline double max_row_sum(const ComplexMatrix& a) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) sum += std::abs(a(i, j));
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace detail

/// Vector p-norm.
inline double vector_norm(const ComplexVector& v, NormIndex p) {
  switch (p) {
    case NormIndex::one: {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::abs(v(i));
      return sum;
    }
    case NormIndex::two: return v.norm();
    case NormIndex::inf: return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
  }
  return 0.0;
}

/// Induced operator norm on l^p: max column sum (p=1), largest singular
/// value (p=2), max row sum (p=inf).
inline double pnorm_operator(const ComplexMatrix& a, NormIndex p) {
  require_valid(a, "pnorm_operator input");
  switch (p) {
    case NormIndex::one: return detail::max_column_sum(a);
    case NormIndex::two: return singular_values(a)(0);
    case NormIndex::inf: return detail::max_row_sum(a);
  }
  return 0.0;
}

/// ||A||_p ||A^{-1}||_p, or std::nullopt when sigma_min <= tol.sing * sigma_max.
inline std::optional<double> condition_p(const ComplexMatrix& a, NormIndex p, const Tolerances& tol = {}) {
  require_valid(a, "condition_p input");
  if (a.rows() != a.cols()) throw Error(ErrorKind::non_square, "condition_p needs a square matrix");
  const RealVector sv = singular_values(a);
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > tol.sing * smax)) return std::nullopt;
  if (p == NormIndex::two) return smax / smin;
  const ComplexMatrix inverse = a.fullPivLu().inverse();
  return pnorm_operator(a, p) * pnorm_operator(inverse, p);
}

/// Two-sided bound on inf_{||x||_p = 1} ||A x||_p.
struct GainBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;  ///< lower == upper is the true value
};

/**
 * @brief Smallest gain of `a` on l^p.
 *
 * p = 2 is exact (sigma_min, zero for wide matrices). For p in {1, inf} the
 * certified floor is sigma_min / sqrt(rows * cols), raised to 1/||A^+||_p when
 * A has full column rank; the ceiling comes from probing coordinate vectors and
 * the trailing right singular vector. A square nonsingular matrix has the
 * exact value 1/||A^{-1}||_p and both bounds collapse to it.
 */
inline GainBracket smallest_gain(const ComplexMatrix& a, NormIndex p, const Tolerances& tol = {}) {
  require_valid(a, "smallest_gain input");
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (rows < cols) return {0.0, 0.0, true};

  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (p == NormIndex::two) return {smin, smin, true};

  const bool full_rank = smin > tol.sing * smax;
  if (full_rank && rows == cols) {
    const double exact = 1.0 / pnorm_operator(a.fullPivLu().inverse(), p);
    return {exact, exact, true};
  }

  double lower = smin / std::sqrt(static_cast<double>(rows) * static_cast<double>(cols));
  if (full_rank) {
    const RealVector inv_sv = sv.cwiseInverse();
    const ComplexMatrix pinv = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
    lower = std::max(lower, 1.0 / pnorm_operator(pinv, p));
  }

  double upper = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < cols; ++j) upper = std::min(upper, vector_norm(a.col(j), p));
  const ComplexVector v = svd.matrixV().col(cols - 1);
  const double vnorm = vector_norm(v, p);
  if (vnorm > 0) upper = std::min(upper, vector_norm(a * v, p) / vnorm);
  upper = std::max(upper, lower);
  return {lower, upper, false};
}

}  // namespace framelab
