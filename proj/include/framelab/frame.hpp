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
 * @brief Finite vector families and their frame operators.
 *
 * A family lives in C^N with the standard orthonormal reference basis; member
 * k is column k of the coefficient matrix. The inner product is
 * <f, g> = sum_i f_i conj(g_i), linear in the first slot.
 *
 * Truncation model:
 *  - the countable index set is {0, ..., M-1}; Riesz bases are square (M = N).
 *  - the co-orbit space H^p(phi) is represented by its coordinate image
 *    a = C_{dual(phi)} f with the plain l^p norm. In finite dimension every
 *    completion collapses to these coordinates, so the pointwise-limit
 *    construction of H^inf is not modelled.
 *  - the dual coordinates b = C_phi g give an equivalent H^inf norm and pair
 *    with the H^1 coordinates through the plain l^1 x l^inf pairing.
 */

#include "framelab/matrix_kernel.hpp"

#include <string>
#include <utility>
#include <vector>

namespace framelab {

class VectorFamily {
 public:
  VectorFamily() : coeffs_(ComplexMatrix::Identity(1, 1)) {}

  explicit VectorFamily(ComplexMatrix coeffs, std::string label = {})
      : coeffs_(std::move(coeffs)), label_(std::move(label)) {
    require_valid(coeffs_, "VectorFamily coefficients");
  }

  /// The standard orthonormal basis of C^n.
  static VectorFamily standard_basis(std::size_t n, std::string label = "onb") {
    const auto size = static_cast<Eigen::Index>(n);
    return VectorFamily(ComplexMatrix::Identity(size, size), std::move(label));
  }

  [[nodiscard]] std::size_t ambient_dim() const { return static_cast<std::size_t>(coeffs_.rows()); }
  [[nodiscard]] std::size_t member_count() const { return static_cast<std::size_t>(coeffs_.cols()); }
  [[nodiscard]] bool is_square() const { return coeffs_.rows() == coeffs_.cols(); }
  [[nodiscard]] const ComplexMatrix& coeffs() const { return coeffs_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] ComplexVector member(std::size_t k) const { return coeffs_.col(static_cast<Eigen::Index>(k)); }

  [[nodiscard]] VectorFamily relabeled(std::string label) const { return VectorFamily(coeffs_, std::move(label)); }

 private:
  ComplexMatrix coeffs_;
  std::string label_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;

  /// Positive verdict only when the lower bound clears tol_frame.
  [[nodiscard]] bool positive(const Tolerances& tol = {}) const { return lower > tol.frame; }
};

/// Increasing truncation sizes N_1 < ... < N_m, m >= 2.
class TruncationLadder {
 public:
  explicit TruncationLadder(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.size() < 2) throw Error(ErrorKind::ladder_too_short, "a truncation ladder needs at least two sizes");
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (sizes_[i] == 0) throw Error(ErrorKind::invalid_argument, "ladder sizes must be positive");
      if (i > 0 && sizes_[i] <= sizes_[i - 1]) {
        throw Error(ErrorKind::invalid_argument, "ladder sizes must be strictly increasing");
      }
    }
  }

  [[nodiscard]] const std::vector<std::size_t>& sizes() const { return sizes_; }
  [[nodiscard]] std::size_t front() const { return sizes_.front(); }
  [[nodiscard]] std::size_t back() const { return sizes_.back(); }
  [[nodiscard]] auto begin() const { return sizes_.begin(); }
  [[nodiscard]] auto end() const { return sizes_.end(); }

 private:
  std::vector<std::size_t> sizes_;
};

namespace detail {
inline void require_same_ambient(const VectorFamily& a, const VectorFamily& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::dimension_mismatch, "families live in different ambient dimensions (" +
                                                   std::to_string(a.ambient_dim()) + " vs " +
                                                   std::to_string(b.ambient_dim()) + ")");
  }
}
}  // namespace detail

/// G_{psi,phi} with entry (k, l) = <phi_l, psi_k>, i.e. Psi^H Phi.
inline ComplexMatrix cross_gram(const VectorFamily& psi, const VectorFamily& phi) {
  detail::require_same_ambient(psi, phi);
  return psi.coeffs().adjoint() * phi.coeffs();
}

inline ComplexMatrix gram(const VectorFamily& psi) { return cross_gram(psi, psi); }

/// C_psi f = (<f, psi_k>)_k.
inline ComplexVector analysis(const VectorFamily& psi, const ComplexVector& f) {
  if (static_cast<std::size_t>(f.size()) != psi.ambient_dim()) {
    throw Error(ErrorKind::dimension_mismatch, "analysis input length differs from ambient dimension");
  }
  return psi.coeffs().adjoint() * f;
}

/// D_psi c = sum_k c_k psi_k.
inline ComplexVector synthesis(const VectorFamily& psi, const ComplexVector& c) {
  if (static_cast<std::size_t>(c.size()) != psi.member_count()) {
    throw Error(ErrorKind::dimension_mismatch, "synthesis input length differs from member count");
  }
  return psi.coeffs() * c;
}

/// S_psi = D_psi C_psi.
inline ComplexMatrix frame_operator(const VectorFamily& psi) { return psi.coeffs() * psi.coeffs().adjoint(); }

namespace detail {
inline FrameBounds extremal_bounds(const ComplexMatrix& hermitian, const Tolerances& tol) {
  const auto eig = hermitian_eig(hermitian, tol);
  const double lo = std::max(0.0, eig.eigenvalues(0));
  const double hi = std::max(lo, eig.eigenvalues(eig.eigenvalues.size() - 1));
  return {lo, hi};
}
}  // namespace detail

/// Extremal eigenvalues of the frame operator.
inline FrameBounds frame_bounds(const VectorFamily& psi, const Tolerances& tol = {}) {
  return detail::extremal_bounds(frame_operator(psi), tol);
}

/// Extremal eigenvalues of the Gram matrix (synthesis bounds on l^2).
inline FrameBounds riesz_bounds(const VectorFamily& psi, const Tolerances& tol = {}) {
  return detail::extremal_bounds(gram(psi), tol);
}

inline void require_frame(const VectorFamily& psi, const Tolerances& tol, std::string_view who) {
  const auto bounds = frame_bounds(psi, tol);
  if (!bounds.positive(tol)) {
    throw Error(ErrorKind::not_a_frame, std::string(who) + ": lower frame bound " + std::to_string(bounds.lower) +
                                            " is numerically zero");
  }
}

/// dual_k = S_psi^{-1} psi_k.
inline VectorFamily canonical_dual(const VectorFamily& psi, const Tolerances& tol = {}) {
  require_frame(psi, tol, "canonical_dual");
  const ComplexMatrix s = frame_operator(psi);
  const ComplexMatrix dual = s.ldlt().solve(psi.coeffs());
  return VectorFamily(dual, psi.label().empty() ? std::string{} : psi.label() + "~");
}

/// (S_phi^alpha phi_k)_k.
inline VectorFamily power_transform(const VectorFamily& phi, double alpha, const Tolerances& tol = {}) {
  require_frame(phi, tol, "power_transform");
  return VectorFamily(matrix_power(frame_operator(phi), alpha, tol) * phi.coeffs(), phi.label());
}

/// ||C_{dual(phi)} f||_p.
inline double coorbit_norm(const VectorFamily& phi, const ComplexVector& f, NormIndex p, const Tolerances& tol = {}) {
  return vector_norm(analysis(canonical_dual(phi, tol), f), p);
}

namespace detail {
inline void require_square_reference(const VectorFamily& phi, const ComplexMatrix& t) {
  if (!phi.is_square()) throw Error(ErrorKind::non_square, "co-orbit coordinates need a square reference family");
  if (t.rows() != t.cols() || static_cast<std::size_t>(t.rows()) != phi.ambient_dim()) {
    throw Error(ErrorKind::non_square, "operator must be N x N with N the ambient dimension");
  }
}
}  // namespace detail

/// Matrix of T in H^p(phi)-coordinates: C_{dual(phi)} T D_phi. For a square
/// frame this is dual^H T (dual^H)^{-1}, since dual^H = Phi^{-1}.
inline ComplexMatrix coorbit_matrix(const VectorFamily& phi, const ComplexMatrix& t, const Tolerances& tol = {}) {
  detail::require_square_reference(phi, t);
  const VectorFamily dual = canonical_dual(phi, tol);
  return dual.coeffs().adjoint() * t * phi.coeffs();
}

/// Matrix of T in the dual coordinates b = C_phi g: C_phi T D_{dual(phi)}.
/// Equals coorbit_matrix(phi, T^H)^H.
inline ComplexMatrix coorbit_dual_matrix(const VectorFamily& phi, const ComplexMatrix& t, const Tolerances& tol = {}) {
  detail::require_square_reference(phi, t);
  const VectorFamily dual = canonical_dual(phi, tol);
  return phi.coeffs().adjoint() * t * dual.coeffs();
}

/// condition_p of T acting on H^p(phi)-coordinates.
inline std::optional<double> coorbit_condition(const VectorFamily& phi, const ComplexMatrix& t, NormIndex p,
                                               const Tolerances& tol = {}) {
  return condition_p(coorbit_matrix(phi, t, tol), p, tol);
}

}  // namespace framelab
