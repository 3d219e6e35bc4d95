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
 * @brief The R-dual family omega_k = sum_l <psi_l, phi_k> S_phi^{-1/2} phi_l
 * of psi with respect to a Riesz basis phi, and the checks tied to it.
 *
 * Both orthonormal bases of the general R-dual construction are fixed by phi:
 * gamma_l = S_phi^{-1/2} phi_l. No other choice is exposed.
 */

#include "framelab/localization.hpp"

namespace framelab {

inline void require_riesz_basis(const VectorFamily& phi, const Tolerances& tol) {
  if (!phi.is_square()) throw Error(ErrorKind::not_riesz_basis, "reference family must be square");
  const auto bounds = riesz_bounds(phi, tol);
  if (!bounds.positive(tol)) {
    throw Error(ErrorKind::not_riesz_basis,
                "lower Riesz bound " + std::to_string(bounds.lower) + " of the reference is numerically zero");
  }
}

/// Omega = Gamma * transpose(G_{phi,psi}), Gamma = coefficients of S_phi^{-1/2} phi.
inline VectorFamily rdual(const VectorFamily& psi, const VectorFamily& phi, const Tolerances& tol = {}) {
  detail::require_same_ambient(psi, phi);
  if (psi.member_count() != phi.member_count()) {
    throw Error(ErrorKind::dimension_mismatch, "psi and phi must share the index set");
  }
  require_riesz_basis(phi, tol);
  const VectorFamily gamma = power_transform(phi, -0.5, tol);
  const ComplexMatrix brackets = cross_gram(phi, psi);  // (k, l) = <psi_l, phi_k>
  return VectorFamily(gamma.coeffs() * brackets.transpose(), "omega");
}

inline ComplexMatrix rdual_gram(const VectorFamily& psi, const VectorFamily& phi, const Tolerances& tol = {}) {
  return gram(rdual(psi, phi, tol));
}

struct DualityReport {
  bool frame_verdict = false;
  bool riesz_verdict = false;
  bool agree = false;
  bool borderline = false;  ///< a lower bound sits in [tol_frame, 10 tol_frame]
  double frame_lower = 0.0;
  double riesz_lower = 0.0;
};

/// psi is a frame iff its R-dual is a Riesz sequence. Disagreement is
/// reported, not raised.
inline DualityReport verify_rdual_duality(const VectorFamily& psi, const VectorFamily& phi,
                                          const Tolerances& tol = {}) {
  DualityReport report;
  report.frame_lower = frame_bounds(psi, tol).lower;
  report.riesz_lower = riesz_bounds(rdual(psi, phi, tol), tol).lower;
  report.frame_verdict = report.frame_lower > tol.frame;
  report.riesz_verdict = report.riesz_lower > tol.frame;
  report.agree = report.frame_verdict == report.riesz_verdict;
  const auto in_band = [&](double v) { return v >= tol.frame && v <= 10.0 * tol.frame; };
  report.borderline = in_band(report.frame_lower) || in_band(report.riesz_lower);
  return report;
}

/**
 * @brief Cross-Gram factorizations of omega through fractional powers of phi.
 *
 * G_{omega,phi} = G_{psi,phi}^T G_{S^{-1/4}phi} and
 * G_{omega,dual} = G_{psi,phi}^T G_{S^{-3/4}phi}. Transposition (not adjoint)
 * is what the anti-linear dependence of G_{omega,.} on psi requires; for real
 * families the two coincide.
 */
struct FactorizationResidual {
  double omega_phi = 0.0;   ///< ||G_{omega,phi} - G_{psi,phi}^T G_{S^{-1/4}phi}||_2
  double omega_dual = 0.0;  ///< ||G_{omega,dual} - G_{psi,phi}^T G_{S^{-3/4}phi}||_2
};

inline FactorizationResidual rdual_factorization_residual(const VectorFamily& psi, const VectorFamily& phi,
                                                          const Tolerances& tol = {}) {
  const VectorFamily omega = rdual(psi, phi, tol);
  const VectorFamily dual = canonical_dual(phi, tol);
  const ComplexMatrix g_psi_phi = cross_gram(psi, phi);
  const ComplexMatrix quarter = gram(power_transform(phi, -0.25, tol));
  const ComplexMatrix three_quarter = gram(power_transform(phi, -0.75, tol));
  FactorizationResidual r;
  r.omega_phi = pnorm_operator(cross_gram(omega, phi) - g_psi_phi.transpose() * quarter, NormIndex::two);
  r.omega_dual = pnorm_operator(cross_gram(omega, dual) - g_psi_phi.transpose() * three_quarter, NormIndex::two);
  return r;
}

struct RDualLocalization {
  DecayReport omega_phi;    ///< G_{omega,phi}
  DecayReport omega_dual;   ///< G_{omega,dual(phi)}
  DecayReport omega_omega;  ///< G_omega
  std::vector<std::pair<std::size_t, double>> factorization_residuals;  ///< worst of the two per size
  bool factorization_ok = true;
};

/// Localization of omega against phi, dual(phi) and itself along the ladder.
inline RDualLocalization verify_rdual_localization(const FamilyGenerator& families,
                                                   const LocalizationProfile& profile,
                                                   const TruncationLadder& ladder, const Tolerances& tol = {}) {
  RDualLocalization out;
  std::vector<ComplexMatrix> g_omega_phi, g_omega_dual, g_omega;
  for (const std::size_t n : ladder) {
    const FamilyPair pair = families(n);
    const VectorFamily omega = rdual(pair.psi, pair.phi, tol);
    const VectorFamily dual = canonical_dual(pair.phi, tol);
    g_omega_phi.push_back(cross_gram(omega, pair.phi));
    g_omega_dual.push_back(cross_gram(omega, dual));
    g_omega.push_back(gram(omega));
    const auto residual = rdual_factorization_residual(pair.psi, pair.phi, tol);
    const double worst = std::max(residual.omega_phi, residual.omega_dual);
    const double scale = std::max(1.0, pnorm_operator(g_omega_phi.back(), NormIndex::two));
    out.factorization_residuals.emplace_back(n, worst);
    if (worst > tol.calc * scale) out.factorization_ok = false;
  }
  const auto replay = [&](const std::vector<ComplexMatrix>& mats) {
    std::size_t i = 0;
    return localization_ladder([&](std::size_t) { return mats[i++]; }, profile, ladder, tol);
  };
  out.omega_phi = replay(g_omega_phi);
  out.omega_dual = replay(g_omega_dual);
  out.omega_omega = replay(g_omega);
  return out;
}

}  // namespace framelab
