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
 * @brief Reproducible family constructors: the 1/k counterexample, banded
 * perturbations of the identity, and seeded random families.
 *
 * Banded perturbations are banded Toeplitz: entry (i, j) is drawn from a hash
 * of (seed, j - i), so the matrix at size N is the leading block of the matrix
 * at any larger size and interior rows repeat.
 */

#include "framelab/localization.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace framelab::fixtures {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform in [-1, 1) from (seed, i, j).
inline double hashed_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ i) ^ (j * 0x632be59bd9b4e019ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}
}  // namespace detail

/// E with entries supported on |i - j| <= bandwidth and magnitude at most
/// norm / (2 bandwidth + 1), so every row and column sum, and hence ||E||_2, is
/// at most `norm`. The scale does not depend on n: E at size n is the leading
/// block of E at any larger size.
inline ComplexMatrix banded_perturbation(std::size_t n, double norm, std::size_t bandwidth, std::uint64_t seed,
                                         bool complex_entries = false) {
  const auto size = static_cast<Eigen::Index>(n);
  const double scale = norm / static_cast<double>(2 * bandwidth + 1) / (complex_entries ? std::sqrt(2.0) : 1.0);
  ComplexMatrix e = ComplexMatrix::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      if (static_cast<std::size_t>(std::abs(i - j)) > bandwidth) continue;
      const auto offset = static_cast<std::uint64_t>(static_cast<std::int64_t>(j - i));
      const double re = detail::hashed_uniform(seed, offset, 0);
      const double im = complex_entries ? detail::hashed_uniform(seed ^ 0x5bd1e995ULL, offset, 0) : 0.0;
      e(i, j) = scale * Complex(re, im);
    }
  }
  return e;
}

/// Coefficients I + E with ||E||_2 <= epsilon < 1: a localized Riesz basis.
inline VectorFamily perturbed_onb(std::size_t n, double epsilon, std::size_t bandwidth, std::uint64_t seed,
                                  bool complex_entries = false) {
  const auto size = static_cast<Eigen::Index>(n);
  ComplexMatrix coeffs = ComplexMatrix::Identity(size, size);
  coeffs += banded_perturbation(n, epsilon, bandwidth, seed, complex_entries);
  return VectorFamily(coeffs, "perturbed-onb");
}

/// psi_k = (1/k) dual(phi)_k, k = 1..N: mutually localized with phi, not a frame
/// uniformly in N.
inline VectorFamily inverse_index_family(const VectorFamily& phi, const Tolerances& tol = {}) {
  const VectorFamily dual = canonical_dual(phi, tol);
  ComplexMatrix coeffs = dual.coeffs();
  for (Eigen::Index k = 0; k < coeffs.cols(); ++k) coeffs.col(k) /= static_cast<double>(k + 1);
  return VectorFamily(coeffs, "inverse-index");
}

/// The inverse-index counterexample over the standard basis of C^n.
inline FamilyPair inverse_index_pair(std::size_t n) {
  const VectorFamily phi = VectorFamily::standard_basis(n, "onb");
  return {inverse_index_family(phi), phi};
}

inline FamilyPair onb_pair(std::size_t n) {
  const VectorFamily phi = VectorFamily::standard_basis(n, "onb");
  return {phi, phi};
}

/// Entries i.i.d. standard complex Gaussian (or real Gaussian).
inline ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                                     bool complex_entries = true) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double re = normal(rng);
      const double im = complex_entries ? normal(rng) : 0.0;
      a(i, j) = Complex(re, im);
    }
  }
  return a;
}

/// I + E with dense Gaussian E scaled to ||E||_2 = epsilon.
inline VectorFamily random_riesz_basis(std::size_t n, double epsilon, std::mt19937_64& rng,
                                       bool complex_entries = true) {
  ComplexMatrix e = gaussian_matrix(n, n, rng, complex_entries);
  e *= epsilon / pnorm_operator(e, NormIndex::two);
  const auto size = static_cast<Eigen::Index>(n);
  return VectorFamily(ComplexMatrix::Identity(size, size) + e, "random-riesz");
}

/// Square family of rank `rank` < n: product of Gaussian n x rank and rank x n factors.
inline VectorFamily rank_deficient_family(std::size_t n, std::size_t rank, std::mt19937_64& rng,
                                          bool complex_entries = true) {
  const ComplexMatrix left = gaussian_matrix(n, rank, rng, complex_entries);
  const ComplexMatrix right = gaussian_matrix(rank, n, rng, complex_entries);
  return VectorFamily((left * right) / std::sqrt(static_cast<double>(n)), "rank-deficient");
}

}  // namespace framelab::fixtures
