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

#include "framelab/rdual.hpp"
#include "framelab/shift_invariant.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

using namespace framelab;
using framelab::testing::max_abs;

namespace {

// Truncated-power form of the centered B-spline:
// beta_n(x) = 1/n! sum_k (-1)^k C(n+1, k) (x + (n+1)/2 - k)_+^n.
double bspline_truncated_powers(int n, double x) {
  double sum = 0.0;
  double binom = 1.0;
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  for (int k = 0; k <= n + 1; ++k) {
    const double t = x + 0.5 * (n + 1) - k;
    const double power = n == 0 ? (t >= 0.0 ? 1.0 : 0.0) : (t > 0.0 ? std::pow(t, n) : 0.0);
    sum += (k % 2 == 0 ? 1.0 : -1.0) * binom * power;
    binom = binom * (n + 1 - k) / (k + 1);
  }
  return sum / factorial;
}

// beta_n = beta_{n-1} * box, evaluated by nested Gauss quadrature on unit pieces.
double bspline_by_convolution(int n, double x) {
  if (n == 0) return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
  const auto inner = [n](double t) { return bspline_by_convolution(n - 1, t); };
  // Breakpoints of beta_{n-1} sit on a half-integer lattice; split there.
  const double lo = x - 0.5;
  const double hi = x + 0.5;
  const double offset = (n - 1) % 2 == 0 ? 0.5 : 0.0;
  double cut = std::floor(lo - offset) + 1.0 + offset;
  double sum = 0.0;
  double a = lo;
  while (a < hi) {
    const double b = std::min(hi, cut);
    if (b > a) sum += boost::math::quadrature::gauss<double, 10>::integrate(inner, a, b);
    a = b;
    cut += 1.0;
  }
  return sum;
}

ComplexMatrix naive_autocorrelation(const Generator& g, const SamplingSet& x, std::size_t n) {
  const long first = window_first(n);
  const auto size = static_cast<Eigen::Index>(n);
  ComplexMatrix out(size, size);
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index m = 0; m < size; ++m) {
      Complex sum = 0.0;
      for (Eigen::Index l = 0; l < size; ++l) {
        const double xl = x.point(first + l);
        sum += std::conj(Complex(g(xl - static_cast<double>(first + k)))) * Complex(g(xl - static_cast<double>(first + m)));
      }
      out(k, m) = sum;
    }
  }
  return out;
}

Generator tabulated_hat(double step) {
  std::vector<double> samples;
  const int count = static_cast<int>(std::lround(2.0 / step)) + 1;
  for (int i = 0; i < count; ++i) samples.push_back(1.0 - std::abs(-1.0 + i * step));
  return Generator::tabulated(-1.0, step, samples, 2.0);
}

}  // namespace

TEST(GeneratorEval, BoxIsHalfOpenIndicator) {
  const Generator box = Generator::bspline(0);
  EXPECT_EQ(box(0.0), 1.0);
  EXPECT_EQ(box(-0.5), 1.0);
  EXPECT_EQ(box(0.5), 0.0);
  EXPECT_EQ(box(0.75), 0.0);
  EXPECT_EQ(box(-0.75), 0.0);
  EXPECT_FALSE(box.continuous());
}

TEST(GeneratorEval, CubicReferenceValues) {
  const Generator cubic = Generator::bspline(3);
  EXPECT_NEAR(cubic(0.0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(cubic(2.0), 0.0);
  EXPECT_EQ(cubic(-2.0), 0.0);
  EXPECT_NEAR(cubic(0.5), 23.0 / 48.0, 1e-15);
  EXPECT_NEAR(cubic(1.0), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(cubic(1.5), 1.0 / 48.0, 1e-15);
  EXPECT_NEAR(generator_eval(cubic, 0.5).real(), 23.0 / 48.0, 1e-15);
  EXPECT_EQ(generator_eval(cubic, 0.5).imag(), 0.0);
}

// The truncated-power sum cancels badly beyond degree 7, so the oracle stops there.
TEST(GeneratorEval, CoxDeBoorMatchesTruncatedPowers) {
  for (int n = 0; n <= 7; ++n) {
    const Generator g = Generator::bspline(n);
    for (int i = -60; i <= 60; ++i) {
      const double x = i * 0.0937;
      EXPECT_NEAR(g(x), bspline_truncated_powers(n, x), 1e-12) << "degree " << n << " x " << x;
    }
  }
}

TEST(GeneratorEval, CubicMatchesBoxConvolution) {
  const Generator cubic = Generator::bspline(3);
  for (const double x : {0.0, 0.3, 0.5, 1.0, 1.25, 1.9, -0.7}) {
    EXPECT_NEAR(cubic(x), bspline_by_convolution(3, x), 1e-12) << x;
  }
}

TEST(GeneratorEval, PartitionOfUnity) {
  for (int n = 0; n <= 7; ++n) {
    const Generator g = Generator::bspline(n);
    for (const double x : {0.0, 0.1234, 0.5, 0.77}) {
      double sum = 0.0;
      for (int k = -10; k <= 10; ++k) sum += g(x - k);
      EXPECT_NEAR(sum, 1.0, 1e-13);
    }
  }
}

TEST(GeneratorEval, TabulatedInterpolatesLinearlyAndVanishesOutside) {
  const Generator hat = tabulated_hat(0.25);
  EXPECT_NEAR(hat(0.0), 1.0, 1e-15);
  EXPECT_NEAR(hat(0.1), 0.9, 1e-15);
  EXPECT_EQ(hat(1.5), 0.0);
  EXPECT_EQ(hat(-1.01), 0.0);
  EXPECT_TRUE(hat.continuous());
  EXPECT_DOUBLE_EQ(hat.support_radius(), 1.0);
  EXPECT_FRAMELAB_ERROR(Generator::tabulated(0.0, 0.0, {1.0, 2.0}, 2.0), ErrorKind::invalid_argument);
  EXPECT_FRAMELAB_ERROR(Generator::bspline(16), ErrorKind::invalid_argument);
}

TEST(SamplingMatrix, BoxWithoutPerturbationIsIdentity) {
  const auto p = sampling_matrix(Generator::bspline(0), SamplingSet::constant(9, 0.0), 9);
  EXPECT_EQ(max_abs(p - ComplexMatrix::Identity(9, 9)), 0.0);
}

TEST(SamplingMatrix, CubicStencils) {
  const Generator cubic = Generator::bspline(3);
  const auto p0 = sampling_matrix(cubic, SamplingSet::constant(12, 0.0), 12);
  for (Eigen::Index l = 2; l < 10; ++l) {
    EXPECT_NEAR(p0(l, l).real(), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(p0(l, l - 1).real(), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(p0(l, l + 1).real(), 1.0 / 6.0, 1e-15);
    EXPECT_EQ(p0(l, l + 2).real(), 0.0);
  }
  EXPECT_LE(max_abs(p0 - p0.transpose()), 0.0);
  // x_l = l + 1/2: row l carries (1/48, 23/48, 23/48, 1/48) on columns l-1 .. l+2.
  const auto ph = sampling_matrix(cubic, SamplingSet::constant(12, 0.5), 12);
  for (Eigen::Index l = 2; l < 9; ++l) {
    EXPECT_NEAR(ph(l, l - 1).real(), 1.0 / 48.0, 1e-15);
    EXPECT_NEAR(ph(l, l).real(), 23.0 / 48.0, 1e-15);
    EXPECT_NEAR(ph(l, l + 1).real(), 23.0 / 48.0, 1e-15);
    EXPECT_NEAR(ph(l, l + 2).real(), 1.0 / 48.0, 1e-15);
    EXPECT_EQ(ph(l, l - 2).real(), 0.0);
  }
}

TEST(SamplingMatrix, ConstantShiftGivesToeplitzInterior) {
  const Generator g = Generator::bspline(5);
  const auto p = sampling_matrix(g, SamplingSet::constant(20, 0.3), 20);
  const auto gw = autocorrelation_gram(g, SamplingSet::constant(20, 0.3), 20);
  const Eigen::Index trim = 4;
  for (Eigen::Index i = trim + 1; i < 20 - trim; ++i) {
    for (Eigen::Index j = trim + 1; j < 20 - trim; ++j) {
      EXPECT_NEAR(std::abs(p(i, j) - p(i - 1, j - 1)), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(gw(i, j) - gw(i - 1, j - 1)), 0.0, 1e-15);
    }
  }
}

TEST(SamplingSet, PerturbationAndSeparationChecks) {
  const Generator cubic = Generator::bspline(3);
  EXPECT_FRAMELAB_ERROR(sampling_matrix(cubic, SamplingSet(-2, {0.0, 0.6, 0.0, 0.0}, 0.5), 4),
                        ErrorKind::perturbation_violation);
  EXPECT_FRAMELAB_ERROR(sampling_matrix(cubic, SamplingSet(-2, {0.0, 0.5, -0.5, 0.0}, 0.5), 4),
                        ErrorKind::not_separated);
  EXPECT_FRAMELAB_ERROR(sampling_matrix(cubic, SamplingSet::constant(4, 0.0), 6), ErrorKind::invalid_argument);
  EXPECT_FRAMELAB_ERROR(SamplingSet(0, {0.0}, -1.0), ErrorKind::invalid_argument);
}

TEST(SamplingSet, WindowsAreNested) {
  const SamplingSet x = SamplingSet::seeded_uniform(64, 0.3, 5);
  EXPECT_TRUE(x.covers(window_first(16), 16));
  EXPECT_TRUE(x.covers(window_first(63), 63));
  const auto small = sampling_matrix(Generator::bspline(3), x, 16);
  const auto large = sampling_matrix(Generator::bspline(3), x, 32);
  EXPECT_EQ(max_abs(small - large.block(8, 8, 16, 16)), 0.0);
}

TEST(Autocorrelation, EqualsNaiveSumBitForBit) {
  const Generator g = Generator::bspline(3);
  const SamplingSet x = SamplingSet::seeded_uniform(24, 0.4, 7);
  const ComplexMatrix gw = autocorrelation_gram(g, x, 24);
  EXPECT_EQ(max_abs(gw - naive_autocorrelation(g, x, 24)), 0.0);
  const ComplexMatrix p = sampling_matrix(g, x, 24);
  EXPECT_LE(max_abs(gw - p.adjoint() * p), 1e-15);
  EXPECT_GE(hermitian_eig(gw).eigenvalues(0), -1e-12);
}

TEST(Autocorrelation, BoxAndCubicStencils) {
  const ComplexMatrix box = autocorrelation_gram(Generator::bspline(0), SamplingSet::seeded_uniform(16, 0.45, 9), 16);
  EXPECT_LE(max_abs(box - ComplexMatrix::Identity(16, 16)), 0.0);
  const ComplexMatrix cubic = autocorrelation_gram(Generator::bspline(3), SamplingSet::constant(16, 0.0), 16);
  // (1/6, 2/3, 1/6) convolved with itself.
  const double row[] = {1.0 / 36.0, 2.0 / 9.0, 0.5, 2.0 / 9.0, 1.0 / 36.0};
  for (Eigen::Index i = 3; i < 13; ++i) {
    for (int d = -2; d <= 2; ++d) EXPECT_NEAR(cubic(i, i + d).real(), row[d + 2], 1e-15);
    EXPECT_EQ(cubic(i, i + 3).real(), 0.0);
  }
}

// With Phi = G_phi^{1/2} as coordinates of the shifts, point evaluation at x_l
// is the kernel psi_l with psi_l^H Phi = row l of P, i.e. Psi = Phi^{-H} P^H.
TEST(Autocorrelation, MatchesRDualGramOfKernelFamily) {
  const Generator g = Generator::bspline(3);
  const std::size_t n = 8;
  const SamplingSet x = SamplingSet::seeded_uniform(n, 0.2, 13);
  const ComplexMatrix gphi = shift_gram(g, n);
  const ComplexMatrix phi_coeffs = matrix_power(gphi, 0.5);
  const ComplexMatrix p = sampling_matrix(g, x, n);
  const ComplexMatrix psi_coeffs = phi_coeffs.adjoint().inverse() * p.adjoint();
  const VectorFamily phi(phi_coeffs);
  const VectorFamily psi(psi_coeffs);
  EXPECT_LE(max_abs(gram(phi) - gphi), 1e-13);
  EXPECT_LE(max_abs(rdual_gram(psi, phi) - autocorrelation_gram(g, x, n)), 1e-8);
}

TEST(ShiftGram, ClosedFormsForLowDegrees) {
  EXPECT_LE(max_abs(shift_gram(Generator::bspline(0), 6) - ComplexMatrix::Identity(6, 6)), 1e-15);
  const ComplexMatrix hat = shift_gram(Generator::bspline(1), 6);
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_NEAR(hat(i, i).real(), 2.0 / 3.0, 1e-15);
    if (i + 1 < 6) EXPECT_NEAR(hat(i, i + 1).real(), 1.0 / 6.0, 1e-15);
    if (i + 2 < 6) EXPECT_EQ(hat(i, i + 2).real(), 0.0);
  }
}

TEST(ShiftGram, AutocorrelationOfSplineIsSplineOfDoubleDegree) {
  // integral beta_n(u) beta_n(u - m) du = beta_{2n+1}(m).
  for (const int n : {2, 3, 5}) {
    const ComplexMatrix gphi = shift_gram(Generator::bspline(n), 10);
    for (Eigen::Index m = 0; m < 10; ++m) {
      EXPECT_NEAR(gphi(0, m).real(), bspline_truncated_powers(2 * n + 1, static_cast<double>(m)), 1e-14)
          << "degree " << n << " offset " << m;
    }
  }
}

TEST(ShiftGram, CubicLambdaMinApproachesSymbolMinimum) {
  // Symbol of beta_7 at integers: sum_m beta_7(m) cos(m pi).
  double symbol_min = 0.0;
  for (int m = -3; m <= 3; ++m) symbol_min += bspline_truncated_powers(7, m) * (m % 2 == 0 ? 1.0 : -1.0);
  const double lambda = hermitian_eig(shift_gram(Generator::bspline(3), 128)).eigenvalues(0);
  EXPECT_GT(lambda, symbol_min);
  EXPECT_LT(lambda, symbol_min * 1.01);
}

TEST(ShiftGram, TabulatedHatMatchesLinearSpline) {
  const ComplexMatrix tab = shift_gram(tabulated_hat(0.125), 5);
  const ComplexMatrix exact = shift_gram(Generator::bspline(1), 5);
  EXPECT_LE(max_abs(tab - exact), 1e-12);
}

TEST(StableSampling, CubicWithoutPerturbationIsStable) {
  const auto r = stable_sampling_verdict(Generator::bspline(3), SamplingSet::constant(128, 0.0),
                                         TruncationLadder({32, 64, 128}));
  EXPECT_TRUE(r.stable);
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.trim, 2u);
  ASSERT_EQ(r.items.size(), 5u);
  EXPECT_EQ(r.items[1].id, 'b');
  EXPECT_NE(r.items[1].proxy_note.find("duality-derived"), std::string::npos);
  // Interior lambda_min decreases toward 1/9.
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    EXPECT_LT(r.rows[i].lambda_min_interior, r.rows[i - 1].lambda_min_interior);
    EXPECT_GT(r.rows[i].lambda_min_interior, 1.0 / 9.0);
  }
  EXPECT_LT(r.rows.back().lambda_min_interior, 1.0 / 9.0 * 1.02);
}

TEST(StableSampling, HalfShiftIsUnstable) {
  const auto r = stable_sampling_verdict(Generator::bspline(3), SamplingSet::constant(128, 0.5),
                                         TruncationLadder({32, 64, 128}));
  EXPECT_FALSE(r.stable);
  EXPECT_TRUE(r.consistent);
  for (const auto& item : r.items) EXPECT_EQ(item.verdict, Verdict::fail) << item.id;
  EXPECT_LT(r.rows.back().lambda_min_interior, r.rows.front().lambda_min_interior / 8.0);
}

TEST(StableSampling, JitteredBoxIsStableWithIdentityGram) {
  const auto r = stable_sampling_verdict(Generator::bspline(0), SamplingSet::seeded_uniform(64, 0.45, 1),
                                         TruncationLadder({16, 64}));
  EXPECT_TRUE(r.stable);
  EXPECT_FALSE(r.checks.continuous);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.lambda_min_full, 1.0);
    EXPECT_EQ(row.sampling_lower, 1.0);
  }
}

TEST(StableSampling, GeneratorChecks) {
  const SamplingSet x = SamplingSet::constant(32, 0.0);
  const TruncationLadder ladder({16, 32});
  // Claimed decay exponent must exceed the dimension.
  EXPECT_FRAMELAB_ERROR(stable_sampling_verdict(Generator::tabulated(-1.0, 0.5, {0, 0.5, 1, 0.5, 0}, 1.0), x, ladder),
                        ErrorKind::generator_unsuitable);
  // Slow tail: the outer half breaks the bound fitted on the inner half.
  std::vector<double> slow;
  for (int i = 0; i <= 80; ++i) slow.push_back(1.0 / (1.0 + std::abs(-4.0 + 0.1 * i)));
  EXPECT_FRAMELAB_ERROR(stable_sampling_verdict(Generator::tabulated(-4.0, 0.1, slow, 3.0), x, ladder),
                        ErrorKind::generator_unsuitable);
  // A generator vanishing at every sample has no Riesz basis of shifts.
  EXPECT_FRAMELAB_ERROR(stable_sampling_verdict(Generator::tabulated(-1.0, 1.0, {0, 0, 0}, 2.0), x, ladder),
                        ErrorKind::generator_unsuitable);
  EXPECT_FRAMELAB_ERROR(stable_sampling_verdict(Generator::bspline(3), x, TruncationLadder({4, 32})),
                        ErrorKind::invalid_argument);
}
