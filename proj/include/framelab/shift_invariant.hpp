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
 * @brief Sampling in one-dimensional shift-invariant spaces V^2(g).
 *
 * A window of size N covers the integer indices w, ..., w + N - 1 with
 * w = -floor(N/2), so windows of growing size are nested. Sample points are
 * x_k = k + delta_k. The sampling matrix P has entry (l, k) = g(x_l - k) and the
 * autocorrelation matrix is G_omega = P^H P, the Gram matrix of the R-dual of
 * the point-evaluation family.
 *
 * Finite windows have edge effects: samples outside the window are missing.
 * Stability witnesses use the interior block that drops a band of
 * ceil(support radius) + ceil(C) indices on each side; for coefficient
 * sequences supported there every relevant sample lies inside the window.
 */

#include "framelab/frame.hpp"
#include "framelab/verdict.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace framelab {

/// Real-valued generator: a centered B-spline or a tabulated profile.
class Generator {
 public:
  enum class Kind { bspline, tabulated };

  static constexpr int max_bspline_degree = 15;

  static Generator bspline(int degree) {
    if (degree < 0 || degree > max_bspline_degree) {
      throw Error(ErrorKind::invalid_argument, "B-spline degree must lie in [0, 15]");
    }
    Generator g;
    g.kind_ = Kind::bspline;
    g.degree_ = degree;
    return g;
  }

  /// Samples on start + i * step, linear interpolation, zero outside the grid.
  /// `decay_exponent` is the claimed s in |g(x)| <= C (1 + |x|)^{-s}.
  static Generator tabulated(double start, double step, std::vector<double> samples, double decay_exponent) {
    if (!(step > 0.0)) throw Error(ErrorKind::invalid_argument, "grid step must be positive");
    if (samples.size() < 2) throw Error(ErrorKind::invalid_argument, "tabulated generator needs two samples");
    for (const double v : samples) {
      if (!std::isfinite(v)) throw Error(ErrorKind::invalid_argument, "tabulated samples must be finite");
    }
    Generator g;
    g.kind_ = Kind::tabulated;
    g.start_ = start;
    g.step_ = step;
    g.samples_ = std::move(samples);
    g.decay_ = decay_exponent;
    return g;
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] double grid_start() const { return start_; }
  [[nodiscard]] double grid_step() const { return step_; }
  [[nodiscard]] double grid_end() const { return start_ + step_ * static_cast<double>(samples_.size() - 1); }
  [[nodiscard]] const std::vector<double>& samples() const { return samples_; }
  [[nodiscard]] double decay_exponent() const { return decay_; }

  /// Half-width of the smallest centered interval containing the support.
  [[nodiscard]] double support_radius() const {
    if (kind_ == Kind::bspline) return 0.5 * static_cast<double>(degree_ + 1);
    return std::max(std::abs(start_), std::abs(grid_end()));
  }

  [[nodiscard]] double operator()(double t) const {
    return kind_ == Kind::bspline ? eval_bspline(t) : eval_tabulated(t);
  }

  /// B-splines of degree >= 1 are continuous; a table is continuous when it
  /// vanishes at both ends.
  [[nodiscard]] bool continuous() const {
    if (kind_ == Kind::bspline) return degree_ >= 1;
    return samples_.front() == 0.0 && samples_.back() == 0.0;
  }

 private:
  Generator() = default;

  // Cox-de Boor on the knots -(n+1)/2 + j, j = 0..n+1; half-open intervals.
  [[nodiscard]] double eval_bspline(double t) const {
    const int n = degree_;
    const double first_knot = -0.5 * static_cast<double>(n + 1);
    const double u = t - first_knot;  // knots at 0, 1, ..., n+1
    if (!(u >= 0.0) || !(u < static_cast<double>(n + 1))) return 0.0;
    double basis[max_bspline_degree + 2] = {};
    const int cell = std::min(static_cast<int>(std::floor(u)), n);
    basis[cell] = 1.0;
    for (int p = 1; p <= n; ++p) {
      for (int j = 0; j <= n - p; ++j) {
        const double left = (u - j) / p * basis[j];
        const double right = (j + p + 1 - u) / p * basis[j + 1];
        basis[j] = left + right;
      }
    }
    return basis[0];
  }

  [[nodiscard]] double eval_tabulated(double t) const {
    const double pos = (t - start_) / step_;
    const double last = static_cast<double>(samples_.size() - 1);
    if (!(pos >= 0.0) || pos > last) return 0.0;
    const auto i = std::min(static_cast<std::size_t>(pos), samples_.size() - 2);
    const double frac = pos - static_cast<double>(i);
    return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
  }

  Kind kind_ = Kind::bspline;
  int degree_ = 0;
  double start_ = 0.0;
  double step_ = 1.0;
  std::vector<double> samples_;
  double decay_ = 0.0;
};

inline Complex generator_eval(const Generator& g, double t) { return {g(t), 0.0}; }

/// Decay claim of a tabulated generator: C fitted on the inner half of the
/// grid, |g(x)| <= C (1 + |x|)^{-s} verified on the outer half, s > 1.
inline bool tabulated_decay_ok(const Generator& g) {
  if (g.kind() == Generator::Kind::bspline) return true;
  const double s = g.decay_exponent();
  if (!(s > 1.0)) return false;
  const double half = 0.5 * g.support_radius();
  double c = 0.0;
  const auto& v = g.samples();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = g.grid_start() + g.grid_step() * static_cast<double>(i);
    if (std::abs(x) <= half) c = std::max(c, std::abs(v[i]) * std::pow(1.0 + std::abs(x), s));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = g.grid_start() + g.grid_step() * static_cast<double>(i);
    if (std::abs(x) > half && std::abs(v[i]) > c * std::pow(1.0 + std::abs(x), -s) * (1.0 + 1e-12)) return false;
  }
  return true;
}

/// First index of the size-n window.
inline long window_first(std::size_t n) { return -static_cast<long>(n / 2); }

/// Perturbations delta_k for k = first_index, ..., first_index + size - 1
/// together with the claimed bound C >= |delta_k|.
class SamplingSet {
 public:
  SamplingSet(long first_index, std::vector<double> deltas, double bound)
      : first_(first_index), deltas_(std::move(deltas)), bound_(bound) {
    if (!(bound_ >= 0.0) || !std::isfinite(bound_)) throw Error(ErrorKind::invalid_argument, "bound C must be finite and >= 0");
    for (const double d : deltas_) {
      if (!std::isfinite(d)) throw Error(ErrorKind::invalid_argument, "perturbations must be finite");
    }
  }

  /// delta_k = value on the size-n window; C = |value|.
  static SamplingSet constant(std::size_t n, double value) {
    return {window_first(n), std::vector<double>(n, value), std::abs(value)};
  }

  /// delta_k uniform in [-bound, bound] on the size-n window, seeded.
  static SamplingSet seeded_uniform(std::size_t n, double bound, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-bound, bound);
    std::vector<double> deltas(n);
    for (auto& d : deltas) d = dist(rng);
    return {window_first(n), std::move(deltas), bound};
  }

  [[nodiscard]] long first_index() const { return first_; }
  [[nodiscard]] std::size_t size() const { return deltas_.size(); }
  [[nodiscard]] double bound() const { return bound_; }
  [[nodiscard]] const std::vector<double>& deltas() const { return deltas_; }

  [[nodiscard]] bool covers(long first, std::size_t n) const {
    return first >= first_ && first + static_cast<long>(n) <= first_ + static_cast<long>(deltas_.size());
  }

  [[nodiscard]] double delta(long k) const { return deltas_.at(static_cast<std::size_t>(k - first_)); }
  [[nodiscard]] double point(long k) const { return static_cast<double>(k) + delta(k); }

 private:
  long first_;
  std::vector<double> deltas_;
  double bound_;
};

/// |delta_k| <= C and the sorted points are at least sep_min apart on the window.
inline void validate_window(const SamplingSet& x, std::size_t n, const Tolerances& tol) {
  const long first = window_first(n);
  if (!x.covers(first, n)) {
    throw Error(ErrorKind::invalid_argument, "sampling set does not cover the window of size " + std::to_string(n));
  }
  std::vector<double> points;
  points.reserve(n);
  for (long k = first; k < first + static_cast<long>(n); ++k) {
    if (std::abs(x.delta(k)) > x.bound() * (1.0 + 1e-15)) {
      throw Error(ErrorKind::perturbation_violation, "|x_k - k| exceeds C at k = " + std::to_string(k));
    }
    points.push_back(x.point(k));
  }
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] - points[i - 1] < tol.sep_min) {
      throw Error(ErrorKind::not_separated, "sampling points closer than sep_min");
    }
  }
}

/// P with entry (l, k) = g(x_l - k) over the size-n window.
inline ComplexMatrix sampling_matrix(const Generator& g, const SamplingSet& x, std::size_t n,
                                     const Tolerances& tol = {}) {
  validate_window(x, n, tol);
  const long first = window_first(n);
  const auto size = static_cast<Eigen::Index>(n);
  ComplexMatrix p(size, size);
  for (Eigen::Index l = 0; l < size; ++l) {
    const double xl = x.point(first + l);
    for (Eigen::Index k = 0; k < size; ++k) p(l, k) = generator_eval(g, xl - static_cast<double>(first + k));
  }
  return p;
}

/// P^H P as the naive sum over sample rows l in ascending order:
/// G(k, m) = sum_l conj(P(l, k)) P(l, m). For the real generators here this is
/// bit-identical to sum_l g(x_l - k) conj(g(x_l - m)).
inline ComplexMatrix autocorrelation_from_sampling(const ComplexMatrix& p) {
  ComplexMatrix g = ComplexMatrix::Zero(p.cols(), p.cols());
  for (Eigen::Index k = 0; k < p.cols(); ++k) {
    for (Eigen::Index m = 0; m < p.cols(); ++m) {
      Complex sum = 0.0;
      for (Eigen::Index l = 0; l < p.rows(); ++l) sum += std::conj(p(l, k)) * p(l, m);
      g(k, m) = sum;
    }
  }
  return g;
}

inline ComplexMatrix autocorrelation_gram(const Generator& g, const SamplingSet& x, std::size_t n,
                                          const Tolerances& tol = {}) {
  return autocorrelation_from_sampling(sampling_matrix(g, x, n, tol));
}

/// a(m) = integral of g(u) g(u - m) du, m >= 0.
inline double shift_autocorrelation(const Generator& g, long m, const Tolerances& tol = {}) {
  const long shift = std::abs(m);
  const auto integrand = [&](double u) { return g(u) * g(u - static_cast<double>(shift)); };
  if (g.kind() == Generator::Kind::bspline) {
    // Integer shifts keep the knot lattice; Gauss-Legendre with 16 nodes is
    // exact for the piecewise polynomial product up to degree 31.
    const double r = g.support_radius();
    const double lo = std::max(-r, -r + static_cast<double>(shift));
    const double hi = std::min(r, r + static_cast<double>(shift));
    double total = 0.0;
    for (double a = lo; a < hi - 0.5; a += 1.0) {
      total += boost::math::quadrature::gauss<double, 16>::integrate(integrand, a, a + 1.0);
    }
    return total;
  }
  const double lo = std::max(g.grid_start(), g.grid_start() + static_cast<double>(shift));
  const double hi = std::min(g.grid_end(), g.grid_end() + static_cast<double>(shift));
  if (!(lo < hi)) return 0.0;
  std::vector<double> breaks{lo, hi};
  const auto count = g.samples().size();
  for (std::size_t i = 0; i < count; ++i) {
    for (const double off : {0.0, static_cast<double>(shift)}) {
      const double b = g.grid_start() + g.grid_step() * static_cast<double>(i) + off;
      if (b > lo && b < hi) breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  double error_sum = 0.0;
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, breaks[i - 1], breaks[i], 8,
                                                                           tol.quad, &err);
    error_sum += std::abs(err) * (breaks[i] - breaks[i - 1]);
  }
  if (error_sum > tol.quad * std::max(1.0, std::abs(total))) {
    throw Error(ErrorKind::quadrature_failure, "shift autocorrelation did not reach quad_tol");
  }
  return total;
}

/// G_phi(k, l) = <T_l g, T_k g> over the size-n window; real symmetric Toeplitz.
inline ComplexMatrix shift_gram(const Generator& g, std::size_t n, const Tolerances& tol = {}) {
  const auto size = static_cast<Eigen::Index>(n);
  std::vector<double> a(n);
  const double reach = 2.0 * g.support_radius();
  for (std::size_t m = 0; m < n; ++m) {
    a[m] = static_cast<double>(m) >= reach ? 0.0 : shift_autocorrelation(g, static_cast<long>(m), tol);
  }
  ComplexMatrix out(size, size);
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index l = 0; l < size; ++l) out(k, l) = a[static_cast<std::size_t>(std::abs(k - l))];
  }
  return out;
}

struct GeneratorChecks {
  bool continuous = false;  ///< reported; a discontinuous box is still accepted
  bool decay_ok = false;
  bool riesz_ok = false;    ///< lambda_min(G_phi) > tol_frame at every ladder size
};

struct SamplingRow {
  std::size_t window = 0;
  double lambda_min_interior = 0.0;  ///< item (e) witness
  double lambda_min_full = 0.0;
  std::optional<double> cond_one;    ///< item (c), interior block
  std::optional<double> cond_inf;    ///< item (d), interior block
  double sampling_lower = 0.0;       ///< item (a): A in A||f||^2 <= sum |f(x_k)|^2
  double sampling_upper = 0.0;       ///< B
  double shift_gram_lambda_min = 0.0;
};

struct SamplingItem {
  char id = 'a';
  std::string statement;
  std::string proxy_note;
  WitnessSense sense = WitnessSense::lower_bound;
  Ladder quantities;
  Verdict verdict = Verdict::fail;
};

struct SamplingReport {
  GeneratorChecks checks;
  std::size_t trim = 0;
  std::vector<SamplingRow> rows;
  std::vector<SamplingItem> items;  ///< a..e
  bool stable = false;
  bool consistent = true;
};

inline std::size_t interior_trim(const Generator& g, const SamplingSet& x) {
  return static_cast<std::size_t>(std::ceil(g.support_radius()) + std::ceil(x.bound()));
}

/**
 * @brief Stable-sampling evidence along a ladder of windows.
 *
 * Items (a), (c), (d), (e) are computed on the interior block; (b) carries the
 * verdict of (c) through duality and is labelled as such. The set is reported
 * stable iff (a), (c), (d), (e) pass.
 */
inline SamplingReport stable_sampling_verdict(const Generator& g, const SamplingSet& x, const TruncationLadder& ladder,
                                              const Tolerances& tol = {}) {
  SamplingReport report;
  report.checks.continuous = g.continuous();
  report.checks.decay_ok = tabulated_decay_ok(g);
  if (!report.checks.decay_ok) {
    throw Error(ErrorKind::generator_unsuitable, "generator fails the polynomial decay check");
  }
  report.trim = interior_trim(g, x);
  report.checks.riesz_ok = true;

  for (const std::size_t n : ladder) {
    if (n <= 2 * report.trim) {
      throw Error(ErrorKind::invalid_argument,
                  "window " + std::to_string(n) + " leaves no interior after trimming " + std::to_string(report.trim));
    }
    const ComplexMatrix gram_shift = shift_gram(g, n, tol);
    SamplingRow row;
    row.window = n;
    row.shift_gram_lambda_min = hermitian_eig(gram_shift, tol).eigenvalues(0);
    if (!(row.shift_gram_lambda_min > tol.frame)) {
      report.checks.riesz_ok = false;
      throw Error(ErrorKind::generator_unsuitable,
                  "integer shifts are not a Riesz basis at window " + std::to_string(n));
    }
    const ComplexMatrix gw = autocorrelation_gram(g, x, n, tol);
    const auto inner = static_cast<Eigen::Index>(n - 2 * report.trim);
    const auto t = static_cast<Eigen::Index>(report.trim);
    const ComplexMatrix gi = gw.block(t, t, inner, inner);
    const ComplexMatrix gphi = gram_shift.block(t, t, inner, inner);

    row.lambda_min_full = hermitian_eig(gw, tol).eigenvalues(0);
    row.lambda_min_interior = hermitian_eig(gi, tol).eigenvalues(0);
    row.cond_one = condition_p(gi, NormIndex::one, tol);
    row.cond_inf = condition_p(gi, NormIndex::inf, tol);

    const ComplexMatrix gi_sym = 0.5 * (gi + gi.adjoint());
    const ComplexMatrix gphi_sym = 0.5 * (gphi + gphi.adjoint());
    Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> ges(gi_sym, gphi_sym, Eigen::EigenvaluesOnly);
    if (ges.info() != Eigen::Success) throw Error(ErrorKind::numerical_failure, "generalized eigensolver failed");
    row.sampling_lower = std::max(0.0, ges.eigenvalues()(0));
    row.sampling_upper = ges.eigenvalues()(ges.eigenvalues().size() - 1);
    report.rows.push_back(row);
  }

  using S = WitnessSense;
  SamplingItem a{'a', "(x_k) is a stable set of sampling for V^2", "lower sampling bound A from (G_omega, G_phi)",
                 S::lower_bound, {}, Verdict::fail};
  SamplingItem c{'c', "G_omega is invertible on l^1", "cond_1 of interior G_omega", S::condition, {}, Verdict::fail};
  SamplingItem d{'d', "G_omega is invertible on l^inf", "cond_inf of interior G_omega", S::condition, {},
                 Verdict::fail};
  SamplingItem e{'e', "G_omega is invertible on l^2", "lambda_min of interior G_omega", S::lower_bound, {},
                 Verdict::fail};
  for (const auto& row : report.rows) {
    a.quantities.emplace_back(row.window, row.sampling_lower);
    c.quantities.emplace_back(row.window, row.cond_one);
    d.quantities.emplace_back(row.window, row.cond_inf);
    e.quantities.emplace_back(row.window, row.lambda_min_interior);
  }
  for (SamplingItem* item : {&a, &c, &d, &e}) item->verdict = judge_ladder(item->quantities, item->sense, tol);

  SamplingItem b{'b', "(x_k) is a stable set of sampling for V^inf and D_psi has closed range",
                 "duality-derived from item (c); not computed independently", S::condition, c.quantities, c.verdict};

  report.items = {a, b, c, d, e};
  report.stable = a.verdict == Verdict::pass && c.verdict == Verdict::pass && d.verdict == Verdict::pass &&
                  e.verdict == Verdict::pass;
  report.consistent = verdicts_consistent({a.verdict, c.verdict, d.verdict, e.verdict});
  return report;
}

}  // namespace framelab
