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
 * @brief Off-diagonal decay norms (Jaffard, weighted Schur) and ladder
 * diagnostics for mutual localization of two families.
 *
 * Index offsets use the one-dimensional metric |k - l|. Ladder verdicts are
 * heuristic evidence: finitely many truncations cannot decide membership in an
 * infinite matrix algebra.
 */

#include "framelab/frame.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace framelab {

/// Symmetric weight nu on integer offsets with nu(0) = 1.
class WeightSpec {
 public:
  enum class Form { polynomial, subexponential };

  /// nu(x) = (1 + c|x|)^delta
  static WeightSpec polynomial(double delta, double c = 1.0) {
    if (!(delta >= 0.0) || !(c > 0.0)) {
      throw Error(ErrorKind::invalid_argument, "polynomial weight needs delta >= 0 and c > 0");
    }
    return WeightSpec(Form::polynomial, delta, c);
  }

  /// nu(x) = exp(a |x|^b), 0 < b < 1 keeps the GRS condition.
  static WeightSpec subexponential(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0 && b < 1.0)) {
      throw Error(ErrorKind::invalid_argument, "subexponential weight needs a > 0 and 0 < b < 1");
    }
    return WeightSpec(Form::subexponential, a, b);
  }

  static WeightSpec unit() { return polynomial(0.0, 1.0); }

  [[nodiscard]] double operator()(long offset) const {
    const double x = std::abs(static_cast<double>(offset));
    if (form_ == Form::polynomial) return p0_ == 0.0 ? 1.0 : std::pow(1.0 + p1_ * x, p0_);
    return std::exp(p0_ * std::pow(x, p1_));
  }

  [[nodiscard]] Form form() const { return form_; }
  [[nodiscard]] double first() const { return p0_; }
  [[nodiscard]] double second() const { return p1_; }

 private:
  WeightSpec(Form form, double p0, double p1) : form_(form), p0_(p0), p1_(p1) {}

  Form form_;
  double p0_;
  double p1_;
};

class LocalizationProfile {
 public:
  enum class Kind { jaffard, schur };

  static LocalizationProfile jaffard(double s) {
    if (!(s > 1.0)) throw Error(ErrorKind::bad_exponent, "Jaffard exponent must exceed the index dimension 1");
    return LocalizationProfile(Kind::jaffard, s, WeightSpec::unit());
  }

  static LocalizationProfile schur(WeightSpec weight) { return LocalizationProfile(Kind::schur, 0.0, weight); }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double s() const { return s_; }
  [[nodiscard]] const WeightSpec& weight() const { return weight_; }

 private:
  LocalizationProfile(Kind kind, double s, WeightSpec weight) : kind_(kind), s_(s), weight_(weight) {}

  Kind kind_;
  double s_;
  WeightSpec weight_;
};

/// max_{k,l} |A_kl| (1 + |k - l|)^s
inline double jaffard_norm(const ComplexMatrix& a, double s) {
  if (!(s > 1.0)) throw Error(ErrorKind::bad_exponent, "Jaffard exponent must exceed 1");
  double best = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    for (Eigen::Index l = 0; l < a.cols(); ++l) {
      const double w = std::pow(1.0 + std::abs(static_cast<double>(k - l)), s);
      best = std::max(best, std::abs(a(k, l)) * w);
    }
  }
  return best;
}

/// max of the weighted row and column sup-sums. Sums run in index order so a
/// unit weight reproduces max(||A||_1, ||A||_inf) bit for bit.
inline double schur_norm(const ComplexMatrix& a, const WeightSpec& w) {
  double rows = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    double sum = 0.0;
    for (Eigen::Index l = 0; l < a.cols(); ++l) sum += std::abs(a(k, l)) * w(static_cast<long>(k - l));
    rows = std::max(rows, sum);
  }
  double cols = 0.0;
  for (Eigen::Index l = 0; l < a.cols(); ++l) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < a.rows(); ++k) sum += std::abs(a(k, l)) * w(static_cast<long>(k - l));
    cols = std::max(cols, sum);
  }
  return std::max(rows, cols);
}

inline double profile_norm(const ComplexMatrix& a, const LocalizationProfile& profile) {
  return profile.kind() == LocalizationProfile::Kind::jaffard ? jaffard_norm(a, profile.s())
                                                              : schur_norm(a, profile.weight());
}

/**
 * @brief Least-squares decay exponent of the off-diagonal envelope.
 *
 * For each offset r >= 1 take m_r = max_{|k-l| = r} |A_kl|; offsets with
 * m_r == 0 are dropped. Returns the slope of log m_r against -log(1 + r).
 */
inline double fit_decay_exponent(const ComplexMatrix& a) {
  const Eigen::Index reach = std::max(a.rows(), a.cols());
  std::vector<double> xs;
  std::vector<double> ys;
  for (Eigen::Index r = 1; r < reach; ++r) {
    double envelope = 0.0;
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
      if (k + r < a.cols()) envelope = std::max(envelope, std::abs(a(k, k + r)));
      if (k - r >= 0 && k - r < a.cols()) envelope = std::max(envelope, std::abs(a(k, k - r)));
    }
    if (envelope > 0.0) {
      xs.push_back(-std::log1p(static_cast<double>(r)));
      ys.push_back(std::log(envelope));
    }
  }
  if (xs.size() < 3) {
    throw Error(ErrorKind::insufficient_data, "need at least three off-diagonal offsets with nonzero entries");
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

enum class LocalizationVerdict { localized, growth_detected, inconclusive };

inline std::string_view to_string(LocalizationVerdict v) {
  switch (v) {
    case LocalizationVerdict::localized: return "localized";
    case LocalizationVerdict::growth_detected: return "growth-detected";
    case LocalizationVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct DecayReport {
  LocalizationProfile profile = LocalizationProfile::jaffard(2.0);
  std::vector<std::pair<std::size_t, double>> ladder_norms;
  std::optional<double> fitted_exponent;  ///< from the largest size; empty if too few offsets
  LocalizationVerdict verdict = LocalizationVerdict::inconclusive;
};

struct FamilyPair {
  VectorFamily psi;
  VectorFamily phi;
};

/// size -> (psi, phi). Ladders rebuild families per size rather than
/// re-truncating one matrix.
using FamilyGenerator = std::function<FamilyPair(std::size_t)>;
using MatrixGenerator = std::function<ComplexMatrix(std::size_t)>;

/// Verdict from a ladder of norms: localized when max/min <= 1 + tol.growth,
/// growth-detected when the last norm exceeds the first by more than that,
/// inconclusive otherwise.
inline LocalizationVerdict ladder_verdict(const std::vector<std::pair<std::size_t, double>>& norms,
                                          const Tolerances& tol) {
  double lo = norms.front().second;
  double hi = lo;
  for (const auto& [size, value] : norms) {
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  const double limit = 1.0 + tol.growth;
  if (hi == 0.0 || hi <= limit * lo) return LocalizationVerdict::localized;
  if (norms.back().second > limit * norms.front().second) return LocalizationVerdict::growth_detected;
  return LocalizationVerdict::inconclusive;
}

/// Profile norm of matrices produced per ladder size.
inline DecayReport localization_ladder(const MatrixGenerator& make, const LocalizationProfile& profile,
                                       const TruncationLadder& ladder, const Tolerances& tol = {}) {
  DecayReport report{profile, {}, std::nullopt, LocalizationVerdict::inconclusive};
  ComplexMatrix last;
  for (const std::size_t n : ladder) {
    last = make(n);
    report.ladder_norms.emplace_back(n, profile_norm(last, profile));
  }
  try {
    report.fitted_exponent = fit_decay_exponent(last);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::insufficient_data) throw;
  }
  report.verdict = ladder_verdict(report.ladder_norms, tol);
  return report;
}

/// Profile norm of G_{psi,phi} along the ladder.
inline DecayReport mutual_localization(const FamilyGenerator& families, const LocalizationProfile& profile,
                                       const TruncationLadder& ladder, const Tolerances& tol = {}) {
  return localization_ladder(
      [&](std::size_t n) {
        const FamilyPair pair = families(n);
        return cross_gram(pair.psi, pair.phi);
      },
      profile, ladder, tol);
}

}  // namespace framelab
