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
 * @brief Pass/fail/borderline verdicts for witness quantities along a
 * truncation ladder.
 */

#include "framelab/common.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace framelab {

enum class Verdict { pass, fail, borderline };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::borderline: return "borderline";
  }
  return "?";
}

/// How a witness quantity is read: lower bounds must stay away from zero,
/// condition numbers must stay bounded (empty value = singular).
enum class WitnessSense { lower_bound, condition };

/// (size, value) pairs; an empty value marks a singular matrix.
using Ladder = std::vector<std::pair<std::size_t, std::optional<double>>>;

/// Strength in [0, inf): the lower bound itself, or 1/cond (0 when singular).
inline double witness_strength(const std::optional<double>& value, WitnessSense sense) {
  if (!value) return 0.0;
  return sense == WitnessSense::lower_bound ? *value : 1.0 / *value;
}

/// pass iff the final strength exceeds 10 tol_frame and the first-to-last
/// decay stays within tol.ladder_decay; borderline if the final strength lies
/// in [tol_frame, 10 tol_frame].
inline Verdict judge_ladder(const Ladder& quantities, WitnessSense sense, const Tolerances& tol) {
  const double first = witness_strength(quantities.front().second, sense);
  const double last = witness_strength(quantities.back().second, sense);
  if (last >= tol.frame && last <= 10.0 * tol.frame) return Verdict::borderline;
  if (!(last > tol.frame)) return Verdict::fail;
  if (first / last > tol.ladder_decay) return Verdict::fail;
  return Verdict::pass;
}

/// consistent is false only when two non-borderline verdicts disagree.
inline bool verdicts_consistent(const std::vector<Verdict>& verdicts) {
  std::optional<Verdict> seen;
  for (const Verdict v : verdicts) {
    if (v == Verdict::borderline) continue;
    if (seen && *seen != v) return false;
    seen = v;
  }
  return true;
}

}  // namespace framelab
