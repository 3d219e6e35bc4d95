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
 * @brief JSON and CSV encodings of families, reports and configurations.
 *
 * Complex numbers are [re, im] pairs; matrices are row-major lists of rows.
 * Missing values (singular condition numbers) are written as null.
 */

#include "framelab/equivalence.hpp"
#include "framelab/shift_invariant.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

namespace framelab::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; any failure is a parse error.
inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, "'" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::invalid_argument, "write to '" + path + "' failed");
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Typed field access with parse_error on absence or type mismatch.
template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::parse_error, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::parse_error, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return get<T>(j, key);
}

inline Json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json complex_to_json(const Complex& z) { return Json::array({number(z.real()), number(z.imag())}); }

inline Json matrix_to_json(const ComplexMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(complex_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorKind::parse_error, "complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw Error(ErrorKind::dimension_mismatch, "coeffs must have ambient_dim = " + std::to_string(rows) + " rows");
  }
  ComplexMatrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols) {
      throw Error(ErrorKind::dimension_mismatch, "coeffs row " + std::to_string(i) + " must have member_count entries");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(row[k]);
    }
  }
  return a;
}

inline Json family_to_json(const VectorFamily& f) {
  Json j;
  j["label"] = f.label();
  j["ambient_dim"] = f.ambient_dim();
  j["member_count"] = f.member_count();
  j["coeffs"] = matrix_to_json(f.coeffs());
  return j;
}

inline VectorFamily family_from_json(const Json& j) {
  const auto rows = get<std::size_t>(j, "ambient_dim");
  const auto cols = get<std::size_t>(j, "member_count");
  if (!j.contains("coeffs")) throw Error(ErrorKind::parse_error, "missing field 'coeffs'");
  return VectorFamily(matrix_from_json(j["coeffs"], rows, cols), get_or<std::string>(j, "label", "family"));
}

inline Json tolerances_to_json(const Tolerances& t) {
  Json j;
  j["eig"] = t.eig;
  j["herm"] = t.herm;
  j["pd"] = t.pd;
  j["sing"] = t.sing;
  j["calc"] = t.calc;
  j["frame"] = t.frame;
  j["growth"] = t.growth;
  j["ladder_decay"] = t.ladder_decay;
  j["quad"] = t.quad;
  j["sep_min"] = t.sep_min;
  return j;
}

/// Fields absent from `j` keep their values in `base`.
inline Tolerances tolerances_from_json(const Json& j, Tolerances base = {}) {
  if (j.is_null()) return base;
  if (!j.is_object()) throw Error(ErrorKind::parse_error, "tolerances must be an object");
  base.eig = get_or(j, "eig", base.eig);
  base.herm = get_or(j, "herm", base.herm);
  base.pd = get_or(j, "pd", base.pd);
  base.sing = get_or(j, "sing", base.sing);
  base.calc = get_or(j, "calc", base.calc);
  base.frame = get_or(j, "frame", base.frame);
  base.growth = get_or(j, "growth", base.growth);
  base.ladder_decay = get_or(j, "ladder_decay", base.ladder_decay);
  base.quad = get_or(j, "quad", base.quad);
  base.sep_min = get_or(j, "sep_min", base.sep_min);
  return base;
}

inline Json weight_to_json(const WeightSpec& w) {
  Json j;
  if (w.form() == WeightSpec::Form::polynomial) {
    j["form"] = "polynomial";
    j["delta"] = w.first();
    j["c"] = w.second();
  } else {
    j["form"] = "subexponential";
    j["a"] = w.first();
    j["b"] = w.second();
  }
  return j;
}

inline WeightSpec weight_from_json(const Json& j) {
  const auto form = get<std::string>(j, "form");
  if (form == "polynomial") return WeightSpec::polynomial(get<double>(j, "delta"), get_or(j, "c", 1.0));
  if (form == "subexponential") return WeightSpec::subexponential(get<double>(j, "a"), get<double>(j, "b"));
  throw Error(ErrorKind::parse_error, "unknown weight form '" + form + "'");
}

inline Json profile_to_json(const LocalizationProfile& p) {
  Json j;
  if (p.kind() == LocalizationProfile::Kind::jaffard) {
    j["kind"] = "jaffard";
    j["s"] = p.s();
  } else {
    j["kind"] = "schur";
    j["weight"] = weight_to_json(p.weight());
  }
  return j;
}

inline LocalizationProfile profile_from_json(const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "jaffard") return LocalizationProfile::jaffard(get<double>(j, "s"));
  if (kind == "schur") return LocalizationProfile::schur(weight_from_json(j.at("weight")));
  throw Error(ErrorKind::parse_error, "unknown profile kind '" + kind + "'");
}

inline std::vector<std::size_t> sizes_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::parse_error, "ladder must be a list of sizes");
  std::vector<std::size_t> sizes;
  for (const Json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw Error(ErrorKind::invalid_argument, "ladder sizes must be positive integers");
    }
    sizes.push_back(v.get<std::size_t>());
  }
  return sizes;
}

/// "8,16,32" -> {8, 16, 32}
inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_argument, "bad size '" + item + "' in ladder");
    }
    if (used != item.size() || v < 1) throw Error(ErrorKind::invalid_argument, "bad size '" + item + "' in ladder");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw Error(ErrorKind::invalid_argument, "empty ladder");
  return sizes;
}

inline Json ladder_to_json(const Ladder& q) {
  Json out = Json::array();
  for (const auto& [size, value] : q) out.push_back(Json::array({size, optional_number(value)}));
  return out;
}

inline Json decay_report_to_json(const DecayReport& r) {
  Json j;
  j["profile"] = profile_to_json(r.profile);
  Json ladder = Json::array();
  for (const auto& [size, value] : r.ladder_norms) ladder.push_back(Json::array({size, number(value)}));
  j["ladder"] = std::move(ladder);
  j["fitted_exponent"] = optional_number(r.fitted_exponent);
  j["verdict"] = std::string(to_string(r.verdict));
  return j;
}

inline Json equivalence_report_to_json(const EquivalenceReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["ladder"] = r.ladder;
  Json conditions = Json::array();
  for (const auto& w : r.witnesses) {
    Json c;
    c["id"] = w.id;
    c["quote"] = w.statement;
    c["proxy_note"] = w.proxy_note;
    c["sense"] = w.sense == WitnessSense::lower_bound ? "lower-bound" : "condition-number";
    c["quantities"] = ladder_to_json(w.quantities);
    c["verdict"] = std::string(to_string(w.verdict));
    conditions.push_back(std::move(c));
  }
  j["conditions"] = std::move(conditions);
  j["consistent"] = r.consistent;
  j["closed_range_proxy"] = std::string(closed_range_proxy_note);
  j["coorbit_note"] = r.coorbit_note;
  return j;
}

inline Json generator_to_json(const Generator& g) {
  Json j;
  if (g.kind() == Generator::Kind::bspline) {
    j["kind"] = "bspline";
    j["degree"] = g.degree();
  } else {
    j["kind"] = "tabulated";
    j["grid"] = {{"start", g.grid_start()},
                 {"step", g.grid_step()},
                 {"samples", g.samples()},
                 {"decay_exponent", g.decay_exponent()}};
  }
  j["support_radius"] = g.support_radius();
  return j;
}

inline Generator generator_from_json(const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "bspline") return Generator::bspline(get<int>(j, "degree"));
  if (kind == "tabulated") {
    const Json& grid = j.contains("grid") ? j.at("grid") : j;
    return Generator::tabulated(get<double>(grid, "start"), get<double>(grid, "step"),
                                get<std::vector<double>>(grid, "samples"), get<double>(grid, "decay_exponent"));
  }
  throw Error(ErrorKind::parse_error, "unknown generator kind '" + kind + "'");
}

inline Json sampling_report_to_json(const SamplingReport& r) {
  Json j;
  j["checks"] = {{"continuous", r.checks.continuous}, {"decay", r.checks.decay_ok}, {"riesz_basis", r.checks.riesz_ok}};
  j["trim"] = r.trim;
  Json ladder = Json::array();
  for (const auto& row : r.rows) ladder.push_back(row.window);
  j["ladder"] = std::move(ladder);
  Json items = Json::array();
  for (const auto& item : r.items) {
    Json c;
    c["id"] = std::string(1, item.id);
    c["quote"] = item.statement;
    c["proxy_note"] = item.proxy_note;
    c["sense"] = item.sense == WitnessSense::lower_bound ? "lower-bound" : "condition-number";
    c["quantities"] = ladder_to_json(item.quantities);
    c["verdict"] = std::string(to_string(item.verdict));
    items.push_back(std::move(c));
  }
  j["conditions"] = std::move(items);
  Json bounds = Json::array();
  for (const auto& row : r.rows) {
    bounds.push_back({{"window", row.window}, {"lower", number(row.sampling_lower)}, {"upper", number(row.sampling_upper)}});
  }
  j["sampling_bounds"] = std::move(bounds);
  j["stable"] = r.stable;
  j["consistent"] = r.consistent;
  return j;
}

/// Shortest round-trip decimal form, "nan"/"inf" spelled out.
inline std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return Json(v).dump();
}

inline std::string csv_number(const std::optional<double>& v) { return v ? csv_number(*v) : "inf"; }

inline std::string sampling_csv(const SamplingReport& r, const std::string& header_comment) {
  std::ostringstream out;
  out << "# " << header_comment << "\n";
  out << "window,lambda_min_interior,lambda_min_full,cond1,cond_inf,sampling_lower,sampling_upper,"
         "shift_gram_lambda_min\n";
  for (const auto& row : r.rows) {
    out << row.window << ',' << csv_number(row.lambda_min_interior) << ',' << csv_number(row.lambda_min_full) << ','
        << csv_number(row.cond_one) << ',' << csv_number(row.cond_inf) << ',' << csv_number(row.sampling_lower) << ','
        << csv_number(row.sampling_upper) << ',' << csv_number(row.shift_gram_lambda_min) << "\n";
  }
  return out.str();
}

}  // namespace framelab::io
