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
 * @brief Subcommands of the framelab tool. Each reads one JSON config, writes
 * its report files and returns a process exit code.
 *
 * Exit codes: 0 success, 2 input error, 3 numerical failure, 4 failed
 * precondition evidence. Every output carries the tool version, a hash of the
 * config and overrides, the seed and the tolerances in effect.
 */

#include "framelab/fixtures.hpp"
#include "framelab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace framelab::cli {

using io::Json;

struct RunOptions {
  std::string config_path;  ///< may be empty for fixtures
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_frame;
  std::optional<std::string> ladder;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::parse_error:
    case ErrorKind::dimension_mismatch:
    case ErrorKind::bad_exponent:
    case ErrorKind::ladder_too_short:
    case ErrorKind::perturbation_violation:
    case ErrorKind::not_separated:
    case ErrorKind::non_square:
      return 2;
    case ErrorKind::numerical_failure:
    case ErrorKind::not_positive_definite:
    case ErrorKind::not_a_frame:
    case ErrorKind::not_riesz_basis:
    case ErrorKind::quadrature_failure:
    case ErrorKind::non_hermitian:
    case ErrorKind::insufficient_data:
      return 3;
    case ErrorKind::precondition_evidence:
    case ErrorKind::generator_unsuitable:
      return 4;
  }
  return 3;
}

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Settings shared by every subcommand once config and flags are merged.
struct Context {
  std::string command;
  Json config = Json::object();
  std::filesystem::path base_dir;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::optional<std::vector<std::size_t>> ladder_override;
  std::string config_hash;

  [[nodiscard]] Json meta() const {
    Json m;
    m["tool"] = "framelab";
    m["version"] = std::string(version);
    m["command"] = command;
    m["config_hash"] = config_hash;
    m["seed"] = seed;
    m["tolerances"] = io::tolerances_to_json(tol);
    return m;
  }

  [[nodiscard]] std::string meta_comment() const {
    std::ostringstream out;
    out << "framelab " << version << " command=" << command << " config_hash=" << config_hash << " seed=" << seed
        << " tol_frame=" << io::csv_number(tol.frame);
    return out.str();
  }

  [[nodiscard]] std::vector<std::size_t> ladder_sizes(const char* key = "ladder") const {
    if (ladder_override) return *ladder_override;
    if (!config.contains(key)) throw Error(ErrorKind::invalid_argument, std::string("config needs a '") + key + "'");
    return io::sizes_from_json(config.at(key));
  }

  [[nodiscard]] std::string resolve(const std::string& path) const {
    const std::filesystem::path p(path);
    return p.is_absolute() ? path : (base_dir / p).string();
  }
};

inline Context make_context(const std::string& command, const RunOptions& opts, bool config_required = true) {
  Context ctx;
  ctx.command = command;
  if (!opts.config_path.empty()) {
    ctx.config = io::read_json_file(opts.config_path);
    if (!ctx.config.is_object()) throw Error(ErrorKind::parse_error, "config must be a JSON object");
    ctx.base_dir = std::filesystem::path(opts.config_path).parent_path();
  } else if (config_required) {
    throw Error(ErrorKind::invalid_argument, "--config is required for '" + command + "'");
  }
  if (opts.out_path.empty()) throw Error(ErrorKind::invalid_argument, "--out is required");
  ctx.seed = opts.seed ? *opts.seed : io::get_or<std::uint64_t>(ctx.config, "seed", 0);
  ctx.tol = io::tolerances_from_json(ctx.config.contains("tolerances") ? ctx.config.at("tolerances") : Json());
  if (opts.tol_frame) ctx.tol.frame = *opts.tol_frame;
  if (!(ctx.tol.frame > 0.0)) throw Error(ErrorKind::invalid_argument, "tol-frame must be positive");
  if (opts.ladder) ctx.ladder_override = io::parse_size_list(*opts.ladder);

  std::ostringstream key;
  key << command << '\n' << nlohmann::json(ctx.config).dump() << "\nseed=" << ctx.seed
      << "\ntol_frame=" << io::csv_number(ctx.tol.frame) << "\nladder=" << (opts.ladder ? *opts.ladder : "");
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(key.str())));
  ctx.config_hash = hex;
  return ctx;
}

/// A family given as a path, an inline VectorFamily object, or
/// {"generate": {...}} for a seeded constructor.
inline VectorFamily load_family(const Context& ctx, const Json& source) {
  if (source.is_string()) return io::family_from_json(io::read_json_file(ctx.resolve(source.get<std::string>())));
  if (source.is_object() && source.contains("generate")) {
    const Json& g = source.at("generate");
    const auto kind = io::get<std::string>(g, "kind");
    const auto n = io::get<std::size_t>(g, "n");
    if (n < 1) throw Error(ErrorKind::invalid_argument, "family size must be positive");
    const bool complex_entries = io::get_or(g, "complex", false);
    std::mt19937_64 rng(ctx.seed);
    if (kind == "onb") return VectorFamily::standard_basis(n, "onb");
    if (kind == "inverse_index") return fixtures::inverse_index_pair(n).psi;
    if (kind == "perturbed") {
      return fixtures::perturbed_onb(n, io::get<double>(g, "epsilon"), io::get_or<std::size_t>(g, "bandwidth", 2),
                                     ctx.seed, complex_entries);
    }
    if (kind == "random_riesz") return fixtures::random_riesz_basis(n, io::get<double>(g, "epsilon"), rng, complex_entries);
    if (kind == "rank_deficient") {
      return fixtures::rank_deficient_family(n, io::get<std::size_t>(g, "rank"), rng, complex_entries);
    }
    throw Error(ErrorKind::invalid_argument, "unknown generated family kind '" + kind + "'");
  }
  if (source.is_object()) return io::family_from_json(source);
  throw Error(ErrorKind::parse_error, "family must be a path, an inline family or a generate block");
}

/// Size-parametric pair from a {"psi": ..., "reference": ...} block.
inline FamilyGenerator family_generator(const Context& ctx, const Json& settings) {
  const auto psi_kind = io::get_or<std::string>(settings, "psi", "identity");
  const auto ref_kind = io::get_or<std::string>(settings, "reference", io::get_or<std::string>(settings, "phi", "onb"));
  const double perturbation = io::get_or(settings, "perturbation", 0.3);
  const double ref_perturbation = io::get_or(settings, "reference_perturbation", 0.3);
  const auto bandwidth = io::get_or<std::size_t>(settings, "bandwidth", 2);
  const bool complex_entries = io::get_or(settings, "complex", false);
  const std::uint64_t seed = ctx.seed;
  const Tolerances tol = ctx.tol;
  if (psi_kind != "identity" && psi_kind != "inverse_index" && psi_kind != "perturbed") {
    throw Error(ErrorKind::invalid_argument, "unknown psi kind '" + psi_kind + "'");
  }
  if (ref_kind != "onb" && ref_kind != "banded_riesz") {
    throw Error(ErrorKind::invalid_argument, "unknown reference kind '" + ref_kind + "'");
  }
  return [=](std::size_t n) {
    const VectorFamily phi = ref_kind == "onb"
                                 ? VectorFamily::standard_basis(n, "onb")
                                 : fixtures::perturbed_onb(n, ref_perturbation, bandwidth, seed, complex_entries)
                                       .relabeled("banded-riesz");
    if (psi_kind == "identity") return FamilyPair{phi.relabeled("psi"), phi};
    if (psi_kind == "inverse_index") return FamilyPair{fixtures::inverse_index_family(phi, tol), phi};
    const auto size = static_cast<Eigen::Index>(n);
    const ComplexMatrix e = fixtures::banded_perturbation(n, perturbation, bandwidth, seed + 1, complex_entries);
    return FamilyPair{VectorFamily((ComplexMatrix::Identity(size, size) + e) * phi.coeffs(), "perturbed"), phi};
  };
}

inline std::vector<LocalizationProfile> analysis_profiles(const Json& config) {
  if (config.contains("profiles")) {
    std::vector<LocalizationProfile> out;
    for (const Json& p : config.at("profiles")) out.push_back(io::profile_from_json(p));
    return out;
  }
  if (config.contains("profile")) return {io::profile_from_json(config.at("profile"))};
  return {LocalizationProfile::jaffard(2.0), LocalizationProfile::schur(WeightSpec::polynomial(1.0))};
}

inline Json bounds_to_json(const FrameBounds& b) { return {{"lower", io::number(b.lower)}, {"upper", io::number(b.upper)}}; }

inline Json norms_to_json(const ComplexMatrix& m, const std::vector<LocalizationProfile>& profiles) {
  Json out = Json::array();
  for (const auto& p : profiles) out.push_back({{"profile", io::profile_to_json(p)}, {"value", io::number(profile_norm(m, p))}});
  return out;
}

inline std::optional<double> try_fit(const ComplexMatrix& m) {
  try {
    return fit_decay_exponent(m);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::insufficient_data) throw;
    return std::nullopt;
  }
}

inline std::string csv_path_for(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".csv");
  return p.string() == out ? out + ".csv" : p.string();
}

inline void cmd_analyze(const Context& ctx, const RunOptions& opts) {
  const bool bare_family = ctx.config.contains("coeffs");
  const VectorFamily psi = bare_family ? io::family_from_json(ctx.config) : load_family(ctx, ctx.config.at("family"));
  const auto profiles = analysis_profiles(ctx.config);
  const ComplexMatrix g = gram(psi);

  Json report;
  report["meta"] = ctx.meta();
  report["family"] = {{"label", psi.label()}, {"ambient_dim", psi.ambient_dim()}, {"member_count", psi.member_count()}};
  const FrameBounds fb = frame_bounds(psi, ctx.tol);
  const FrameBounds rb = riesz_bounds(psi, ctx.tol);
  report["frame_bounds"] = bounds_to_json(fb);
  report["riesz_bounds"] = bounds_to_json(rb);
  report["is_frame"] = fb.positive(ctx.tol);
  report["is_riesz_sequence"] = rb.positive(ctx.tol);
  report["gram_norms"] = norms_to_json(g, profiles);
  report["decay_fit"] = io::optional_number(try_fit(g));
  if (!bare_family && ctx.config.contains("reference")) {
    const VectorFamily phi = load_family(ctx, ctx.config.at("reference"));
    const ComplexMatrix cross = cross_gram(psi, phi);
    report["cross_gram_norms"] = norms_to_json(cross, profiles);
    report["cross_gram_decay_fit"] = io::optional_number(try_fit(cross));
  }
  io::write_text_file(opts.out_path, io::dump(report));
}

inline Json duality_to_json(const DualityReport& d) {
  return {{"frame_verdict", d.frame_verdict}, {"riesz_verdict", d.riesz_verdict}, {"agree", d.agree},
          {"borderline", d.borderline},       {"frame_lower", io::number(d.frame_lower)},
          {"riesz_lower", io::number(d.riesz_lower)}};
}

inline void cmd_rdual(const Context& ctx, const RunOptions& opts) {
  Json report;
  report["meta"] = ctx.meta();
  if (ctx.config.contains("family") && ctx.config.at("family").is_object() &&
      !ctx.config.at("family").contains("coeffs") && !ctx.config.at("family").contains("generate")) {
    const FamilyGenerator families = family_generator(ctx, ctx.config.at("family"));
    const TruncationLadder ladder(ctx.ladder_sizes());
    const LocalizationProfile profile = ctx.config.contains("profile") ? io::profile_from_json(ctx.config.at("profile"))
                                                                       : LocalizationProfile::jaffard(2.0);
    Json per_size = Json::array();
    for (const std::size_t n : ladder) {
      const FamilyPair pair = families(n);
      per_size.push_back({{"size", n}, {"duality", duality_to_json(verify_rdual_duality(pair.psi, pair.phi, ctx.tol))}});
    }
    report["duality"] = std::move(per_size);
    const RDualLocalization loc = verify_rdual_localization(families, profile, ladder, ctx.tol);
    Json residuals = Json::array();
    for (const auto& [n, r] : loc.factorization_residuals) residuals.push_back(Json::array({n, io::number(r)}));
    report["localization"] = {{"omega_phi", io::decay_report_to_json(loc.omega_phi)},
                              {"omega_dual", io::decay_report_to_json(loc.omega_dual)},
                              {"omega_omega", io::decay_report_to_json(loc.omega_omega)},
                              {"factorization_residuals", std::move(residuals)},
                              {"factorization_ok", loc.factorization_ok}};
  } else {
    const VectorFamily psi = load_family(ctx, ctx.config.at("psi"));
    const VectorFamily phi = load_family(ctx, ctx.config.at("phi"));
    const VectorFamily omega = rdual(psi, phi, ctx.tol);
    report["omega"] = io::family_to_json(omega);
    report["rdual_gram"] = io::matrix_to_json(gram(omega));
    report["duality"] = duality_to_json(verify_rdual_duality(psi, phi, ctx.tol));
    const FactorizationResidual r = rdual_factorization_residual(psi, phi, ctx.tol);
    report["factorization_residual"] = {{"omega_phi", io::number(r.omega_phi)}, {"omega_dual", io::number(r.omega_dual)}};
  }
  io::write_text_file(opts.out_path, io::dump(report));
}

inline void cmd_battery(const Context& ctx, const RunOptions& opts) {
  if (!ctx.config.contains("family")) throw Error(ErrorKind::invalid_argument, "battery config needs a 'family'");
  const FamilyGenerator families = family_generator(ctx, ctx.config.at("family"));
  const LocalizationProfile profile = ctx.config.contains("profile") ? io::profile_from_json(ctx.config.at("profile"))
                                                                     : LocalizationProfile::jaffard(2.0);
  const TruncationLadder ladder(ctx.ladder_sizes());
  BatteryOptions options;
  options.seed = ctx.seed;
  options.coorbit_samples = io::get_or<std::size_t>(ctx.config, "coorbit_samples", 64);
  const EquivalenceReport r = run_battery(families, profile, ladder, ctx.tol, options);

  Json report;
  report["meta"] = ctx.meta();
  const Json body = io::equivalence_report_to_json(r);
  for (const auto& [key, value] : body.items()) report[key] = value;
  io::write_text_file(opts.out_path, io::dump(report));

  std::ostringstream csv;
  csv << "# " << ctx.meta_comment() << "\nsize";
  for (const auto& w : r.witnesses) csv << ",w" << w.id;
  csv << "\n";
  for (std::size_t i = 0; i < r.ladder.size(); ++i) {
    csv << r.ladder[i];
    for (const auto& w : r.witnesses) csv << ',' << io::csv_number(w.quantities[i].second);
    csv << "\n";
  }
  io::write_text_file(csv_path_for(opts.out_path), csv.str());
}

/// Sampling set over the largest window; smaller windows are nested inside it.
inline SamplingSet sampling_set_from_config(const Context& ctx, std::size_t largest) {
  if (ctx.config.contains("deltas")) {
    auto deltas = io::get<std::vector<double>>(ctx.config, "deltas");
    if (deltas.size() != largest) {
      throw Error(ErrorKind::dimension_mismatch,
                  "deltas must list one perturbation per index of the largest window (" + std::to_string(largest) + ")");
    }
    double observed = 0.0;
    for (const double d : deltas) observed = std::max(observed, std::abs(d));
    const double bound = io::get_or(ctx.config, "bound", observed);
    return {window_first(largest), std::move(deltas), bound};
  }
  if (!ctx.config.contains("delta_rule")) return SamplingSet::constant(largest, 0.0);
  const Json& rule = ctx.config.at("delta_rule");
  const auto kind = io::get<std::string>(rule, "kind");
  if (kind == "constant") return SamplingSet::constant(largest, io::get<double>(rule, "value"));
  if (kind == "seeded-uniform") {
    return SamplingSet::seeded_uniform(largest, io::get<double>(rule, "bound"),
                                       io::get_or<std::uint64_t>(rule, "seed", ctx.seed));
  }
  throw Error(ErrorKind::invalid_argument, "unknown delta_rule kind '" + kind + "'");
}

inline void cmd_sampling(const Context& ctx, const RunOptions& opts) {
  if (!ctx.config.contains("generator")) throw Error(ErrorKind::invalid_argument, "sampling config needs a 'generator'");
  const Generator g = io::generator_from_json(ctx.config.at("generator"));
  std::vector<std::size_t> sizes;
  if (ctx.ladder_override || ctx.config.contains("ladder")) {
    sizes = ctx.ladder_sizes();
  } else {
    const auto window = io::get<std::size_t>(ctx.config, "window");
    sizes = {window / 4, window / 2, window};
  }
  const TruncationLadder ladder(sizes);
  const SamplingSet x = sampling_set_from_config(ctx, ladder.back());
  const SamplingReport r = stable_sampling_verdict(g, x, ladder, ctx.tol);

  Json report;
  report["meta"] = ctx.meta();
  report["generator"] = io::generator_to_json(g);
  report["bound"] = x.bound();
  const Json body = io::sampling_report_to_json(r);
  for (const auto& [key, value] : body.items()) report[key] = value;
  io::write_text_file(opts.out_path, io::dump(report));
  io::write_text_file(csv_path_for(opts.out_path), io::sampling_csv(r, ctx.meta_comment()));
}

inline void write_family(const Context& ctx, const std::filesystem::path& path, const VectorFamily& f) {
  Json j = io::family_to_json(f);
  j["meta"] = ctx.meta();
  io::write_text_file(path.string(), io::dump(j));
}

/// Writes the inverse-index counterexample (psi, phi, omega) or seeded
/// perturbed families at each requested size into the --out directory.
inline void cmd_fixtures(const Context& ctx, const RunOptions& opts) {
  std::vector<std::size_t> sizes;
  if (ctx.ladder_override) {
    sizes = *ctx.ladder_override;
  } else if (ctx.config.contains("sizes")) {
    sizes = io::sizes_from_json(ctx.config.at("sizes"));
  } else {
    sizes = {8, 16, 32, 64};
  }
  const auto kind = io::get_or<std::string>(ctx.config, "kind", "inverse_index");
  const std::filesystem::path dir(opts.out_path);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::invalid_argument, "cannot create '" + dir.string() + "'");

  if (kind == "perturbed") {
    const double epsilon = io::get_or(ctx.config, "epsilon", 0.3);
    const auto bandwidth = io::get_or<std::size_t>(ctx.config, "bandwidth", 2);
    const bool complex_entries = io::get_or(ctx.config, "complex", false);
    for (const std::size_t n : sizes) {
      write_family(ctx, dir / ("perturbed_N" + std::to_string(n) + ".json"),
                   fixtures::perturbed_onb(n, epsilon, bandwidth, ctx.seed, complex_entries));
    }
    return;
  }
  if (kind != "inverse_index") throw Error(ErrorKind::invalid_argument, "unknown fixture kind '" + kind + "'");

  std::ostringstream csv;
  csv << "# " << ctx.meta_comment() << "\n";
  csv << "size,frame_lower,frame_upper,omega_lambda_min,omega_cond_2,psi_min_norm\n";
  for (const std::size_t n : sizes) {
    const FamilyPair pair = fixtures::inverse_index_pair(n);
    const std::string stem = "inverse_index_N" + std::to_string(n);
    write_family(ctx, dir / (stem + "_psi.json"), pair.psi);
    write_family(ctx, dir / (stem + "_phi.json"), pair.phi);
    write_family(ctx, dir / (stem + "_omega.json"), rdual(pair.psi, pair.phi, ctx.tol));
    const double nn = static_cast<double>(n);
    csv << n << ',' << io::csv_number(1.0 / (nn * nn)) << ',' << io::csv_number(1.0) << ','
        << io::csv_number(1.0 / (nn * nn)) << ',' << io::csv_number(nn * nn) << ',' << io::csv_number(1.0 / nn)
        << "\n";
  }
  io::write_text_file((dir / "inverse_index_expected.csv").string(), csv.str());
}

/// Dispatches one subcommand; errors go to `err` and map to exit codes.
inline int run(const std::string& command, const RunOptions& opts, std::ostream& err = std::cerr) {
  try {
    const Context ctx = make_context(command, opts, command != "fixtures");
    if (command == "analyze") cmd_analyze(ctx, opts);
    else if (command == "rdual") cmd_rdual(ctx, opts);
    else if (command == "battery") cmd_battery(ctx, opts);
    else if (command == "sampling") cmd_sampling(ctx, opts);
    else if (command == "fixtures") cmd_fixtures(ctx, opts);
    else throw Error(ErrorKind::invalid_argument, "unknown command '" + command + "'");
    return 0;
  } catch (const Error& e) {
    err << "framelab " << command << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "framelab " << command << ": parse-error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "framelab " << command << ": numerical-failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace framelab::cli
