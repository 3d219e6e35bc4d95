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

// framelab: frame, localization and sampling diagnostics from JSON configs.

#include "framelab/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"framelab: frame bounds, R-duals, localization and sampling diagnostics"};
  app.set_version_flag("--version", std::string(framelab::version));
  app.require_subcommand(1);

  framelab::cli::RunOptions opts;
  std::uint64_t seed = 0;
  double tol_frame = 0.0;
  std::string ladder;

  const auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* config = sub->add_option("--config", opts.config_path, "JSON configuration file");
    if (config_required) config->required();
    sub->add_option("--out", opts.out_path, "output file (directory for fixtures)")->required();
    sub->add_option("--seed", seed, "random seed recorded in every output");
    sub->add_option("--tol-frame", tol_frame, "threshold below which a lower bound counts as zero");
    sub->add_option("--ladder", ladder, "comma-separated truncation sizes, e.g. 16,32,64");
  };

  add_common(app.add_subcommand("analyze", "frame and Riesz bounds, Gram localization norms"), true);
  add_common(app.add_subcommand("rdual", "R-dual family, duality and factorization checks"), true);
  add_common(app.add_subcommand("battery", "ten-condition equivalence battery along a ladder"), true);
  add_common(app.add_subcommand("sampling", "stable-sampling verdict for a shift-invariant space"), true);
  add_common(app.add_subcommand("fixtures", "write the inverse-index counterexample or seeded families"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed") > 0) opts.seed = seed;
  if (sub->count("--tol-frame") > 0) opts.tol_frame = tol_frame;
  if (sub->count("--ladder") > 0) opts.ladder = ladder;
  return framelab::cli::run(sub->get_name(), opts);
}
