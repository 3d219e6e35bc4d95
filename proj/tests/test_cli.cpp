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

#include "framelab/commands.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace framelab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "framelab_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FRAMELAB_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

io::Json load(const fs::path& p) { return io::read_json_file(p.string()); }

void write(const fs::path& p, const std::string& text) { io::write_text_file(p.string(), text); }

std::string config(const std::string& name) { return std::string(FRAMELAB_CONFIG_DIR) + "/" + name; }

}  // namespace

TEST(Cli, AnalyzeOrthonormalBasis) {
  const fs::path dir = scratch("analyze_onb");
  write(dir / "onb.json", io::dump(io::family_to_json(VectorFamily::standard_basis(5))));
  ASSERT_EQ(run_cli("analyze --config " + (dir / "onb.json").string() + " --out " + (dir / "r.json").string()), 0);
  const io::Json r = load(dir / "r.json");
  EXPECT_EQ(r["frame_bounds"]["lower"].get<double>(), 1.0);
  EXPECT_EQ(r["frame_bounds"]["upper"].get<double>(), 1.0);
  for (const auto& entry : r["gram_norms"]) EXPECT_EQ(entry["value"].get<double>(), 1.0);
  EXPECT_TRUE(r["decay_fit"].is_null());
  EXPECT_EQ(r["meta"]["version"].get<std::string>(), std::string(version));
  EXPECT_EQ(r["meta"]["tolerances"]["frame"].get<double>(), 1e-10);
}

TEST(Cli, FixturesFeedAnalyzeAndRDual) {
  const fs::path dir = scratch("fixtures");
  ASSERT_EQ(run_cli("fixtures --out " + dir.string() + " --ladder 1,4,16,64"), 0);
  ASSERT_EQ(run_cli("analyze --config " + (dir / "inverse_index_N16_psi.json").string() + " --out " +
                    (dir / "a16.json").string()),
            0);
  EXPECT_NEAR(load(dir / "a16.json")["frame_bounds"]["lower"].get<double>(), 1.0 / 256.0, 1e-14);

  write(dir / "rdual4.json", R"({"psi": "inverse_index_N4_psi.json", "phi": "inverse_index_N4_phi.json"})");
  ASSERT_EQ(run_cli("rdual --config " + (dir / "rdual4.json").string() + " --out " + (dir / "r4.json").string()), 0);
  const io::Json r4 = load(dir / "r4.json");
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const double expected = k == l ? 1.0 / ((k + 1) * (k + 1)) : 0.0;
      EXPECT_NEAR(r4["rdual_gram"][k][l][0].get<double>(), expected, 1e-15);
      EXPECT_NEAR(r4["rdual_gram"][k][l][1].get<double>(), 0.0, 1e-15);
    }
  }
  EXPECT_TRUE(r4["duality"]["agree"].get<bool>());

  const VectorFamily omega1 = io::family_from_json(load(dir / "inverse_index_N1_omega.json"));
  EXPECT_EQ(omega1.coeffs()(0, 0), Complex(1.0, 0.0));

  // The size-64 file round-trips to the in-process construction bit for bit.
  const auto pair = fixtures::inverse_index_pair(64);
  const VectorFamily omega = rdual(pair.psi, pair.phi);
  EXPECT_EQ((io::family_from_json(load(dir / "inverse_index_N64_omega.json")).coeffs() - omega.coeffs())
                .cwiseAbs()
                .maxCoeff(),
            0.0);
  EXPECT_EQ((io::family_from_json(load(dir / "inverse_index_N64_psi.json")).coeffs() - pair.psi.coeffs())
                .cwiseAbs()
                .maxCoeff(),
            0.0);
  const std::string csv = slurp(dir / "inverse_index_expected.csv");
  EXPECT_EQ(csv.rfind("# framelab", 0), 0u);
  EXPECT_NE(csv.find("\n16,0.00390625,1.0,0.00390625,256.0,0.0625\n"), std::string::npos);
}

TEST(Cli, BatteryAndSamplingReports) {
  const fs::path dir = scratch("reports");
  ASSERT_EQ(run_cli("battery --config " + config("battery_inverse_index.json") + " --out " +
                    (dir / "b.json").string()),
            0);
  const io::Json b = load(dir / "b.json");
  EXPECT_TRUE(b["consistent"].get<bool>());
  ASSERT_EQ(b["conditions"].size(), 10u);
  for (const auto& c : b["conditions"]) EXPECT_EQ(c["verdict"].get<std::string>(), "fail");
  EXPECT_EQ(b["meta"]["seed"].get<std::uint64_t>(), 7u);
  EXPECT_TRUE(fs::exists(dir / "b.csv"));

  ASSERT_EQ(run_cli("sampling --config " + config("sampling_cubic.json") + " --out " + (dir / "s.json").string() +
                    " --ladder 32,64"),
            0);
  const io::Json s = load(dir / "s.json");
  EXPECT_TRUE(s["stable"].get<bool>());
  EXPECT_EQ(s["conditions"][1]["id"].get<std::string>(), "b");
  const std::string csv = slurp(dir / "s.csv");
  EXPECT_NE(csv.find("window,lambda_min_interior"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("exit_codes");
  write(dir / "broken.json", "{\"coeffs\": [");
  EXPECT_EQ(run_cli("analyze --config " + (dir / "broken.json").string() + " --out " + (dir / "o.json").string()), 2);
  EXPECT_EQ(run_cli("analyze --config " + (dir / "missing.json").string() + " --out " + (dir / "o.json").string()), 2);
  write(dir / "shape.json", R"({"ambient_dim": 2, "member_count": 2, "coeffs": [[[1, 0], [0, 0]]]})");
  EXPECT_EQ(run_cli("analyze --config " + (dir / "shape.json").string() + " --out " + (dir / "o.json").string()), 2);
  EXPECT_EQ(run_cli("fixtures --out " + (dir / "fx").string() + " --ladder 0"), 2);
  EXPECT_EQ(run_cli("battery --config " + config("battery_inverse_index.json") + " --out " +
                    (dir / "o.json").string() + " --ladder 8"),
            2);
  EXPECT_EQ(run_cli("nonsense --out x"), 2);

  // A singular reference family is a numerical failure.
  write(dir / "singular.json", R"({"ambient_dim": 2, "member_count": 2, "coeffs": [[[1, 0], [1, 0]], [[0, 0], [0, 0]]]})");
  write(dir / "rdual.json", R"({"psi": "singular.json", "phi": "singular.json"})");
  EXPECT_EQ(run_cli("rdual --config " + (dir / "rdual.json").string() + " --out " + (dir / "o.json").string()), 3);

  // Failed precondition evidence: a zero growth allowance rejects any change in the reference norm.
  write(dir / "strict.json",
        R"({"family": {"psi": "identity", "reference": "banded_riesz"}, "ladder": [2, 16], "tolerances": {"growth": 0.0}})");
  EXPECT_EQ(run_cli("battery --config " + (dir / "strict.json").string() + " --out " + (dir / "o.json").string()), 4);
  write(dir / "slow.json", R"({"generator": {"kind": "tabulated", "grid": {"start": -1, "step": 0.5,
        "samples": [0, 0.5, 1, 0.5, 0], "decay_exponent": 1.0}}, "ladder": [16, 32]})");
  EXPECT_EQ(run_cli("sampling --config " + (dir / "slow.json").string() + " --out " + (dir / "o.json").string()), 4);
  write(dir / "violate.json", R"({"generator": {"kind": "bspline", "degree": 3}, "deltas": [0, 0.7, 0, 0, 0, 0, 0, 0],
        "bound": 0.5, "ladder": [4, 8]})");
  EXPECT_EQ(run_cli("sampling --config " + (dir / "violate.json").string() + " --out " + (dir / "o.json").string()), 2);
}

TEST(Cli, SeedOverrideChangesOnlyRecordedSeedAndSeededData) {
  const fs::path dir = scratch("seed");
  ASSERT_EQ(run_cli("analyze --config " + config("analyze_perturbed.json") + " --out " + (dir / "a.json").string()), 0);
  ASSERT_EQ(run_cli("analyze --config " + config("analyze_perturbed.json") + " --out " + (dir / "b.json").string() +
                    " --seed 6"),
            0);
  const io::Json a = load(dir / "a.json");
  const io::Json b = load(dir / "b.json");
  EXPECT_EQ(a["meta"]["seed"].get<std::uint64_t>(), 5u);
  EXPECT_EQ(b["meta"]["seed"].get<std::uint64_t>(), 6u);
  EXPECT_NE(a["meta"]["config_hash"], b["meta"]["config_hash"]);
  EXPECT_NE(a["frame_bounds"]["lower"], b["frame_bounds"]["lower"]);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const fs::path dir = scratch("determinism");
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"analyze", "analyze_perturbed.json"},  {"battery", "battery_perturbed.json"},
      {"rdual", "rdual_ladder.json"},         {"sampling", "sampling_box_jitter.json"}};
  for (const auto& [command, cfg] : runs) {
    for (const char* tag : {"1", "2"}) {
      ASSERT_EQ(run_cli(command + " --config " + config(cfg) + " --out " + (dir / (command + tag + ".json")).string()),
                0);
    }
    EXPECT_EQ(slurp(dir / (command + "1.json")), slurp(dir / (command + "2.json"))) << command;
  }
  EXPECT_EQ(slurp(dir / "sampling1.csv"), slurp(dir / "sampling2.csv"));
}

TEST(Cli, InProcessRunMatchesExitCodeMapping) {
  EXPECT_EQ(cli::exit_code(ErrorKind::parse_error), 2);
  EXPECT_EQ(cli::exit_code(ErrorKind::not_positive_definite), 3);
  EXPECT_EQ(cli::exit_code(ErrorKind::precondition_evidence), 4);
  std::ostringstream err;
  cli::RunOptions opts;
  opts.out_path = "unused.json";
  EXPECT_EQ(cli::run("battery", opts, err), 2);
  EXPECT_NE(err.str().find("--config"), std::string::npos);
}
