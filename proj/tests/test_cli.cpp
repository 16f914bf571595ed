#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gpen/commands.hpp"
#include "gpen/report.hpp"

using namespace gpen;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_dir(const std::string& tag) {
  const auto dir =
      std::filesystem::temp_directory_path() / ("gpen_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("config round-trips through serialization") {
  const std::string text = R"json({
    "m": 1.0,
    "lambda": 1.0,
    "resolution": [16, 32],
    "seed": 7,
    "surface": {"family": "static_slice", "u": "3 + 0.1*Y(2,2)"},
    "tolerances": {"identity": 1e-9}
  })json";
  const RunConfig a = parse_config_text(text);
  const RunConfig b = parse_config_text(serialize_config(a));
  CHECK(a == b);
  CHECK(a.resolutions.front().first == 16);
  CHECK(a.seed == 7);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config_text(R"json({"mass": 1.0})json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text(R"json({"surface": {"radius": 3}})json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text(R"json({"resolution": [4, 16]})json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text(R"json({"threads": 0})json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("not json"), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config_text(R"json({"surface": {"family": "torus", "u": "3"}})json"),
      std::invalid_argument);
  // Surfaces need a profile.
  CHECK_THROWS_AS(
      parse_config_text(R"json({"surface": {"family": "static_slice"}})json"),
      std::invalid_argument);
}

TEST_CASE("verify command: equality sphere exits 0") {
  RunConfig c = parse_config_text(
      R"json({"resolution": [16, 32],
          "surface": {"family": "static_slice", "u": "3"}})json");
  c.out_dir = temp_dir("verify_ok");
  CHECK(run_command("verify", c) == kExitOk);
  const std::string json = slurp(c.out_dir + "/report.json");
  CHECK(json.find("\"gap\"") != std::string::npos);
  CHECK(json.find("\"equality_case\": true") != std::string::npos);
}

TEST_CASE("verify command: r <= 2m exits 1 with a domain message") {
  RunConfig c = parse_config_text(
      R"json({"resolution": [16, 32],
          "surface": {"family": "static_slice", "u": "1.5"}})json");
  c.out_dir = temp_dir("verify_domain");
  CHECK(run_command("verify", c) == kExitUsage);
}

TEST_CASE("verify command: sub-photon-sphere base exits 3") {
  RunConfig c = parse_config_text(
      R"json({"resolution": [16, 32],
          "surface": {"family": "convex_static", "sigma_hat": "2.5",
                      "tau": "0.1*Y(1,0)"}})json");
  c.out_dir = temp_dir("verify_gate");
  CHECK(run_command("verify", c) == kExitGate);
}

TEST_CASE("family command writes byte-identical CSV for a fixed seed") {
  RunConfig c = parse_config_text(
      R"json({"resolution": [12, 24], "seed": 42, "threads": 2,
          "family": {"family": "static_slice", "base_radius": 3.0,
                     "l_max": 3, "amplitude": 0.05, "count": 8}})json");
  c.out_dir = temp_dir("family_a");
  CHECK(run_command("family", c) == kExitOk);
  const std::string csv_a = slurp(c.out_dir + "/family.csv");

  RunConfig c2 = c;
  c2.out_dir = temp_dir("family_b");
  CHECK(run_command("family", c2) == kExitOk);
  const std::string csv_b = slurp(c2.out_dir + "/family.csv");
  CHECK(csv_a == csv_b);

  // Header row documents the column order.
  CHECK(csv_a.rfind("index,family,m,lambda,seed", 0) == 0);
  // One row per surface plus the header.
  int rows = 0;
  for (char ch : csv_a) rows += (ch == '\n');
  CHECK(rows == 9);
  CHECK(std::filesystem::exists(c.out_dir + "/family_summary.txt"));
  CHECK(slurp(c.out_dir + "/family_summary.txt").find("min_gap=") !=
        std::string::npos);

  // Different thread count, same bytes (chunked by index).
  RunConfig c3 = c;
  c3.threads = 5;
  c3.out_dir = temp_dir("family_c");
  CHECK(run_command("family", c3) == kExitOk);
  CHECK(slurp(c3.out_dir + "/family.csv") == csv_a);
}

TEST_CASE("family command: impossible amplitude exits 3") {
  RunConfig c = parse_config_text(
      R"json({"resolution": [12, 24], "seed": 1,
          "family": {"family": "static_slice", "base_radius": 3.0,
                     "l_max": 3, "amplitude": 10.0, "count": 4}})json");
  c.out_dir = temp_dir("family_reject");
  CHECK(run_command("family", c) == kExitGate);
}

TEST_CASE("converge command flags the rounding floor on spheres") {
  RunConfig c = parse_config_text(
      R"json({"resolutions": [[8,16],[16,32],[32,64]],
          "surface": {"family": "static_slice", "u": "3"}})json");
  c.out_dir = temp_dir("converge");
  CHECK(run_command("converge", c) == kExitOk);
  const std::string csv = slurp(c.out_dir + "/converge.csv");
  CHECK(csv.find("exact") != std::string::npos);
  CHECK(std::filesystem::exists(c.out_dir + "/converge_area.dat"));
}

TEST_CASE("identities command passes at defaults and detects faults") {
  RunConfig c;
  c.resolutions = {{12, 24}};
  c.out_dir = temp_dir("identities");
  CHECK(run_command("identities", c) == kExitOk);
  const std::string txt = slurp(c.out_dir + "/identities.txt");
  CHECK(txt.find("FAIL") == std::string::npos);
  CHECK(txt.find("umbilicity") != std::string::npos);

  RunConfig c2 = c;
  c2.fault_injection = "christoffel";
  c2.out_dir = temp_dir("identities_fault");
  CHECK(run_command("identities", c2) == kExitViolation);
  CHECK(slurp(c2.out_dir + "/identities.txt").find("FAIL") !=
        std::string::npos);
}

TEST_CASE("identities command at non-default parameters") {
  RunConfig c = parse_config_text(R"json({"m": 0.5, "lambda": 2.0,
                                      "resolution": [12, 24]})json");
  c.out_dir = temp_dir("identities_params");
  CHECK(run_command("identities", c) == kExitOk);
}

TEST_CASE("exploratory probe skips gates and labels the result") {
  RunConfig c = parse_config_text(
      R"json({"resolution": [16, 32], "exploratory": true,
          "surface": {"family": "convex_static", "sigma_hat": "2.5",
                      "tau": "0.1*Y(1,0)"}})json");
  c.out_dir = temp_dir("exploratory");
  // The same sub-photon-sphere base that exits 3 under verify goes through.
  CHECK(run_command("verify", c) == kExitOk);
  const std::string json = slurp(c.out_dir + "/report.json");
  CHECK(json.find("exploratory_non_certifying") != std::string::npos);
  CHECK(json.find("general_graph") != std::string::npos);

  // Round-trips through serialization like everything else.
  CHECK(parse_config_text(serialize_config(c)) == c);
}

TEST_CASE("tabulated profile file round-trip through the verify command") {
  const ParameterGrid grid = build_grid(12, 24);
  const ProfileFields f = eval_profile(parse_profile("3 + 0.1*Y(2,1)"), grid);
  const std::string dir = temp_dir("tabulated");
  const std::string path = dir + "/profile.txt";
  std::ofstream out(path);
  out << grid.n_theta << " " << grid.n_phi << "\n";
  for (double v : f.v) out << format_g17(v) << "\n";
  out.close();

  RunConfig c;
  c.has_surface = true;
  c.surface_family = "static_slice";
  c.surface_values_file = path;
  c.resolutions = {{12, 24}};
  c.out_dir = dir;
  CHECK(run_command("verify", c) == kExitOk);

  // Wrong grid header is rejected before any computation.
  RunConfig bad = c;
  bad.resolutions = {{16, 32}};
  CHECK(run_command("verify", bad) == kExitUsage);
}
