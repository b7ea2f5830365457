#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "nugap/io.hpp"

namespace nugap {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

TEST_CASE("plant specs parse with defaults and field-level errors") {
  const auto plant = parse_plant_spec_text(
      R"({"type": "delay_rational", "delay": 1.5, "num": [-3, 1], "den": [-1, 1]})");
  CHECK(plant.delay == 1.5);
  CHECK(plant.num.coeff(0) == -3.0);
  CHECK(plant.num.coeff(1) == 1.0);
  CHECK(plant.den.coeff(0) == -1.0);

  SUBCASE("type and delay are optional") {
    const auto bare = parse_plant_spec_text(R"({"num": [1], "den": [2, 1]})");
    CHECK(bare.delay == 0.0);
  }
  SUBCASE("unknown type") {
    CHECK_THROWS_WITH_AS(parse_plant_spec_text(R"({"type": "pade", "num": [1], "den": [2, 1]})"),
                         doctest::Contains("'type'"), std::invalid_argument);
  }
  SUBCASE("missing coefficients") {
    CHECK_THROWS_WITH_AS(parse_plant_spec_text(R"({"den": [2, 1]})"),
                         doctest::Contains("'num'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_plant_spec_text(R"({"num": [1]})"),
                         doctest::Contains("'den'"), std::invalid_argument);
  }
  SUBCASE("wrong shapes") {
    CHECK_THROWS_WITH_AS(parse_plant_spec_text(R"({"num": 3, "den": [2, 1]})"),
                         doctest::Contains("'num'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_plant_spec_text(R"({"num": [1, "x"], "den": [2, 1]})"),
                         doctest::Contains("'num'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_plant_spec_text(R"({"num": [1], "den": [2, 1], "delay": "soon"})"),
                         doctest::Contains("'delay'"), std::invalid_argument);
  }
  SUBCASE("malformed json") {
    CHECK_THROWS_AS(parse_plant_spec_text("{"), std::invalid_argument);
    CHECK_THROWS_AS(parse_plant_spec_text("[1, 2]"), std::invalid_argument);
  }
}

NuResult sample_result() {
  NuResult res;
  res.value = 0.5;
  res.branch = Branch::norm_branch;
  res.route = Route::limit_route;
  res.invertible = true;
  res.winding = 0;
  CircleScan scan;
  scan.r = 0.75;
  scan.winding = 0;
  scan.min_modulus = 0.25;
  scan.samples_used = 2048;
  scan.converged = true;
  res.margin_curve.push_back(scan);
  NormSearchResult search;
  search.value = 0.5;
  search.argmax_omega = 2.0;
  search.refined = true;
  search.trace = {{0.0, 0.1}, {1.0, 0.4}, {2.0, 0.5}};
  res.norm_search = search;
  return res;
}

TEST_CASE("metric reports serialize with stable keys") {
  const auto j = nu_result_to_json(sample_result());
  CHECK(j["tool"] == "nugap");
  CHECK(j["value"] == 0.5);
  CHECK(j["branch"] == "norm");
  CHECK(j["route"] == "limit");
  CHECK(j["invertible"] == true);
  CHECK(j["winding"] == 0);
  REQUIRE(j["margin_curve"].is_array());
  CHECK(j["margin_curve"].size() == 1);
  CHECK(j["margin_curve"][0]["r"] == 0.75);
  CHECK(j["margin_curve"][0]["samples_used"] == 2048);
  CHECK(j["norm_search"]["argmax_omega"] == 2.0);
  CHECK(j["norm_search"]["trace_points"] == 3);
  CHECK(j["options"]["delta"] == 1e-4);
  CHECK_FALSE(j.contains("rho"));

  NuResult unity = sample_result();
  unity.branch = Branch::unity_branch;
  unity.route = Route::fixed_rho_route;
  unity.rho = 0.9;
  unity.winding.reset();
  unity.norm_search.reset();
  const auto k = nu_result_to_json(unity);
  CHECK(k["branch"] == "unity");
  CHECK(k["route"] == "fixed_rho");
  CHECK(k["rho"] == 0.9);
  CHECK(k["winding"].is_null());
  CHECK(k["norm_search"].is_null());
}

TEST_CASE("csv emitters") {
  const std::string margins = margin_curve_csv(sample_result().margin_curve);
  std::istringstream lines(margins);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "r,winding,min_modulus,samples_used");
  REQUIRE(std::getline(lines, line));
  CHECK(line.find("0.75") == 0);
  CHECK(line.find(",0,") != std::string::npos);

  CircleScan blank;
  blank.r = 0.9375;
  blank.min_modulus = 0.125;
  blank.samples_used = 64;
  const std::string no_winding = margin_curve_csv({blank});
  // Absent winding leaves an empty column.
  CHECK(no_winding.find(",,") != std::string::npos);

  const std::string sweep = sweep_csv(*sample_result().norm_search);
  std::istringstream sweep_lines(sweep);
  REQUIRE(std::getline(sweep_lines, line));
  CHECK(line == "omega,sigma_max");
  int rows = 0;
  while (std::getline(sweep_lines, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("atomic writes land complete and overwrite in place") {
  const auto dir = std::filesystem::temp_directory_path() / "nugap-io-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "report.json";

  write_text_atomic(path, "first\n");
  CHECK(slurp(path) == "first\n");
  write_text_atomic(path, "second\n");
  CHECK(slurp(path) == "second\n");
  // No temporary litter is left behind.
  int entries = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    (void)entry;
    ++entries;
  }
  CHECK(entries == 1);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace nugap
