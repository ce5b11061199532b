#include <doctest.h>

#include <dfkg/dfkg.h>

#include <cstring>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kConfig = R"(
s = 2.0
analyses = ["classify", "gcc_check"]
[grid]
d = 1
L = 20.0
N = 16
[damping]
kind = "preset"
name = "interval-gap"
[gcc_check]
epsilon = 0.5
r = 2.0
ell = 6.0
centers_per_axis = 12
segment_samples = 96
)";

}  // namespace

TEST_CASE("c api: version and error strings") {
  CHECK(std::strlen(dfkg_version()) > 0);
  CHECK(dfkg_last_error() != nullptr);
}

TEST_CASE("c api: parse, run, report lifecycle") {
  dfkg_scenario* sc = nullptr;
  REQUIRE(dfkg_scenario_parse(kConfig, "capi-test", &sc) == DFKG_OK);
  REQUIRE(sc != nullptr);
  CHECK(std::string(dfkg_scenario_name(sc)) == "capi-test");

  const fs::path dir = fs::temp_directory_path() / "dfkg_capi_test";
  fs::remove_all(dir);
  CHECK(dfkg_scenario_set_output_dir(sc, dir.string().c_str()) == DFKG_OK);
  CHECK(dfkg_scenario_set_workers(sc, 1) == DFKG_OK);

  dfkg_report* rep = nullptr;
  CHECK(dfkg_run(sc, &rep) == DFKG_OK);
  REQUIRE(rep != nullptr);
  CHECK(dfkg_report_all_completed(rep) == 1);
  const std::string json = dfkg_report_json(rep);
  CHECK(json.find("\"schema_version\"") != std::string::npos);
  CHECK(json.find("exponential") != std::string::npos);
  CHECK(fs::exists(dfkg_report_path(rep)));

  dfkg_report_free(rep);
  dfkg_scenario_free(sc);
  fs::remove_all(dir);
}

TEST_CASE("c api: restriction to one analysis") {
  dfkg_scenario* sc = nullptr;
  REQUIRE(dfkg_scenario_parse(kConfig, "capi-restrict", &sc) == DFKG_OK);
  CHECK(dfkg_scenario_restrict(sc, "classify") == DFKG_OK);
  CHECK(dfkg_scenario_restrict(sc, "bogus") == DFKG_ERR_VALIDATION);
  CHECK(std::string(dfkg_last_error()).find("bogus") != std::string::npos);

  const fs::path dir = fs::temp_directory_path() / "dfkg_capi_restrict";
  fs::remove_all(dir);
  dfkg_scenario_set_output_dir(sc, dir.string().c_str());
  dfkg_report* rep = nullptr;
  CHECK(dfkg_run(sc, &rep) == DFKG_OK);
  const std::string json = dfkg_report_json(rep);
  CHECK(json.find("\"classify\"") != std::string::npos);
  CHECK(json.find("\"gcc_check\"") == std::string::npos);
  dfkg_report_free(rep);
  dfkg_scenario_free(sc);
  fs::remove_all(dir);
}

TEST_CASE("c api: validation failures set the error message") {
  dfkg_scenario* sc = nullptr;
  CHECK(dfkg_scenario_parse("s = -1.0\n", "bad", &sc) == DFKG_ERR_VALIDATION);
  CHECK(sc == nullptr);
  CHECK(std::strlen(dfkg_last_error()) > 0);

  CHECK(dfkg_scenario_load("/no/such/file.toml", &sc) == DFKG_ERR_VALIDATION);
  CHECK(sc == nullptr);

  CHECK(dfkg_scenario_parse(nullptr, "x", &sc) == DFKG_ERR_VALIDATION);
  CHECK(dfkg_run(nullptr, nullptr) == DFKG_ERR_VALIDATION);
}
