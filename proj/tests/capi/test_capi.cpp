// Exercises the shared library strictly through its C header.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "sorkin/sorkin.h"

namespace {

std::string take(char* s) {
  std::string out(s);
  sorkin_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("version and names") {
  CHECK(std::string(sorkin_version()) == SORKIN_VERSION);
  CHECK(std::string(sorkin_verdict_name(SORKIN_THIRD_ORDER)) == "THIRD_ORDER");
  CHECK(std::string(sorkin_verify_suite_names()).find("octonion") != std::string::npos);
}

TEST_CASE("campaign round trip") {
  sorkin_campaign_config* cfg = nullptr;
  REQUIRE(sorkin_campaign_config_create(&cfg) == SORKIN_OK);
  CHECK(sorkin_campaign_config_set_theory(cfg, "quantum") == SORKIN_OK);
  CHECK(sorkin_campaign_config_set_dimension(cfg, 3) == SORKIN_OK);
  CHECK(sorkin_campaign_config_set_trials(cfg, 200) == SORKIN_OK);
  CHECK(sorkin_campaign_config_set_seed(cfg, 7) == SORKIN_OK);
  CHECK(sorkin_campaign_config_set_rank_one(cfg, 1) == SORKIN_OK);
  CHECK(sorkin_campaign_config_set_threads(cfg, 2) == SORKIN_OK);

  sorkin_campaign_report* rep = nullptr;
  REQUIRE(sorkin_campaign_run(cfg, &rep) == SORKIN_OK);
  CHECK(sorkin_campaign_report_verdict(rep) == SORKIN_SECOND_ORDER_ONLY);
  CHECK(sorkin_campaign_report_expected(rep) == SORKIN_SECOND_ORDER_ONLY);
  CHECK(sorkin_campaign_report_matches(rep) == 1);
  CHECK(sorkin_campaign_report_max_abs_i3(rep) <= 1e-10);
  CHECK(sorkin_campaign_report_max_abs_i2(rep) > 0.01);
  CHECK(sorkin_campaign_report_max_identity_residual(rep) <= 1e-12);
  CHECK(sorkin_campaign_report_fraction_i2_significant(rep) >= 0.5);

  char* json = nullptr;
  REQUIRE(sorkin_campaign_report_json(rep, 0, &json) == SORKIN_OK);
  const std::string bare = take(json);
  CHECK(bare.find("\"verdict\": \"SECOND_ORDER_ONLY\"") != std::string::npos);
  CHECK(bare.find("manifest") == std::string::npos);
  REQUIRE(sorkin_campaign_report_json(rep, 1, &json) == SORKIN_OK);
  CHECK(take(json).find("\"manifest\"") != std::string::npos);

  sorkin_campaign_report_destroy(rep);
  sorkin_campaign_config_destroy(cfg);
}

TEST_CASE("errors map to status codes with messages") {
  sorkin_campaign_config* cfg = nullptr;
  REQUIRE(sorkin_campaign_config_create(&cfg) == SORKIN_OK);
  CHECK(sorkin_campaign_config_set_theory(cfg, "astral") == SORKIN_INVALID_ARGUMENT);
  CHECK(std::string(sorkin_last_error_message()).find("astral") != std::string::npos);
  CHECK(sorkin_campaign_config_set_trials(cfg, 0) == SORKIN_INVALID_ARGUMENT);
  CHECK(sorkin_campaign_config_set_thresholds(cfg, 0.5, 0.1) == SORKIN_INVALID_ARGUMENT);
  CHECK(sorkin_campaign_config_set_theory(cfg, "quantum") == SORKIN_OK);
  CHECK(std::string(sorkin_last_error_message()).empty());
  CHECK(sorkin_campaign_config_set_dimension(cfg, 99) == SORKIN_OK);
  sorkin_campaign_report* rep = nullptr;
  CHECK(sorkin_campaign_run(cfg, &rep) == SORKIN_INVALID_ARGUMENT);
  CHECK(rep == nullptr);
  sorkin_campaign_config_destroy(cfg);

  CHECK(sorkin_campaign_config_create(nullptr) == SORKIN_INVALID_ARGUMENT);
  CHECK(sorkin_campaign_run(nullptr, &rep) == SORKIN_INVALID_ARGUMENT);

  sorkin_slits_config* sc = nullptr;
  CHECK(sorkin_slits_config_parse("wavelength = x\n", &sc) == SORKIN_CONFIG);
  CHECK(std::string(sorkin_last_error_message()).rfind("line 1:", 0) == 0);
  CHECK(sorkin_slits_config_load("/nonexistent.toml", &sc) == SORKIN_IO);
  CHECK(sc == nullptr);
}

TEST_CASE("slits through the C API") {
  sorkin_slits_config* sc = nullptr;
  REQUIRE(sorkin_slits_config_default(&sc) == SORKIN_OK);
  sorkin_slits_result* res = nullptr;
  REQUIRE(sorkin_slits_run(sc, &res) == SORKIN_OK);
  CHECK(sorkin_slits_result_max_relative_residual(res) <= 1e-12);
  CHECK(sorkin_slits_result_detector_count(res) == 1001);
  char* csv = nullptr;
  REQUIRE(sorkin_slits_result_csv(res, &csv) == SORKIN_OK);
  CHECK(take(csv).find("x,P123,P12,P13,P23,P1,P2,P3,residual") != std::string::npos);
  CHECK(sorkin_slits_result_write_csv(res, "/nonexistent/dir/out.csv") == SORKIN_IO);
  sorkin_slits_result_destroy(res);
  sorkin_slits_config_destroy(sc);

  const char* text =
      "wavelength = 8.1e-7\nslit_width = 3e-5\nslit_centers = [-1e-4, 0, 1e-4]\n"
      "screen_distance = 0.18\ndetector_min = -5e-3\ndetector_max = 5e-3\n"
      "detector_count = 101\nresponse = saturating\nepsilon = 0.1\n";
  REQUIRE(sorkin_slits_config_parse(text, &sc) == SORKIN_OK);
  REQUIRE(sorkin_slits_run(sc, &res) == SORKIN_OK);
  CHECK(sorkin_slits_result_max_relative_residual(res) > 1e-3);
  sorkin_slits_result_destroy(res);
  sorkin_slits_config_destroy(sc);
}

TEST_CASE("verify through the C API") {
  sorkin_verify_result* vr = nullptr;
  REQUIRE(sorkin_verify_run("classical,slits", -1, -1, 0, &vr) == SORKIN_OK);
  CHECK(sorkin_verify_result_suite_count(vr) == 2);
  CHECK(sorkin_verify_result_all_passed(vr) == 1);
  char* summary = nullptr;
  REQUIRE(sorkin_verify_result_summary(vr, &summary) == SORKIN_OK);
  CHECK(take(summary).find("slits") != std::string::npos);
  sorkin_verify_result_destroy(vr);

  REQUIRE(sorkin_verify_run("octonion", 1, 2, 0, &vr) == SORKIN_OK);
  CHECK(sorkin_verify_result_all_passed(vr) == 0);
  sorkin_verify_result_destroy(vr);

  CHECK(sorkin_verify_run("octonion", 9, 2, 0, &vr) == SORKIN_INVALID_ARGUMENT);
  CHECK(sorkin_verify_run("nonsense", -1, -1, 0, &vr) == SORKIN_INVALID_ARGUMENT);
}

TEST_CASE("octonions through the C API") {
  const double e1[8] = {0, 1, 0, 0, 0, 0, 0, 0};
  const double e2[8] = {0, 0, 1, 0, 0, 0, 0, 0};
  double out[8];
  sorkin_octonion_mul(e1, e2, out);
  for (int i = 0; i < 8; ++i) CHECK(out[i] == (i == 3 ? 1.0 : 0.0));
  char* csv = nullptr;
  REQUIRE(sorkin_octonion_table_csv(&csv) == SORKIN_OK);
  const std::string table = take(csv);
  CHECK(table.rfind("i,j,k,sign\n", 0) == 0);
  CHECK(table.find("\n1,2,3,1\n") != std::string::npos);
}
