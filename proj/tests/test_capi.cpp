#include <cstring>
#include <filesystem>
#include <string>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scembed/scembed.h"

namespace fs = std::filesystem;

TEST_CASE("primitives") {
  CHECK(std::strlen(sce_version()) > 0);
  int flag = -1;
  CHECK(sce_is_aperiodic("aaaaaa", 6, &flag) == SCE_OK);
  CHECK(flag == 0);
  CHECK(sce_is_aperiodic("ab", 6, &flag) == SCE_OK);
  CHECK(flag == 1);
  CHECK(sce_is_aperiodic("ab", 1, &flag) == SCE_INPUT_ERROR);
  CHECK(std::string(sce_last_error()).find("Exponent") != std::string::npos);

  char* reduced = nullptr;
  CHECK(sce_free_reduce("abBA", &reduced) == SCE_OK);
  CHECK(std::string(reduced).empty());
  sce_free(reduced);
  CHECK(sce_free_reduce("abx", &reduced) == SCE_INPUT_ERROR);
  CHECK(sce_free_reduce(nullptr, &reduced) == SCE_INPUT_ERROR);

  size_t len = 0;
  CHECK(sce_lcf_cyclic("aab", "abb", &len) == SCE_OK);
  CHECK(len == 2);
  CHECK(sce_lcf_cyclic("aA", "b", &len) == SCE_INPUT_ERROR);

  const char* fam[] = {"aab"};
  CHECK(sce_check_cstar(fam, 1, "9/10", &flag) == SCE_OK);
  CHECK(flag == 1);
  const char* power[] = {"aaaaaa"};
  CHECK(sce_check_cstar(power, 1, "1/2", &flag) == SCE_OK);
  CHECK(flag == 0);
  CHECK(sce_check_cstar(power, 1, "half", &flag) == SCE_INPUT_ERROR);
}

TEST_CASE("sessions") {
  sce_session* s = nullptr;
  CHECK(sce_session_create("{\"bogus\": 1}", &s) == SCE_INPUT_ERROR);
  CHECK(s == nullptr);
  CHECK(sce_session_create("not json", &s) == SCE_INPUT_ERROR);
  REQUIRE(sce_session_create(nullptr, &s) == SCE_OK);

  const fs::path out = fs::temp_directory_path() / "scembed_capi";
  fs::remove_all(out);
  const std::string space = "\"" + std::string(SCEMBED_FIXTURES) + "/relaxed_triangle.json\"";
  CHECK(sce_session_set(s, "space", space.c_str()) == SCE_OK);
  CHECK(sce_session_set(s, "out", ("\"" + out.string() + "\"").c_str()) == SCE_OK);
  CHECK(sce_session_set(s, "max_stage", "0") == SCE_INPUT_ERROR);
  CHECK(sce_session_set(s, "max_stage", "1") == SCE_OK);

  char* text = nullptr;
  REQUIRE(sce_session_config_json(s, &text) == SCE_OK);
  CHECK(std::string(text).find("\"max_stage\": 1") != std::string::npos);
  sce_free(text);

  CHECK(sce_run(s, "pipeline") == SCE_OK);
  REQUIRE(sce_session_report_json(s, &text) == SCE_OK);
  CHECK(std::string(text).find("\"verified\": true") != std::string::npos);
  sce_free(text);
  CHECK(fs::exists(out / "verify.json"));

  CHECK(sce_run(s, "nonsense") == SCE_INPUT_ERROR);
  CHECK(sce_run(nullptr, "pipeline") == SCE_INPUT_ERROR);

  CHECK(sce_session_set(s, "oracle_ball_cap", "10") == SCE_OK);
  CHECK(sce_run(s, "verify") == SCE_CAP_EXCEEDED);
  sce_session_destroy(s);

  sce_session* strict = nullptr;
  CHECK(sce_session_create("{\"mode\": \"strict\", \"exponent\": 3}", &strict) == SCE_INPUT_ERROR);
}
