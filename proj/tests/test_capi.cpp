#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qaffine/qaffine_c.h"

// The C surface is exercised exactly as an external client would use it:
// through the header, checking status codes, last-error text and the JSON
// payloads, never reaching into C++ types.

namespace {

struct AlgebraHandle {
  qaf_algebra* a = nullptr;
  explicit AlgebraHandle(const char* name) { REQUIRE(qaf_algebra_create_catalog(name, &a) == QAF_OK); }
  ~AlgebraHandle() { qaf_algebra_destroy(a); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { qaf_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

qaf_job_options plain_options() {
  qaf_job_options opt{};
  opt.cache_dir = nullptr;
  opt.lambda0 = nullptr;
  opt.seed = 0;
  opt.use_seed = 0;
  opt.allow_nonintegrable = 0;
  return opt;
}

}  // namespace

TEST_CASE("abi version and string_free(NULL)") {
  CHECK(qaf_abi_version() >= 1);
  qaf_string_free(nullptr);
}

TEST_CASE("catalog list is JSON with partner links") {
  OwnedString out;
  out.s = qaf_catalog_list();
  REQUIRE(out.s != nullptr);
  auto j = nlohmann::json::parse(out.str());
  REQUIRE(j.is_array());
  CHECK(j.size() >= 9);
  bool saw_b1 = false, saw_a4 = false;
  for (const auto& row : j) {
    if (row.at("name") == "B1_0_1") {
      saw_b1 = true;
      CHECK(row.at("rank") == 1);
      CHECK(row.at("partner") == "A2_2");
    }
    if (row.at("name") == "A4_0_2") {
      saw_a4 = true;
      CHECK(row.at("partner").is_null());
    }
  }
  CHECK(saw_b1);
  CHECK(saw_a4);
}

TEST_CASE("handle lifecycle, partner and export round-trip") {
  AlgebraHandle b1("B1_0_1");

  qaf_algebra* partner = nullptr;
  REQUIRE(qaf_algebra_partner(b1.a, &partner) == QAF_OK);
  OwnedString pjson;
  pjson.s = qaf_algebra_export_json(partner);
  qaf_algebra_destroy(partner);
  auto pj = nlohmann::json::parse(pjson.str());
  CHECK(pj.at("name") == "A2_2");

  OwnedString exported;
  exported.s = qaf_algebra_export_json(b1.a);
  REQUIRE(exported.s != nullptr);
  CHECK(qaf_validate_json(exported.s) == QAF_OK);

  qaf_algebra* reparsed = nullptr;
  REQUIRE(qaf_algebra_create_json(exported.s, &reparsed) == QAF_OK);
  OwnedString again;
  again.s = qaf_algebra_export_json(reparsed);
  qaf_algebra_destroy(reparsed);
  CHECK(again.str() == exported.str());

  // The exceptional family has no transmutation partner.
  AlgebraHandle a4("A4_0_2");
  qaf_algebra* none = nullptr;
  CHECK(qaf_algebra_partner(a4.a, &none) == QAF_BAD_INPUT);
  CHECK(none == nullptr);
  CHECK(std::string(qaf_last_error()).find("no transmutation partner") != std::string::npos);
}

TEST_CASE("create and validate classify bad input") {
  qaf_algebra* a = nullptr;
  CHECK(qaf_algebra_create_catalog("E8_0_1", &a) == QAF_BAD_INPUT);
  CHECK(a == nullptr);
  CHECK(std::string(qaf_last_error()).find("E8_0_1") != std::string::npos);

  // Unparseable text: bad input. Well-formed JSON violating an invariant:
  // check failed. The distinction drives the CLI exit codes.
  CHECK(qaf_validate_json("{ not json") == QAF_BAD_INPUT);
  CHECK(qaf_validate_json("[1,2,3]") == QAF_BAD_INPUT);
  CHECK(qaf_validate_json(
            R"({"matrix": [[2,-2],[-2,2]], "theta": [7], "d": [1,1]})") == QAF_CHECK_FAILED);
  CHECK(std::string(qaf_last_error()).find("out of range") != std::string::npos);
  CHECK(qaf_validate_json(
            R"({"matrix": [[2,-2],[-2,2]], "theta": [], "d": [1,1]})") == QAF_OK);

  CHECK(qaf_algebra_create_catalog(nullptr, &a) == QAF_BAD_INPUT);
  CHECK(qaf_validate_json(nullptr) == QAF_BAD_INPUT);
}

TEST_CASE("character JSON has the frozen shape and defaults") {
  AlgebraHandle b1("B1_0_1");
  qaf_job_options opt = plain_options();
  OwnedString out;
  REQUIRE(qaf_character(b1.a, "0,2", 2, &opt, &out.s) == QAF_OK);
  auto j = nlohmann::json::parse(out.str());
  CHECK(j.at("algebra") == "B1_0_1");
  CHECK(j.at("highest_weight_labels") == nlohmann::json::array({"0", "2"}));
  CHECK(j.at("lambda0_coeff") == "1");
  CHECK(j.at("depth") == 2);
  CHECK(!j.contains("partial"));
  CHECK(!j.contains("elapsed_ms"));
  // Graded-lex over total height, zero multiplicities included.
  const nlohmann::json expected = nlohmann::json::parse(R"([
    {"alpha_coords": [0, 0], "multiplicity": 1},
    {"alpha_coords": [0, 1], "multiplicity": 1},
    {"alpha_coords": [1, 0], "multiplicity": 0},
    {"alpha_coords": [0, 2], "multiplicity": 1},
    {"alpha_coords": [1, 1], "multiplicity": 1},
    {"alpha_coords": [2, 0], "multiplicity": 0}
  ])");
  CHECK(j.at("entries") == expected);

  OwnedString dflt;
  REQUIRE(qaf_character(b1.a, "0,2", -1, &opt, &dflt.s) == QAF_OK);
  CHECK(nlohmann::json::parse(dflt.str()).at("depth") == 5);
}

TEST_CASE("character CSV projection") {
  AlgebraHandle b1("B1_0_1");
  qaf_job_options opt = plain_options();
  OwnedString out;
  REQUIRE(qaf_character_csv(b1.a, "0,2", 1, &opt, &out.s) == QAF_OK);
  CHECK(out.str() == "alpha0,alpha1,multiplicity\n0,0,1\n0,1,1\n1,0,0\n");
}

TEST_CASE("character rejects bad labels and wrong lambda0 claims") {
  AlgebraHandle b1("B1_0_1");
  qaf_job_options opt = plain_options();
  OwnedString out;
  CHECK(qaf_character(b1.a, "0,1", 2, &opt, &out.s) == QAF_BAD_INPUT);
  CHECK(out.s == nullptr);
  CHECK(std::string(qaf_last_error()).find("integrable") != std::string::npos);

  opt.allow_nonintegrable = 1;
  CHECK(qaf_character(b1.a, "0,1", 2, &opt, &out.s) == QAF_OK);
  qaf_string_free(out.s);
  out.s = nullptr;
  opt.allow_nonintegrable = 0;

  opt.lambda0 = "1";
  CHECK(qaf_character(b1.a, "0,2", 1, &opt, &out.s) == QAF_OK);
  qaf_string_free(out.s);
  out.s = nullptr;
  opt.lambda0 = "3";
  CHECK(qaf_character(b1.a, "0,2", 1, &opt, &out.s) == QAF_BAD_INPUT);
  CHECK(std::string(qaf_last_error()).find("lambda0") != std::string::npos);
  opt.lambda0 = nullptr;

  CHECK(qaf_character(b1.a, "0,1/3", 2, &opt, &out.s) == QAF_BAD_INPUT);
  CHECK(qaf_character(b1.a, "0,2,5", 2, &opt, &out.s) == QAF_BAD_INPUT);
  CHECK(qaf_character(b1.a, nullptr, 2, &opt, &out.s) == QAF_BAD_INPUT);
}

TEST_CASE("verify maps pass, fail and bad kinds to statuses") {
  AlgebraHandle b1("B1_0_1");
  qaf_job_options opt = plain_options();

  OwnedString pass;
  REQUIRE(qaf_verify(b1.a, "serre", "0,2", nullptr, 2, 0, &opt, &pass.s) == QAF_OK);
  auto pj = nlohmann::json::parse(pass.str());
  CHECK(pj.at("check") == "serre");
  CHECK(pj.at("status") == "pass");
  CHECK(pj.at("counterexample").is_null());
  CHECK(pj.at("depth") == 2);

  OwnedString fail;
  CHECK(qaf_verify(b1.a, "twist", "0,2", nullptr, 2, 1, &opt, &fail.s) == QAF_CHECK_FAILED);
  auto fj = nlohmann::json::parse(fail.str());
  CHECK(fj.at("check") == "twist");
  CHECK(fj.at("status") == "fail");
  CHECK(!fj.at("counterexample").is_null());

  OwnedString none;
  CHECK(qaf_verify(b1.a, "spectral", "0,2", nullptr, 2, 0, &opt, &none.s) == QAF_BAD_INPUT);
  CHECK(none.s == nullptr);

  // Module checks need labels; presentation checks do not.
  OwnedString missing;
  CHECK(qaf_verify(b1.a, "serre", nullptr, nullptr, 2, 0, &opt, &missing.s) == QAF_BAD_INPUT);
  OwnedString pres;
  CHECK(qaf_verify(b1.a, "presentation", nullptr, nullptr, -1, 0, &opt, &pres.s) == QAF_OK);
  CHECK(nlohmann::json::parse(pres.str()).at("check") == "presentation");
}

TEST_CASE("specialized presentation report is honest about the clash") {
  qaf_job_options opt = plain_options();

  AlgebraHandle a4("A4_0_2");
  OwnedString ok;
  CHECK(qaf_verify(a4.a, "specialized", nullptr, nullptr, -1, 0, &opt, &ok.s) == QAF_OK);

  AlgebraHandle b1("B1_0_1");
  OwnedString bad;
  CHECK(qaf_verify(b1.a, "specialized", nullptr, nullptr, -1, 0, &opt, &bad.s) ==
        QAF_CHECK_FAILED);
  auto j = nlohmann::json::parse(bad.str());
  CHECK(j.at("counterexample").at("relation") == "S_e(0,0)");
  CHECK(j.at("counterexample").at("printed") == "4");
  CHECK(j.at("counterexample").at("limit") == "2");
}

TEST_CASE("tensor verify through the C surface") {
  AlgebraHandle b1("B1_0_1");
  qaf_job_options opt = plain_options();
  OwnedString out;
  REQUIRE(qaf_verify(b1.a, "tensor", "0,2", "0,0", -1, 0, &opt, &out.s) == QAF_OK);
  auto j = nlohmann::json::parse(out.str());
  CHECK(j.at("check") == "tensor");
  CHECK(j.at("depth") == 2);
  CHECK(j.at("status") == "pass");
}

TEST_CASE("null handles are rejected, not dereferenced") {
  qaf_job_options opt = plain_options();
  char* out = nullptr;
  CHECK(qaf_character(nullptr, "0,2", 2, &opt, &out) == QAF_BAD_INPUT);
  CHECK(out == nullptr);
  CHECK(qaf_algebra_export_json(nullptr) == nullptr);
  qaf_algebra* p = nullptr;
  CHECK(qaf_algebra_partner(nullptr, &p) == QAF_BAD_INPUT);
  qaf_algebra_destroy(nullptr);
}
