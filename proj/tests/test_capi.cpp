#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "pnpair/pnpair.h"

using nlohmann::json;

namespace {

json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  pnpair_free_string(s);
  return j;
}

struct FieldHandle {
  pnpair_field* f = nullptr;
  FieldHandle(unsigned k, unsigned m, const char* modulus) {
    REQUIRE(pnpair_field_create(k, m, modulus, &f) == PNPAIR_OK);
  }
  ~FieldHandle() { pnpair_field_destroy(f); }
};

}  // namespace

TEST_CASE("status strings and errors") {
  CHECK(std::string(pnpair_status_string(PNPAIR_OK)) == "ok");
  pnpair_field* f = nullptr;
  CHECK(pnpair_field_create(1, 4, "x^4+1", &f) == PNPAIR_ERR_NON_IRREDUCIBLE_MODULUS);
  CHECK(f == nullptr);
  CHECK(std::string(pnpair_last_error()).size() > 0);
  CHECK(pnpair_field_create(8, 9, nullptr, &f) == PNPAIR_ERR_UNSUPPORTED);
  CHECK(pnpair_field_create(1, 4, "x^4+x+1", nullptr) == PNPAIR_ERR_INVALID_ARGUMENT);
  char* out = nullptr;
  CHECK(pnpair_factor_json("-5", &out) == PNPAIR_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
}

TEST_CASE("element arithmetic through the handle") {
  pnpair_set_timestamps(0);
  FieldHandle h(1, 8, "x^8+x^4+x^3+x+1");
  CHECK(pnpair_field_degree(h.f) == 8);
  uint64_t r = 0;
  CHECK(pnpair_elem_mul(h.f, 0x53, 0xca, &r) == PNPAIR_OK);
  CHECK(r == 1);
  CHECK(pnpair_elem_inv(h.f, 0x53, &r) == PNPAIR_OK);
  CHECK(r == 0xca);
  CHECK(pnpair_elem_inv(h.f, 0, &r) == PNPAIR_ERR_ZERO_ELEMENT);
  CHECK(pnpair_elem_pow(h.f, 0, "0", &r) == PNPAIR_ERR_ZERO_TO_ZERO);
  CHECK(pnpair_elem_pow(h.f, 3, "255", &r) == PNPAIR_OK);
  CHECK(r == 1);
  CHECK(pnpair_elem_mul(h.f, 0x100, 1, &r) == PNPAIR_ERR_INVALID_ARGUMENT);
  CHECK(pnpair_elem_parse(h.f, "alpha^7+1", &r) == PNPAIR_OK);
  CHECK(r == 0x81);
  uint64_t ord = 0;
  CHECK(pnpair_elem_order(h.f, 3, &ord) == PNPAIR_OK);
  CHECK(ord == 255);
  int flag = 0;
  CHECK(pnpair_elem_is_primitive(h.f, 3, &flag) == PNPAIR_OK);
  CHECK(flag == 1);
  CHECK(pnpair_elem_frobenius(h.f, 2, &r) == PNPAIR_OK);
  CHECK(r == 4);
  const uint64_t q5[5] = {2, 0, 0, 2, 2};
  int pole = 0;
  CHECK(pnpair_map_eval(h.f, q5, 1, &r, &pole) == PNPAIR_OK);
  CHECK(pole == 1);
}

TEST_CASE("JSON operations") {
  pnpair_set_timestamps(0);
  char* out = nullptr;
  REQUIRE(pnpair_factor_json("1", &out) == PNPAIR_OK);
  json j = take(out);
  CHECK(j["value"] == "1");
  CHECK(j["omega"] == 0);
  CHECK(j["primes"].empty());
  CHECK_FALSE(j.contains("timestamp"));

  REQUIRE(pnpair_sieve_json(7, 4, "3", "x+1", &out) == PNPAIR_OK);
  j = take(out);
  CHECK(j["passes"] == true);
  CHECK(j["S"]["approx"].get<double>() == doctest::Approx(21.9523).epsilon(1e-5));

  REQUIRE(pnpair_bound_json(1, 4, nullptr, &out) == PNPAIR_OK);
  j = take(out);
  CHECK(j["rhs"] == "256");
  CHECK(j["passes"] == false);

  REQUIRE(pnpair_lemma53_json(4, nullptr, &out) == PNPAIR_OK);
  j = take(out);
  for (const json& c : j["cases"])
    if (c["applicable"] == true) CHECK(c["matches_generic"] == true);

  REQUIRE(pnpair_xm1_json(2, 15, 1, &out) == PNPAIR_OK);
  j = take(out);
  CHECK(j["factors"].size() == 9);

  pnpair_set_timestamps(1);
  REQUIRE(pnpair_factor_qm1_json(1, 12, &out) == PNPAIR_OK);
  CHECK(take(out).contains("timestamp"));
  pnpair_set_timestamps(0);
}

TEST_CASE("search, merge and verification") {
  pnpair_set_timestamps(0);
  FieldHandle h(1, 2, "x^2+x+1");
  pnpair_search_options o;
  pnpair_search_options_init(&o);
  o.threads = 1;
  char* out = nullptr;
  uint64_t exc = 0;
  REQUIRE(pnpair_search_json(h.f, &o, &out, &exc) == PNPAIR_OK);
  json whole = take(out);
  CHECK(whole["checked"] == 720);
  CHECK(exc == 252);

  std::string parts[2];
  for (unsigned s = 1; s <= 2; ++s) {
    o.shard_index = s;
    o.shard_total = 2;
    REQUIRE(pnpair_search_json(h.f, &o, &out, &exc) == PNPAIR_OK);
    parts[s - 1] = out;
    pnpair_free_string(out);
  }
  const char* ptrs[2] = {parts[0].c_str(), parts[1].c_str()};
  REQUIRE(pnpair_merge_reports_json(ptrs, 2, &out, &exc) == PNPAIR_OK);
  json merged = take(out);
  CHECK(merged["checked"] == 720);
  CHECK(merged["exceptional"] == 252);

  o.shard_index = 3;
  CHECK(pnpair_search_json(h.f, &o, &out, &exc) == PNPAIR_ERR_INVALID_ARGUMENT);

  const uint64_t q5[5] = {2, 0, 0, 2, 2};
  int confirmed = 0;
  REQUIRE(pnpair_verify_counterexample_json(h.f, q5, 0, 0, &out, &confirmed) == PNPAIR_OK);
  CHECK(confirmed == 1);
  CHECK(take(out)["exceptional"] == true);
}

TEST_CASE("table reproduction through the C API") {
  pnpair_set_timestamps(0);
  char* out = nullptr;
  REQUIRE(pnpair_reproduce_tables(nullptr, 2, 1, &out) == PNPAIR_OK);
  const std::string csv = out;
  pnpair_free_string(out);
  CHECK(csv.rfind("table,q,m,", 0) == 0);
  CHECK(pnpair_reproduce_tables("/nonexistent", 1, 0, &out) == PNPAIR_ERR_IO);
}
