#include <doctest.h>

#include "pnpair/errors.hpp"
#include "pnpair/expr_parser.hpp"

using namespace pnpair;

namespace {
std::vector<std::uint8_t> bits(std::initializer_list<int> v) { return {v.begin(), v.end()}; }
}  // namespace

TEST_CASE("F_2 polynomial expressions") {
  CHECK(parse_f2_polynomial("x^3+x+1", "x") == bits({1, 1, 0, 1}));
  CHECK(parse_f2_polynomial("x^{3}-1", "x") == bits({1, 0, 0, 1}));
  CHECK(parse_f2_polynomial("(x+1)(x^2+x+1)", "x") == bits({1, 0, 0, 1}));
  CHECK(parse_f2_polynomial("(x+1)*(x+1)", "x") == bits({1, 0, 1}));
  CHECK(parse_f2_polynomial("(x+1)^3", "x") == bits({1, 1, 1, 1}));
  CHECK(parse_f2_polynomial("x + x", "x").empty());
  CHECK(parse_f2_polynomial("3x^2", "x") == bits({0, 0, 1}));
  CHECK(parse_f2_polynomial("1", "x") == bits({1}));
  CHECK_THROWS_AS(parse_f2_polynomial("y+1", "x"), Error);
  CHECK_THROWS_AS(parse_f2_polynomial("x^", "x"), Error);
  CHECK_THROWS_AS(parse_f2_polynomial("(x+1", "x"), Error);
}

TEST_CASE("F_2 polynomial printing") {
  CHECK(f2_poly_to_string(bits({1, 0, 0, 1})) == "x^3+1");
  CHECK(f2_poly_to_string({}) == "0");
  CHECK(f2_poly_mul(bits({1, 1}), bits({1, 1, 1})) == bits({1, 0, 0, 1}));
}

TEST_CASE("field elements from hex or alpha expressions") {
  const Gf2Field f(parse_modulus("x^6+x^4+x^3+x+1"));
  CHECK(parse_element(f, "0x33") == 0x33);
  CHECK(parse_element(f, "alpha^5+alpha^4+alpha+1") == 0x33);
  CHECK(parse_element(f, "a^5+a^4+a+1") == 0x33);
  CHECK(parse_element(f, "x^6") == 0b011011);
  CHECK(parse_element(f, "0") == 0);
  CHECK(parse_element(f, "1") == 1);
  CHECK_THROWS_AS(parse_element(f, "0x40"), Error);
  CHECK_THROWS_AS(parse_element(f, "beta"), Error);
}
