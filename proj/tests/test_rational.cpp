#include <doctest.h>
#include <hft/rational.hpp>

using namespace hft;

TEST_CASE("rational parse and canonical serialization") {
  CHECK(parse_rat("3/6") == Rat(1, 2));
  CHECK(parse_rat("-4/2") == Rat(-2));
  CHECK(parse_rat("7") == Rat(7));
  CHECK(rat_str(Rat(1, 2)) == "1/2");
  CHECK(rat_str(Rat(-2)) == "-2/1");
  CHECK(parse_rat(rat_str(Rat(-355, 113))) == Rat(-355, 113));
}

TEST_CASE("rational parse rejects bad input") {
  CHECK_THROWS_AS(parse_rat("1/0"), Error);
  CHECK_THROWS_AS(parse_rat(""), Error);
  CHECK_THROWS_AS(parse_rat("x"), Error);
}

TEST_CASE("cross product orientation") {
  RationalPoint a{0, 0}, b{1, 0}, c{0, 1};
  CHECK(cross(a, b, c) > 0);  // c left of a->b
  CHECK(cross(a, c, b) < 0);
}
