#include <doctest.h>

#include "praml/rational.hpp"

using namespace praml;

TEST_CASE("decimal and fraction literals parse exactly") {
  CHECK(*parse_rational("0.5") == rat(1, 2));
  CHECK(*parse_rational("1.25") == rat(5, 4));
  CHECK(*parse_rational("3/2") == rat(3, 2));
  CHECK(*parse_rational("2") == rat(2));
  CHECK(*parse_rational("-1") == rat(-1));
  CHECK(*parse_rational("-0.3") == rat(-3, 10));
  CHECK(!parse_rational(""));
  CHECK(!parse_rational("1.").has_value());
  CHECK(!parse_rational("a/b").has_value());
  CHECK(!parse_rational("1/0").has_value());
}

TEST_CASE("printing is canonical") {
  CHECK(to_string(rat(4, 2)) == "2");
  CHECK(to_string(rat(21, 5)) == "21/5");
  CHECK(to_string(rat(-1, 3)) == "-1/3");
  CHECK(*parse_rational(to_string(rat(7, 12))) == rat(7, 12));
}
