#include <nearcurve/interval.hpp>

#include <doctest.h>

using namespace nearcurve;

TEST_CASE("interval construction and parsing") {
  RatInterval I(Rat(0), Rat(1));
  CHECK(I.width() == Rat(1));
  CHECK(I.contains(Rat(1, 2)));
  CHECK(I.contains(0.0));
  CHECK(!I.contains(1.5));
  CHECK_THROWS_AS(RatInterval(Rat(1), Rat(0)), std::invalid_argument);

  auto J = parse_interval("-1/2,1/2");
  REQUIRE(J);
  CHECK(J->lo() == Rat(-1, 2));
  CHECK(J->hi() == Rat(1, 2));
  CHECK(!parse_interval("1,0"));
  CHECK(!parse_interval("x,1"));
  CHECK(!parse_interval("0"));
  CHECK(format_interval(*J) == "-1/2,1/2");
}

TEST_CASE("lattice is the exact set of a with a/q inside") {
  RatInterval I(Rat(0), Rat(1));
  auto r3 = I.lattice(3);
  CHECK(r3.first == 0);
  CHECK(r3.last == 3);
  CHECK(r3.size() == 4);

  RatInterval mid(Rat(1, 3), Rat(2, 3));
  auto m3 = mid.lattice(3);
  CHECK(m3.first == 1);
  CHECK(m3.last == 2);
  auto m2 = mid.lattice(2);  // only 1/2
  CHECK(m2.first == 1);
  CHECK(m2.last == 1);

  RatInterval pt(Rat(1, 3), Rat(1, 3));
  CHECK(pt.lattice(2).empty());
  CHECK(pt.lattice(3).size() == 1);

  // endpoints are included: closed interval
  RatInterval half(Rat(-1, 2), Rat(1, 2));
  auto h2 = half.lattice(2);
  CHECK(h2.first == -1);
  CHECK(h2.last == 1);
}

TEST_CASE("lattice membership does not fall to float rounding") {
  // 1/3 is not a double; exact arithmetic must still hit a = q/3 exactly.
  RatInterval I(Rat(1, 3), Rat(1, 3));
  auto r = I.lattice(3000000);
  CHECK(r.first == 1000000);
  CHECK(r.last == 1000000);
}
