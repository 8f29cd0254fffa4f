#include <nearcurve/counting.hpp>

#include <doctest.h>

#include <cmath>

using namespace nearcurve;

namespace {
RatInterval unit() { return RatInterval(Rat(0), Rat(1)); }
Curve parabola() { return Curve::polynomial({Rat(0), Rat(0), Rat(1)}, unit()); }
}  // namespace

TEST_CASE("dist_nearest_int basics") {
  CHECK(dist_nearest_int(0.0) == 0.0);
  CHECK(dist_nearest_int(3.0) == 0.0);
  CHECK(dist_nearest_int(0.3) == doctest::Approx(0.3));
  CHECK(dist_nearest_int(0.7) == doctest::Approx(0.3));
  CHECK(dist_nearest_int(-2.4) == doctest::Approx(0.4));
  CHECK(dist_nearest_int(1.5) == doctest::Approx(0.5));
}

TEST_CASE("hand counts on the parabola at tiny Q") {
  Curve f = parabola();
  // Q = 1: a in {0, 1}, both land exactly on integers, so any delta > 0
  // counts both pairs.
  CountQuery q1(1, Rat(1, 4), unit());
  CHECK(count_naive(f, q1).N == 2);
  CHECK(count_fast(f, q1).N == 2);
  CHECK(count_exact_poly(f, q1).N == 2);

  // Q = 3, delta = 1/4: the pairs are (0,1),(1,1),(0,2),(2,2),(0,3),(3,3).
  CountQuery q3(3, Rat(1, 4), unit());
  CHECK(count_naive(f, q3).N == 6);
  CHECK(count_fast(f, q3).N == 6);
  CHECK(count_exact_poly(f, q3).N == 6);
  CHECK(count_exact_poly(f, q3).ambiguous == 0);
}

TEST_CASE("vertical shift by 1/2 empties the count at small delta") {
  Curve f = Curve::polynomial({Rat(1, 2), Rat(0), Rat(1)}, unit());
  CountQuery q(2, Rat(1, 8), unit());
  // q=1: u = a^2 + 1/2, distance 1/2.  q=2: u = a^2/2 + 1, distance 0 or 1/2.
  // distance-0 pairs (a even) are counted, the rest are not.
  CHECK(count_exact_poly(f, q).N == 2);
  CHECK(count_naive(f, q).N == 2);
  CHECK(count_fast(f, q).N == 2);
}

TEST_CASE("strict inequality excludes the exact boundary") {
  // point interval {1/3} at Q = 3: only the pair (1,3); q f(a/q) = 1/3 and
  // ||1/3|| = 1/3 is not < 1/3.
  RatInterval pt(Rat(1, 3), Rat(1, 3));
  Curve f = Curve::polynomial({Rat(0), Rat(0), Rat(1)}, pt);
  CountQuery q(3, Rat(1, 3), pt);
  CHECK(count_exact_poly(f, q).N == 0);
  auto nv = count_naive(f, q);
  // the float path flags the grazing pair rather than deciding it
  CHECK(nv.N + nv.ambiguous <= 1);
  CHECK(nv.N == 0);
}

TEST_CASE("methods agree pairwise on a mixed mini-suite") {
  struct Case {
    Curve f;
    RatInterval I;
  };
  RatInterval sym(Rat(-1, 2), Rat(1, 2));
  Case cases[] = {
      {Curve::polynomial({Rat(0), Rat(0), Rat(1)}, unit()), unit()},
      {Curve::polynomial({Rat(0), Rat(0), Rat(0), Rat(1)}, sym), sym},
      {Curve::polynomial({Rat(1, 3), Rat(-1, 2), Rat(0), Rat(0), Rat(1)}, sym), sym},
  };
  for (const auto& c : cases) {
    for (long long Q : {10, 37, 60}) {
      CountQuery q(Q, Rat(1, 5), c.I);
      long long a = count_naive(c.f, q).N;
      long long b = count_fast(c.f, q).N;
      long long e = count_exact_poly(c.f, q).N;
      CHECK(a == e);
      CHECK(b == e);
    }
  }
}

TEST_CASE("float and exact delta agree away from boundary ties") {
  Curve f = parabola();
  CountQuery qf(500, 0.25, unit());
  CountQuery qe(500, Rat(1, 4), unit());
  auto rf = count_fast(f, qf);
  auto re = count_exact_poly(f, qe);
  // every undecided float pair is a potential miss, nothing else differs
  CHECK(std::llabs(rf.N - re.N) <= rf.ambiguous);
  CHECK(re.ambiguous == 0);
}

TEST_CASE("non-polynomial curves count through the float paths") {
  Curve cosc = Curve::cosine(RatInterval(Rat(-1), Rat(1)));
  CountQuery q(40, 0.2, RatInterval(Rat(-1), Rat(1)));
  auto a = count_naive(cosc, q);
  auto b = count_fast(cosc, q);
  CHECK(a.N == b.N);
  CHECK(a.ambiguous == b.ambiguous);
  CHECK_THROWS_AS(count_exact_poly(cosc, q), std::invalid_argument);
}

TEST_CASE("on_curve_count closed forms") {
  // f = x on [0,1]: q f(a/q) = a is always integral, so all pairs land on
  // the curve: sum over q <= 5 of (q+1) = 20.
  Curve line = Curve::polynomial({Rat(0), Rat(1)}, unit());
  CHECK(on_curve_count(line, unit(), 5) == 20);

  Curve shifted = Curve::polynomial({Rat(1, 2), Rat(0), Rat(1)}, unit());
  CHECK(on_curve_count(shifted, unit(), 2) == 2);

  CHECK(on_curve_count(parabola(), unit(), 4) == 9);
}

TEST_CASE("huge coefficient denominators fall back to exact big arithmetic") {
  // lcm of denominators is 10^19, above the native signed-long range, so the
  // plan cannot stay in int128 for the scaled values.
  Rat tiny(1);
  tiny /= Rat("10000000000000000000");
  Curve f = Curve::polynomial({Rat(0), Rat(0), tiny}, unit());
  CountQuery q(10, Rat(1, 4), unit());
  // u = a^2 / (10^19 q) is far inside (0, 1/4) or exactly 0; all pairs count.
  long long expect = 0;
  for (long long qq = 1; qq <= 10; ++qq) expect += qq + 1;
  CHECK(expect == 65);
  CHECK(count_exact_poly(f, q).N == 65);
  CHECK(count_naive(f, q).N == 65);
  CHECK(count_fast(f, q).N == 65);
}

TEST_CASE("thread count never changes the answer") {
  Curve f = Curve::polynomial({Rat(0), Rat(1, 3), Rat(0), Rat(1)},
                              RatInterval(Rat(-1, 2), Rat(1, 2)));
  CountQuery q(120, 0.2, RatInterval(Rat(-1, 2), Rat(1, 2)));
  auto base = count_fast(f, q, 1);
  for (int t : {2, 3, 5}) {
    auto r = count_fast(f, q, t);
    CHECK(r.N == base.N);
    CHECK(r.ambiguous == base.ambiguous);
  }
  auto n1 = count_naive(f, q, 1);
  auto n3 = count_naive(f, q, 3);
  CHECK(n1.N == n3.N);
  CHECK(n1.N == base.N);
}

TEST_CASE("query structs carry regime and main term bookkeeping") {
  CountQuery q(100, Rat(1, 10), unit());
  CHECK(q.in_regime);  // 1/10 > 1/100
  CHECK(q.delta == doctest::Approx(0.1));
  CHECK(q.delta_text() == "1/10");
  CountQuery tight(100, Rat(1, 200), unit());
  CHECK(!tight.in_regime);

  auto r = count_exact_poly(parabola(), q);
  CHECK(r.main_term == doctest::Approx(1000.0));
  CHECK(r.residual == doctest::Approx(static_cast<double>(r.N) - 1000.0));
  CHECK(r.method == "exact");
}

TEST_CASE("delta bounds are validated") {
  CHECK_THROWS_AS(CountQuery(10, 0.7, unit()), std::invalid_argument);
  CHECK_THROWS_AS(CountQuery(10, 0.0, unit()), std::invalid_argument);
  CHECK_THROWS_AS(CountQuery(10, Rat(1, 2), unit()), std::invalid_argument);
  CHECK_THROWS_AS(CountQuery(0, 0.1, unit()), std::invalid_argument);
}
