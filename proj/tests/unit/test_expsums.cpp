#include <nearcurve/expsums.hpp>

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace nearcurve;

namespace {
RatInterval unit() { return RatInterval(Rat(0), Rat(1)); }
Curve parabola() { return Curve::polynomial({Rat(0), Rat(0), Rat(1)}, unit()); }
}  // namespace

TEST_CASE("sequence_points enumerates pairs in (q, a) order") {
  auto pts = sequence_points(parabola(), unit(), 3);
  REQUIRE(pts.entries.size() == 9);  // 2 + 3 + 4
  CHECK(pts.Q == 3);
  CHECK(pts.entries.front().q == 1);
  CHECK(pts.entries.front().a == 0);
  CHECK(pts.entries.back().q == 3);
  CHECK(pts.entries.back().a == 3);
  // (a=1, q=2): u = 2 (1/2)^2 = 1/2
  CHECK(pts.entries[3].a == 1);
  CHECK(pts.entries[3].q == 2);
  CHECK(pts.entries[3].u == doctest::Approx(0.5));
  for (std::size_t i = 1; i < pts.entries.size(); ++i) {
    auto& p = pts.entries[i - 1];
    auto& c = pts.entries[i];
    CHECK((c.q > p.q || (c.q == p.q && c.a > p.a)));
  }
  CHECK_THROWS_AS(sequence_points(parabola(), unit(), 0), std::invalid_argument);
}

TEST_CASE("sequence size grows like the full lattice count") {
  auto pts = sequence_points(parabola(), unit(), 100);
  // sum over q <= 100 of (q+1)
  CHECK(pts.entries.size() == 5150);
}

TEST_CASE("discrepancy on hand-built point masses") {
  SequencePoints pts;
  for (double u : {0.5, 0.0, 0.5, 0.0}) pts.entries.push_back({0, 1, u});
  auto [Z, D] = discrepancy(pts, -0.25, 0.25);
  CHECK(Z == 2);
  CHECK(D == doctest::Approx(0.0));

  // open window: a point sitting exactly on the window edge is out
  SequencePoints zero;
  for (int i = 0; i < 6; ++i) zero.entries.push_back({0, 1, 0.0});
  auto [Z2, D2] = discrepancy(zero, 0.0, 0.5);
  CHECK(Z2 == 0);
  CHECK(D2 == doctest::Approx(-3.0));

  CHECK_THROWS_AS(discrepancy(zero, 0.3, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(discrepancy(zero, 0.0, 1.5), std::invalid_argument);
}

TEST_CASE("discrepancy of the parabola sequence at Q = 3") {
  auto pts = sequence_points(parabola(), unit(), 3);
  // u values: 0,1, 0,1/2,2, 0,1/3,4/3,3; six are integers
  auto [Z, D] = discrepancy(pts, -0.1, 0.1);
  CHECK(Z == 6);
  CHECK(D == doctest::Approx(4.2));
}

TEST_CASE("exp_sum closed forms on the parabola at Q = 3") {
  auto pts = sequence_points(parabola(), unit(), 3);
  CHECK(exp_sum(pts, 0).real() == doctest::Approx(9.0));
  // k = 6 clears every denominator, so all phases are 1
  CHECK(exp_sum(pts, 6).real() == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(exp_sum(pts, 6).imag() == doctest::Approx(0.0));
  // k = 1: 5 integer points, e(1/2), and two copies of e(1/3)
  auto s1 = exp_sum(pts, 1);
  CHECK(s1.real() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(s1.imag() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  // the curve-level overload matches the sequence-level one
  auto direct = exp_sum(parabola(), unit(), 3, 1);
  CHECK(std::abs(direct - s1) < 1e-12);
}

TEST_CASE("erdos_turan_bound equals a direct sin/cos evaluation") {
  auto pts = sequence_points(parabola(), unit(), 20);
  double alpha = 0.1, beta = 0.35;
  long long K = 40;
  double got = erdos_turan_bound(pts, alpha, beta, K);

  double width = beta - alpha;
  double manual = static_cast<double>(pts.entries.size()) / (K + 1);
  for (long long k = 1; k <= K; ++k) {
    std::complex<double> s{0, 0};
    for (const auto& e : pts.entries) {
      double ang = 2 * std::numbers::pi * k * (e.u - std::floor(e.u));
      s += std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    double bk = 1.0 / (K + 1) + std::min(width, 1.0 / (std::numbers::pi * k));
    manual += 2 * bk * std::abs(s);
  }
  CHECK(got == doctest::Approx(manual).epsilon(1e-10));
}

TEST_CASE("erdos_turan_bound coefficient sanity on a single point mass") {
  SequencePoints one;
  one.entries.push_back({0, 1, 0.0});
  // K = 1, width 0.1: N/(K+1) + 2 (1/2 + 0.1) |S_1| = 0.5 + 1.2
  CHECK(erdos_turan_bound(one, 0.0, 0.1, 1) == doctest::Approx(1.7));
  CHECK_THROWS_AS(erdos_turan_bound(one, 0.0, 0.1, 0), std::invalid_argument);
}

TEST_CASE("the discrepancy bound actually dominates |D|") {
  auto pts = sequence_points(parabola(), unit(), 50);
  for (auto [a, b] : {std::pair{0.1, 0.35}, {0.0, 0.5}, {-0.2, 0.2}, {0.37, 0.61}}) {
    auto rec = discrepancy_record(pts, a, b, 50);
    CHECK(std::abs(rec.D) <= rec.et_bound);
    CHECK(rec.N == 1325);
    CHECK(rec.K == 50);
  }
}

TEST_CASE("poisson_check with a flat phase: pure endpoint mismatch") {
  auto zero = [](double) { return 0.0; };
  auto rep = poisson_check(zero, zero, 0.0, 5.5);
  CHECK(rep.lhs.real() == doctest::Approx(6.0));
  CHECK(rep.rhs.real() == doctest::Approx(5.5).epsilon(1e-9));
  CHECK(std::abs(rep.rhs.imag()) < 1e-9);
  CHECK(rep.residual == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(rep.s == 0.0);
  CHECK(rep.t == 0.0);
  CHECK(rep.normalized == doctest::Approx(0.5 / std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("poisson_check with a linear phase hits the j = slope term") {
  auto g = [](double x) { return 2 * x; };
  auto gp = [](double) { return 2.0; };
  auto rep = poisson_check(g, gp, 0.0, 3.0);
  CHECK(rep.lhs.real() == doctest::Approx(4.0));
  CHECK(rep.rhs.real() == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(rep.residual == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rep.s == doctest::Approx(2.0));
  CHECK(rep.t == doctest::Approx(2.0));
}

TEST_CASE("poisson_check on a slow quadratic phase stays small") {
  auto g = [](double x) { return x * x / 100.0; };
  auto gp = [](double x) { return x / 50.0; };
  auto rep = poisson_check(g, gp, 0.0, 10.0);
  CHECK(rep.s == doctest::Approx(0.0));
  CHECK(rep.t == doctest::Approx(0.2));
  CHECK(rep.normalized <= 10.0);
  CHECK(rep.residual < rep.lhs.real() + 11.0);  // basic finiteness
}

TEST_CASE("poisson_check rejects decreasing phase derivatives") {
  auto g = [](double x) { return -x * x; };
  auto gp = [](double x) { return -2 * x; };
  CHECK_THROWS_AS(poisson_check(g, gp, 1.0, 2.0), std::invalid_argument);
  auto id = [](double x) { return x; };
  CHECK_THROWS_AS(poisson_check(id, id, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("vdc_value matches the Fresnel limit for x^2") {
  Curve f = parabola();
  // lambda^{1/2} |int_0^1 e(lambda x^2) dx| -> 1/(2 sqrt 2) as lambda grows
  double v = vdc_value(f, 0.0, 1.0, 2, 1e4);
  CHECK(v == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(2e-3));
  CHECK_THROWS_AS(vdc_value(f, 0.0, 1.0, 2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(vdc_value(f, 0.0, 1.0, 1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(vdc_value(f, 1.0, 0.0, 2, 10.0), std::invalid_argument);
}

TEST_CASE("vdc_check takes the grid maximum and stays uniformly bounded") {
  Curve f = parabola();
  const double grid[] = {1, 10, 100, 1000};
  double worst = vdc_check(f, 0.0, 1.0, 2, grid);
  CHECK(worst <= 3.0);
  CHECK(worst >= vdc_value(f, 0.0, 1.0, 2, 1000));
  CHECK_THROWS_AS(vdc_check(f, 0.0, 1.0, 2, {}), std::invalid_argument);
}

TEST_CASE("stationary_phase_approx leading term on the parabola branch") {
  Curve f = Curve::polynomial({Rat(0), Rat(0), Rat(1)}, unit());
  DualCurve dual = make_dual(f, 0.3, 1.0);
  auto rep = stationary_phase_approx(dual, 400.0, 1.0);
  CHECK(rep.theta1 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(rep.approx) == doctest::Approx(1.0 / std::sqrt(2.0 * 400.0)).epsilon(1e-10));
  CHECK(rep.err < 5e-3);

  auto sharp = stationary_phase_approx(dual, 1000.0, 1.0);
  CHECK(sharp.err < 5e-3);
  CHECK(sharp.err < rep.err + 1e-6);
}

TEST_CASE("stationary phase error decays like 1/lambda") {
  Curve f = Curve::polynomial({Rat(0), Rat(0), Rat(1)}, unit());
  DualCurve dual = make_dual(f, 0.3, 1.0);
  std::vector<double> lx, ly;
  for (double lambda = 100.0; lambda <= 13000.0; lambda *= 2.0) {
    auto rep = stationary_phase_approx(dual, lambda, 1.0);
    lx.push_back(std::log(lambda));
    ly.push_back(std::log(rep.err));
  }
  double slope = fit_line(lx, ly);
  CHECK(slope < -0.7);
  CHECK(slope > -1.3);
}

TEST_CASE("stationary point must sit in the middle half of the branch") {
  Curve f = Curve::polynomial({Rat(0), Rat(0), Rat(1)}, unit());
  DualCurve edge = make_dual(f, 0.45, 1.0);
  // theta1 = 0.5 lands in the first quarter of [0.45, 1]
  CHECK_THROWS_AS(stationary_phase_approx(edge, 100.0, 1.0), std::domain_error);
  DualCurve dual = make_dual(f, 0.3, 1.0);
  CHECK_THROWS_AS(stationary_phase_approx(dual, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("variant parsing round-trips") {
  for (const char* name : {"2.40", "2.41", "2.42", "2.43", "2.44", "2.45"}) {
    auto v = parse_variant(name);
    REQUIRE(v.has_value());
    CHECK(variant_name(*v) == name);
  }
  CHECK(!parse_variant("2.46"));
  CHECK(!parse_variant(""));
  CHECK(!parse_variant("240"));
}

TEST_CASE("dual sums: window with no rationals is empty") {
  DualSumQuery q;
  q.variant = DualSumVariant::s240;
  q.F = [](double x) { return x; };
  q.lo = 0.3;
  q.hi = 0.4;
  q.K0 = 2;
  q.Q0 = 10;
  auto res = dual_sums(q);
  CHECK(res.lhs == 0.0);
  CHECK(res.rhs_shape > 0.0);
  CHECK(res.ratio == 0.0);
}

TEST_CASE("dual sums: half-integer F values split cleanly at Q0 = 4") {
  // F(x) = x/2 makes ||k0 F(j/k0)|| = ||j/2||, i.e. 0 or 1/2 exactly.
  auto F = [](double x) { return x / 2.0; };

  DualSumQuery q;
  q.F = F;
  q.K0 = 1;
  q.Q0 = 4;

  q.variant = DualSumVariant::s242;  // small window: j = 0 only
  CHECK(dual_sums(q).lhs == doctest::Approx(1.0));

  q.variant = DualSumVariant::s240;  // j = 1, weight ||1/2||^{-1/2}
  CHECK(dual_sums(q).lhs == doctest::Approx(std::sqrt(2.0)));

  q.variant = DualSumVariant::s241;  // j = 1, weight ||1/2||^{-1}
  CHECK(dual_sums(q).lhs == doctest::Approx(2.0));
}

TEST_CASE("dual sums over the tail range (K1, K2]") {
  auto F = [](double x) { return x / 2.0; };
  DualSumQuery q;
  q.F = F;
  q.K1 = 1;
  q.K2 = 4;
  q.Q0 = 4;

  // per k0: small hits are j with j/2 integral, big hits the rest
  double s2 = std::pow(2.0, -1.5), s3 = std::pow(3.0, -1.5), s4 = std::pow(4.0, -1.5);

  q.variant = DualSumVariant::s245;
  CHECK(dual_sums(q).lhs == doctest::Approx(2 * s2 + 2 * s3 + 3 * s4).epsilon(1e-12));

  q.variant = DualSumVariant::s243;
  double r2 = std::sqrt(2.0);
  CHECK(dual_sums(q).lhs == doctest::Approx(1 * r2 * s2 + 2 * r2 * s3 + 2 * r2 * s4).epsilon(1e-12));

  q.variant = DualSumVariant::s244;
  CHECK(dual_sums(q).lhs == doctest::Approx(2 * s2 + 4 * s3 + 4 * s4).epsilon(1e-12));
}

TEST_CASE("dual sums: hand enumeration for the mixed quadratic") {
  DualSumQuery q;
  q.variant = DualSumVariant::s242;
  q.F = [](double x) { return 0.5 * x * x + 0.25 * x; };
  q.K0 = 1;
  q.Q0 = 10;
  // j = 0 gives ||F(0)|| = 0, inside the window; j = 1 gives ||3/4|| = 1/4, outside
  CHECK(dual_sums(q).lhs == doctest::Approx(1.0));
}

TEST_CASE("dual sums: parabola ratios stay bounded as K0 doubles") {
  DualSumQuery q;
  q.variant = DualSumVariant::s240;
  q.F = [](double x) { return x * x; };
  q.Q0 = 100;
  double prev = 0;
  for (long long K0 : {50, 100, 200, 400}) {
    q.K0 = K0;
    auto r = dual_sums(q);
    CHECK(r.ratio <= 10.0);
    CHECK(r.ratio > 0.0);
    if (prev > 0) {
      CHECK(r.ratio / prev <= 2.0);
      CHECK(r.ratio / prev >= 0.5);
    }
    prev = r.ratio;
  }
}

TEST_CASE("dual sum queries are validated") {
  DualSumQuery q;
  q.F = [](double x) { return x; };
  q.K0 = 0;
  q.Q0 = 10;
  q.variant = DualSumVariant::s240;
  CHECK_THROWS_AS(dual_sums(q), std::invalid_argument);
  q.K0 = 5;
  q.Q0 = 0.5;
  CHECK_THROWS_AS(dual_sums(q), std::invalid_argument);
  q.Q0 = 10;
  q.variant = DualSumVariant::s243;
  q.K1 = 4;
  q.K2 = 4;
  CHECK_THROWS_AS(dual_sums(q), std::invalid_argument);
  q.K2 = 8;
  CHECK(dual_sums(q).rhs_shape > 0.0);
  DualSumQuery noF;
  noF.K0 = 5;
  noF.Q0 = 10;
  CHECK_THROWS_AS(dual_sums(noF), std::invalid_argument);
}
