#include "nearcurve/counting.hpp"

#include "nearcurve/numerics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <vector>

namespace nearcurve {

namespace {

void validate_delta_range(bool ok) {
  if (!ok) throw std::invalid_argument("delta must lie in (0, 1/2)");
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int resolve_threads(int t) {
  if (t > 0) return t;
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

// Shared float predicate: +1 inside, 0 outside, -1 boundary-ambiguous.
// count_naive and count_fast must agree bit for bit, so both call this.
int classify_pair(const Curve& f, long long a, long long q, double delta, double eta) {
  double x = static_cast<double>(a) / static_cast<double>(q);
  double u = static_cast<double>(q) * f.value(x);
  double dist = dist_nearest_int(u);
  double guard = eta * std::max(1.0, std::abs(u));
  if (std::abs(dist - delta) <= guard) return -1;
  return dist < delta ? 1 : 0;
}

struct PairTally {
  long long inside = 0, ambiguous = 0;
  void feed(int cls) {
    if (cls > 0) ++inside;
    else if (cls < 0) ++ambiguous;
  }
};

// Fan out q = 1..Q over worker threads (stripes), then combine the per-q
// tallies in q order so the result never depends on the thread count.
template <typename PerQ>
PairTally run_per_q(long long Q, int threads, PerQ per_q) {
  int T = std::min<long long>(resolve_threads(threads), std::max<long long>(Q, 1));
  std::vector<PairTally> slots(static_cast<std::size_t>(Q) + 1);
  if (T <= 1) {
    for (long long q = 1; q <= Q; ++q) slots[q] = per_q(q);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < T; ++w)
      pool.emplace_back([&, w] {
        for (long long q = 1 + w; q <= Q; q += T) slots[q] = per_q(q);
      });
    for (auto& th : pool) th.join();
  }
  PairTally total;
  for (long long q = 1; q <= Q; ++q) {
    total.inside += slots[q].inside;
    total.ambiguous += slots[q].ambiguous;
  }
  return total;
}

CountResult finish(const Curve&, const CountQuery& query, PairTally t,
                   const char* method, double t0) {
  // |I| delta Q^2, through rationals when delta is exact so e.g. 0.9 prints
  // as 0.9 rather than an accumulation of float factors.
  long Q = static_cast<long>(query.Q);
  double main = query.delta_exact
                    ? to_double(query.I.width() * *query.delta_exact * Q * Q)
                    : query.I.width_d() * query.delta * static_cast<double>(Q) *
                          static_cast<double>(Q);
  CountResult r{.N = t.inside,
                .ambiguous = t.ambiguous,
                .main_term = main,
                .residual = 0,
                .method = method,
                .elapsed_ms = now_ms() - t0,
                .query = query};
  r.residual = static_cast<double>(r.N) - r.main_term;
  return r;
}

}  // namespace

CountQuery::CountQuery(long long Qv, double d, RatInterval Iv)
    : Q(Qv), delta(d), I(std::move(Iv)) {
  validate_delta_range(Q >= 1 && delta > 0 && delta < 0.5);
  in_regime = delta > 1.0 / static_cast<double>(Q);
}

CountQuery::CountQuery(long long Qv, Rat d, RatInterval Iv)
    : Q(Qv), delta(to_double(d)), delta_exact(std::move(d)), I(std::move(Iv)) {
  validate_delta_range(Q >= 1 && *delta_exact > 0 && *delta_exact < Rat(1, 2));
  in_regime = *delta_exact * static_cast<long>(Q) > 1;
}

std::string CountQuery::delta_text() const {
  if (delta_exact) return format_rational(*delta_exact);
  char buf[32];
  auto n = std::snprintf(buf, sizeof buf, "%.17g", delta);
  return std::string(buf, buf + n);
}

double dist_nearest_int(double x) { return std::abs(x - std::nearbyint(x)); }

CountResult count_naive(const Curve& curve, const CountQuery& query, int threads) {
  double t0 = now_ms();
  PairTally total = run_per_q(query.Q, threads, [&](long long q) {
    PairTally t;
    auto ar = query.I.lattice(q);
    for (long long a = ar.first; a <= ar.last; ++a)
      t.feed(classify_pair(curve, a, q, query.delta, query.eta));
    return t;
  });
  return finish(curve, query, total, "naive", t0);
}

CountResult count_fast(const Curve& curve, const CountQuery& query, int threads) {
  double t0 = now_ms();
  double lo = query.I.lo_d(), hi = query.I.hi_d();

  // monotone segmentation of f over I
  std::vector<double> cuts{lo};
  if (hi > lo)
    for (double c : curve.critical_points(lo, hi))
      if (c > lo && c < hi) cuts.push_back(c);
  cuts.push_back(hi);
  bool segmentation_ok = cuts.size() <= 66;

  double delta = query.delta;
  PairTally total = run_per_q(query.Q, threads, [&](long long q) {
    PairTally t;
    auto ar = query.I.lattice(q);
    if (ar.empty()) return t;
    if (!segmentation_ok) {
      for (long long a = ar.first; a <= ar.last; ++a)
        t.feed(classify_pair(curve, a, q, delta, query.eta));
      return t;
    }
    auto f = [&](double x) { return curve.value(x); };
    auto fp = [&](double x) { return curve.derivative(1, x); };
    long long cursor = ar.first - 1;  // largest a already classified
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      double s0 = cuts[s], s1 = cuts[s + 1];
      if (!(s1 > s0)) continue;
      double f0 = f(s0), f1 = f(s1);
      double glo = static_cast<double>(q) * std::min(f0, f1);
      double ghi = static_cast<double>(q) * std::max(f0, f1);
      long long mlo = static_cast<long long>(std::ceil(glo - delta));
      long long mhi = static_cast<long long>(std::floor(ghi + delta));
      bool increasing = f1 >= f0;
      double hint = s0;  // the walk scans x left to right in both cases
      // walk windows in the direction of increasing x so `cursor` advances
      for (long long step = 0; step <= mhi - mlo; ++step) {
        long long m = increasing ? mlo + step : mhi - step;
        double tlo = (static_cast<double>(m) - delta) / q;
        double thi = (static_cast<double>(m) + delta) / q;
        double xa, xb;
        if (increasing) {
          xa = monotone_invert(f, fp, s0, s1, tlo, 1e-12, hint);
          xb = monotone_invert(f, fp, s0, s1, thi, 1e-12, xa);
          hint = xb;
        } else {
          xa = monotone_invert(f, fp, s0, s1, thi, 1e-12, hint);
          xb = monotone_invert(f, fp, s0, s1, tlo, 1e-12, xa);
          hint = xb;
        }
        long long alo = static_cast<long long>(std::ceil(std::min(xa, xb) * q)) - 1;
        long long ahi = static_cast<long long>(std::floor(std::max(xa, xb) * q)) + 1;
        alo = std::max({alo, static_cast<long long>(ar.first), cursor + 1});
        ahi = std::min(ahi, static_cast<long long>(ar.last));
        for (long long a = alo; a <= ahi; ++a)
          t.feed(classify_pair(curve, a, q, delta, query.eta));
        if (ahi >= alo) cursor = std::max(cursor, ahi);
      }
    }
    return t;
  });
  return finish(curve, query, total, "fast", t0);
}

namespace {

// q f(a/q) for f = (1/L) sum C_i x^i equals V / M with
// V = sum C_i a^i q^{n-i} and M = L q^{n-1} (n = max(deg, 1)).
struct ExactPolyPlan {
  std::vector<mpz_class> C;  // integer coefficients, length n+1
  mpz_class L;
  int n = 1;
  bool int128_ok = false;    // all |C_i| and L fit well inside int64
  std::vector<long long> C64;
  long long L64 = 1;
};

ExactPolyPlan make_plan(const Curve& curve) {
  ExactPolyPlan plan;
  const auto& cs = curve.coefficients();
  plan.L = 1;
  for (const auto& c : cs) mpz_lcm(plan.L.get_mpz_t(), plan.L.get_mpz_t(), c.get_den().get_mpz_t());
  for (const auto& c : cs) {
    mpz_class num = c.get_num() * (plan.L / c.get_den());
    plan.C.push_back(num);
  }
  while (plan.C.size() < 2) plan.C.push_back(mpz_class(0));
  plan.n = static_cast<int>(plan.C.size()) - 1;
  plan.int128_ok = mpz_fits_slong_p(plan.L.get_mpz_t());
  for (const auto& c : plan.C) plan.int128_ok = plan.int128_ok && mpz_fits_slong_p(c.get_mpz_t());
  if (plan.int128_ok) {
    plan.L64 = plan.L.get_si();
    for (const auto& c : plan.C) plan.C64.push_back(c.get_si());
  }
  return plan;
}

using int128 = __int128;

// Conservative magnitude bound for V over |a| <= amax at this q.
long double v_bound(const ExactPolyPlan& p, long double amax, long double q) {
  long double b = 0, apow = 1;
  for (int i = 0; i <= p.n; ++i) {
    b += std::abs(static_cast<long double>(p.C64[i])) * apow * std::pow(q, static_cast<long double>(p.n - i));
    apow *= std::max(amax, 1.0L);
  }
  return b;
}

}  // namespace

CountResult count_exact_poly(const Curve& curve, const CountQuery& query) {
  if (!curve.is_polynomial()) throw std::invalid_argument("count_exact_poly: polynomial curve required");
  if (!query.delta_exact) throw std::invalid_argument("count_exact_poly: exact rational delta required");
  double t0 = now_ms();

  ExactPolyPlan plan = make_plan(curve);
  const Rat& delta = *query.delta_exact;
  mpz_class dnum = delta.get_num(), dden = delta.get_den();
  bool d64 = mpz_fits_slong_p(dnum.get_mpz_t()) && mpz_fits_slong_p(dden.get_mpz_t());
  long long dn = d64 ? dnum.get_si() : 0, dd = d64 ? dden.get_si() : 0;

  PairTally total;
  std::vector<int128> Cq(plan.n + 1);
  for (long long q = 1; q <= query.Q; ++q) {
    auto ar = query.I.lattice(q);
    if (ar.empty()) continue;
    long double amax = std::max(std::abs(static_cast<long double>(ar.first)),
                                std::abs(static_cast<long double>(ar.last)));
    bool fast = plan.int128_ok && d64 &&
                v_bound(plan, amax, static_cast<long double>(q)) < 1e30L &&
                static_cast<long double>(plan.L64) * std::pow(static_cast<long double>(q), plan.n - 1) *
                        static_cast<long double>(std::max(dn, dd)) <
                    1e30L;
    if (fast) {
      // M = L q^{n-1}; V by Horner over precomputed C_i q^{n-i}
      int128 M = plan.L64;
      for (int i = 0; i < plan.n - 1; ++i) M *= q;
      int128 qp = 1;
      for (int i = plan.n; i >= 0; --i) {
        Cq[i] = static_cast<int128>(plan.C64[i]) * qp;
        qp *= q;
      }
      for (long long a = ar.first; a <= ar.last; ++a) {
        int128 V = 0;
        for (int i = plan.n; i >= 0; --i) V = V * a + Cq[i];
        int128 r = V % M;
        if (r < 0) r += M;
        int128 dmin = r <= M - r ? r : M - r;
        if (dmin * dd < static_cast<int128>(dn) * M) ++total.inside;
      }
    } else {
      for (long long a = ar.first; a <= ar.last; ++a) {
        Rat u = Rat(static_cast<long>(q)) *
                curve.value_exact(Rat(static_cast<long>(a)) / Rat(static_cast<long>(q)));
        if (nearest_int_dist_exact(u) < delta) ++total.inside;
      }
    }
  }
  return finish(curve, query, total, "exact", t0);
}

long long on_curve_count(const Curve& curve, const RatInterval& I, long long Q) {
  if (!curve.is_polynomial()) throw std::invalid_argument("on_curve_count: polynomial curve required");
  ExactPolyPlan plan = make_plan(curve);
  long long count = 0;
  std::vector<int128> Cq(plan.n + 1);
  for (long long q = 1; q <= Q; ++q) {
    auto ar = I.lattice(q);
    if (ar.empty()) continue;
    long double amax = std::max(std::abs(static_cast<long double>(ar.first)),
                                std::abs(static_cast<long double>(ar.last)));
    bool fast = plan.int128_ok && v_bound(plan, amax, static_cast<long double>(q)) < 1e30L;
    if (fast) {
      int128 M = plan.L64;
      for (int i = 0; i < plan.n - 1; ++i) M *= q;
      int128 qp = 1;
      for (int i = plan.n; i >= 0; --i) {
        Cq[i] = static_cast<int128>(plan.C64[i]) * qp;
        qp *= q;
      }
      for (long long a = ar.first; a <= ar.last; ++a) {
        int128 V = 0;
        for (int i = plan.n; i >= 0; --i) V = V * a + Cq[i];
        if (V % M == 0) ++count;
      }
    } else {
      for (long long a = ar.first; a <= ar.last; ++a) {
        Rat u = Rat(static_cast<long>(q)) *
                curve.value_exact(Rat(static_cast<long>(a)) / Rat(static_cast<long>(q)));
        if (nearest_int_dist_exact(u) == 0) ++count;
      }
    }
  }
  return count;
}

}  // namespace nearcurve
