#pragma once

#include "nearcurve/curve.hpp"

#include <optional>
#include <string>

namespace nearcurve {

// Parameters of one count N_f(Q, delta): pairs (a, q) with q <= Q,
// a/q in I and ||q f(a/q)|| < delta. Pairs, not reduced fractions.
struct CountQuery {
  long long Q = 0;
  double delta = 0;                 // float view of delta
  std::optional<Rat> delta_exact;   // set when the query is boundary-exact
  RatInterval I;
  double eta = 1e-12;               // relative float guard around the boundary
  bool in_regime = false;           // delta > 1/Q, the asymptotic assumption

  CountQuery(long long Q, double delta, RatInterval I);
  CountQuery(long long Q, Rat delta, RatInterval I);

  std::string delta_text() const;
};

struct CountResult {
  long long N = 0;
  long long ambiguous = 0;  // float-path evaluations within eta of the boundary
  double main_term = 0;     // |I| delta Q^2
  double residual = 0;      // N - main_term
  std::string method;
  double elapsed_ms = 0;
  CountQuery query;
};

// ||x||: distance from x to the nearest integer, in [0, 1/2].
double dist_nearest_int(double x);

// Exhaustive reference count. Float path; boundary-grazing values are
// reported in `ambiguous` and never silently counted.
CountResult count_naive(const Curve& curve, const CountQuery& q, int threads = 1);

// Same count via monotone-segment window walking: per q, inverts f over
// each monotone segment to find the integer windows (m-delta, m+delta) and
// tests only nearby candidates with the same predicate as count_naive.
// Falls back to the exhaustive loop per q when segmentation is unusable.
CountResult count_fast(const Curve& curve, const CountQuery& q, int threads = 0);

// Boundary-exact count for polynomial curves and rational delta: compares
// ||q f(a/q)|| < delta in integer arithmetic (int128 fast path, GMP
// fallback). ambiguous = 0 by construction.
CountResult count_exact_poly(const Curve& curve, const CountQuery& q);

// Pairs lying exactly on the curve: ||q f(a/q)|| = 0. Polynomial kind only.
long long on_curve_count(const Curve& curve, const RatInterval& I, long long Q);

}  // namespace nearcurve
