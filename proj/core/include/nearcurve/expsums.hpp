#pragma once

#include "nearcurve/counting.hpp"
#include "nearcurve/dual.hpp"
#include "nearcurve/numerics.hpp"

#include <complex>
#include <span>

namespace nearcurve {

// The sequence {q f(a/q)} enumerated over q <= Q, a/q in I, ordered by (q, a).
struct SequencePoints {
  struct Entry {
    long long a, q;
    double u;  // q f(a/q)
  };
  std::vector<Entry> entries;
  std::string curve_id;
  long long Q = 0;
};

SequencePoints sequence_points(const Curve& curve, const RatInterval& I, long long Q);

// Z: points with u in (alpha, beta) mod 1, open window; D = Z - (beta-alpha) N.
std::pair<long long, double> discrepancy(const SequencePoints& pts, double alpha, double beta);

// N/(K+1) + 2 sum_{k=1}^K b_k |sum_n e(k u_n)| with
// b_k = 1/(K+1) + min(beta - alpha, 1/(pi k)); an upper bound for |D|.
double erdos_turan_bound(const SequencePoints& pts, double alpha, double beta, long long K);

struct DiscrepancyRecord {
  long long N = 0;
  double alpha = 0, beta = 0;
  long long Z = 0;
  double D = 0;
  double et_bound = 0;
  long long K = 0;
};
DiscrepancyRecord discrepancy_record(const SequencePoints& pts, double alpha, double beta, long long K);

// S_k = sum over the sequence of e(k q f(a/q)), compensated summation.
std::complex<double> exp_sum(const SequencePoints& pts, long long k);
std::complex<double> exp_sum(const Curve& curve, const RatInterval& I, long long Q, long long k);

// Truncated Poisson summation check: lhs = sum_{c<=n<=d} e(g(n)),
// rhs = sum over integers j in [s-1, t+1] of the oscillatory integrals,
// s = g'(c), t = g'(d); g' must be increasing (grid-checked).
struct PoissonReport {
  std::complex<double> lhs{0, 0}, rhs{0, 0};
  double residual = 0;
  double s = 0, t = 0;
  double normalized = 0;  // residual / log(2 + t - s)
};
PoissonReport poisson_check(const RealFn& g, const RealFn& gp, double c, double d, double tol = 1e-9);

// lambda^{1/d} |integral over [lo, hi] of e(lambda f)| for one lambda, and the
// max over a grid (all lambdas must be >= 1).
double vdc_value(const Curve& curve, double lo, double hi, int d, double lambda, double tol = 1e-9,
                 long long max_panels = 1 << 20);
double vdc_check(const Curve& curve, double lo, double hi, int d,
                 std::span<const double> lambdas, double tol = 1e-9,
                 long long max_panels = 1 << 20);

// Stationary phase on one convex branch: approx is the leading term
// lambda^{-1/2} |f''(theta1)|^{-1/2} e(-lambda f*(y) + sign(f'')/8); exact is
// the quadrature value of the branch integral of e(lambda (f(x) - y x)).
// theta1 must land in the middle half of the branch.
struct StationaryPhaseReport {
  std::complex<double> approx{0, 0}, exact{0, 0};
  double err = 0;
  double theta1 = 0;
  double lambda = 0, y = 0;
};
StationaryPhaseReport stationary_phase_approx(const DualCurve& dual, double lambda, double y,
                                              double tol = 1e-9);

// The six weighted rational sums over k0 and j/k0 in I, split by whether
// ||k0 F(j/k0)|| clears the 1/Q0 window, with their reference right-side
// shapes for ratio reporting.
enum class DualSumVariant { s240, s241, s242, s243, s244, s245 };

std::optional<DualSumVariant> parse_variant(std::string_view text);  // "2.40".."2.45"
std::string variant_name(DualSumVariant v);

struct DualSumQuery {
  DualSumVariant variant = DualSumVariant::s240;
  RealFn F;
  double lo = 0, hi = 1;
  long long K0 = 0;            // variants 2.40-2.42
  long long K1 = 0, K2 = 0;    // variants 2.43-2.45, range (K1, K2]
  double Q0 = 0;
  double epsilon = 0.1;        // exponent in the Q0^epsilon factors
};

struct DualSumResult {
  double lhs = 0;
  double rhs_shape = 0;
  double ratio = 0;
};

DualSumResult dual_sums(const DualSumQuery& query);

}  // namespace nearcurve
