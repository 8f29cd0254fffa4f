#include "nearcurve/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nearcurve {

namespace {

double frac_part(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // floor rounding at integer inputs
  return f;
}

}  // namespace

SequencePoints sequence_points(const Curve& curve, const RatInterval& I, long long Q) {
  if (Q < 1) throw std::invalid_argument("sequence_points: Q must be >= 1");
  SequencePoints pts;
  pts.curve_id = curve.id();
  pts.Q = Q;
  for (long long q = 1; q <= Q; ++q) {
    ARange ar = I.lattice(q);
    for (long long a = ar.first; a <= ar.last; ++a) {
      double x = static_cast<double>(a) / static_cast<double>(q);
      double u = static_cast<double>(q) * curve.eval_derivative(0, x);
      pts.entries.push_back({a, q, u});
    }
  }
  return pts;
}

std::pair<long long, double> discrepancy(const SequencePoints& pts, double alpha, double beta) {
  double width = beta - alpha;
  if (!(width > 0.0) || !(width < 1.0))
    throw std::invalid_argument("discrepancy: need 0 < beta - alpha < 1");
  long long Z = 0;
  for (const auto& e : pts.entries) {
    double v = frac_part(e.u - alpha);
    if (v > 0.0 && v < width) ++Z;
  }
  double D = static_cast<double>(Z) - width * static_cast<double>(pts.entries.size());
  return {Z, D};
}

double erdos_turan_bound(const SequencePoints& pts, double alpha, double beta, long long K) {
  double width = beta - alpha;
  if (!(width > 0.0) || !(width < 1.0))
    throw std::invalid_argument("erdos_turan_bound: need 0 < beta - alpha < 1");
  if (K < 1) throw std::invalid_argument("erdos_turan_bound: K must be >= 1");

  const std::size_t n = pts.entries.size();
  // z_n = e(u_n); the k-th sum reuses running powers z_n^k, so the whole
  // bound costs one complex multiply per (n, k) instead of a sin/cos pair.
  std::vector<std::complex<double>> z(n), w(n, {1.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) z[i] = unit_phase(frac_part(pts.entries[i].u));

  double bound = static_cast<double>(n) / static_cast<double>(K + 1);
  for (long long k = 1; k <= K; ++k) {
    KahanComplex sk;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= z[i];
      sk.add(w[i]);
    }
    double bk = 1.0 / static_cast<double>(K + 1) +
                std::min(width, 1.0 / (std::numbers::pi * static_cast<double>(k)));
    bound += 2.0 * bk * std::abs(sk.value());
  }
  return bound;
}

DiscrepancyRecord discrepancy_record(const SequencePoints& pts, double alpha, double beta,
                                     long long K) {
  DiscrepancyRecord rec;
  rec.N = static_cast<long long>(pts.entries.size());
  rec.alpha = alpha;
  rec.beta = beta;
  auto [Z, D] = discrepancy(pts, alpha, beta);
  rec.Z = Z;
  rec.D = D;
  rec.K = K;
  rec.et_bound = erdos_turan_bound(pts, alpha, beta, K);
  return rec;
}

std::complex<double> exp_sum(const SequencePoints& pts, long long k) {
  KahanComplex acc;
  for (const auto& e : pts.entries)
    acc.add(unit_phase(static_cast<double>(k) * frac_part(e.u)));
  return acc.value();
}

std::complex<double> exp_sum(const Curve& curve, const RatInterval& I, long long Q, long long k) {
  if (Q < 1) throw std::invalid_argument("exp_sum: Q must be >= 1");
  KahanComplex acc;
  for (long long q = 1; q <= Q; ++q) {
    ARange ar = I.lattice(q);
    for (long long a = ar.first; a <= ar.last; ++a) {
      double x = static_cast<double>(a) / static_cast<double>(q);
      double u = static_cast<double>(q) * curve.eval_derivative(0, x);
      acc.add(unit_phase(static_cast<double>(k) * frac_part(u)));
    }
  }
  return acc.value();
}

PoissonReport poisson_check(const RealFn& g, const RealFn& gp, double c, double d, double tol) {
  if (!(c < d)) throw std::invalid_argument("poisson_check: need c < d");

  // g' must be nondecreasing; a flat phase (g' constant) is fine, a turning
  // derivative is not. 256-point grid with a relative slack.
  constexpr int kGrid = 256;
  double prev = gp(c);
  for (int i = 1; i <= kGrid; ++i) {
    double x = c + (d - c) * static_cast<double>(i) / kGrid;
    double cur = gp(x);
    if (cur < prev - 1e-9 * std::max(1.0, std::abs(prev)))
      throw std::invalid_argument("poisson_check: g' is not nondecreasing on [c, d]");
    prev = cur;
  }

  PoissonReport rep;
  rep.s = gp(c);
  rep.t = gp(d);

  KahanComplex lhs;
  long long n_lo = static_cast<long long>(std::ceil(c - 1e-9));
  long long n_hi = static_cast<long long>(std::floor(d + 1e-9));
  for (long long n = n_lo; n <= n_hi; ++n) lhs.add(unit_phase(g(static_cast<double>(n))));
  rep.lhs = lhs.value();

  long long j_lo = static_cast<long long>(std::ceil(rep.s - 1.0 - 1e-9));
  long long j_hi = static_cast<long long>(std::floor(rep.t + 1.0 + 1e-9));
  double snap = 1e-9 * std::max(1.0, rep.t - rep.s);
  KahanComplex rhs;
  for (long long j = j_lo; j <= j_hi; ++j) {
    double jd = static_cast<double>(j);
    RealFn phase = [&g, jd](double x) { return g(x) - jd * x; };
    std::vector<double> cuts;
    if (jd > rep.s + snap && jd < rep.t - snap)
      cuts.push_back(monotone_invert(gp, RealFn{}, c, d, jd, 1e-12));
    QuadratureResult integ = oscillatory_integral(phase, c, d, 0, tol, 1 << 20, cuts);
    if (!integ.converged)
      throw NumericError("poisson_check: quadrature did not converge");
    rhs.add(integ.value);
  }
  rep.rhs = rhs.value();
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.normalized = rep.residual / std::log(2.0 + (rep.t - rep.s));
  return rep;
}

double vdc_value(const Curve& curve, double lo, double hi, int d, double lambda, double tol,
                 long long max_panels) {
  if (!(lo < hi)) throw std::invalid_argument("vdc_value: need lo < hi");
  if (d < 2) throw std::invalid_argument("vdc_value: need d >= 2");
  if (!(lambda >= 1.0)) throw std::invalid_argument("vdc_value: need lambda >= 1");
  RealFn phase = [&curve, lambda](double x) { return lambda * curve.eval_derivative(0, x); };
  std::vector<double> cuts = curve.critical_points(lo, hi);
  QuadratureResult integ = oscillatory_integral(phase, lo, hi, 0, tol, max_panels, cuts);
  if (!integ.converged) throw NumericError("vdc_value: quadrature did not converge");
  return std::pow(lambda, 1.0 / static_cast<double>(d)) * std::abs(integ.value);
}

double vdc_check(const Curve& curve, double lo, double hi, int d, std::span<const double> lambdas,
                 double tol, long long max_panels) {
  if (lambdas.empty()) throw std::invalid_argument("vdc_check: empty lambda grid");
  double worst = 0.0;
  for (double lambda : lambdas)
    worst = std::max(worst, vdc_value(curve, lo, hi, d, lambda, tol, max_panels));
  return worst;
}

StationaryPhaseReport stationary_phase_approx(const DualCurve& dual, double lambda, double y,
                                              double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("stationary_phase_approx: need lambda > 0");
  StationaryPhaseReport rep;
  rep.lambda = lambda;
  rep.y = y;
  rep.theta1 = invert_fprime(dual, y);

  // The quadrature uses the raw branch integral (sharp endpoints), so the
  // stationary point has to sit well clear of both ends for the leading term
  // to dominate the boundary contributions.
  double len = dual.x_hi - dual.x_lo;
  if (rep.theta1 < dual.x_lo + 0.25 * len || rep.theta1 > dual.x_hi - 0.25 * len)
    throw std::domain_error("stationary_phase_approx: stationary point outside middle half");

  double fpp;
  if (dual.base.d2f) {
    fpp = dual.base.d2f(rep.theta1);
  } else {
    double h = 1e-5 * std::max(1.0, std::abs(rep.theta1));
    fpp = (dual.base.df(rep.theta1 + h) - dual.base.df(rep.theta1 - h)) / (2.0 * h);
  }
  if (!(std::abs(fpp) > 0.0))
    throw std::domain_error("stationary_phase_approx: vanishing second derivative");

  double fstar = dual_eval(dual, y);
  double sigma = dual.convexity;
  rep.approx = unit_phase(-lambda * fstar + sigma / 8.0) /
               std::sqrt(lambda * std::abs(fpp));

  const RealFn& f = dual.base.f;
  RealFn phase = [&f, lambda, y](double x) { return lambda * (f(x) - y * x); };
  const double cut[] = {rep.theta1};
  QuadratureResult integ =
      oscillatory_integral(phase, dual.x_lo, dual.x_hi, 0, tol, 1 << 20, cut);
  if (!integ.converged)
    throw NumericError("stationary_phase_approx: quadrature did not converge");
  rep.exact = integ.value;
  rep.err = std::abs(rep.approx - rep.exact);
  return rep;
}

std::optional<DualSumVariant> parse_variant(std::string_view text) {
  if (text == "2.40") return DualSumVariant::s240;
  if (text == "2.41") return DualSumVariant::s241;
  if (text == "2.42") return DualSumVariant::s242;
  if (text == "2.43") return DualSumVariant::s243;
  if (text == "2.44") return DualSumVariant::s244;
  if (text == "2.45") return DualSumVariant::s245;
  return std::nullopt;
}

std::string variant_name(DualSumVariant v) {
  switch (v) {
    case DualSumVariant::s240: return "2.40";
    case DualSumVariant::s241: return "2.41";
    case DualSumVariant::s242: return "2.42";
    case DualSumVariant::s243: return "2.43";
    case DualSumVariant::s244: return "2.44";
    case DualSumVariant::s245: return "2.45";
  }
  return "?";
}

DualSumResult dual_sums(const DualSumQuery& query) {
  if (!query.F) throw std::invalid_argument("dual_sums: missing F");
  if (!(query.lo < query.hi)) throw std::invalid_argument("dual_sums: need lo < hi");
  if (!(query.Q0 >= 1.0)) throw std::invalid_argument("dual_sums: need Q0 >= 1");

  bool low_range;  // k0 in [1, K0] with weight k0^{-1/2}, else (K1, K2] with k0^{-3/2}
  switch (query.variant) {
    case DualSumVariant::s240:
    case DualSumVariant::s241:
    case DualSumVariant::s242: low_range = true; break;
    default: low_range = false; break;
  }
  long long k_first, k_last;
  if (low_range) {
    if (query.K0 < 1) throw std::invalid_argument("dual_sums: need K0 >= 1");
    k_first = 1;
    k_last = query.K0;
  } else {
    if (query.K1 < 1 || query.K2 <= query.K1)
      throw std::invalid_argument("dual_sums: need 1 <= K1 < K2");
    k_first = query.K1 + 1;
    k_last = query.K2;
  }

  bool small_window = false;  // keep ||k0 F(j/k0)|| <= 1/Q0 instead of > 1/Q0
  int norm_power = 0;         // 0: factor 1; 1: ||.||^{-1/2}; 2: ||.||^{-1}
  switch (query.variant) {
    case DualSumVariant::s240: small_window = false; norm_power = 1; break;
    case DualSumVariant::s241: small_window = false; norm_power = 2; break;
    case DualSumVariant::s242: small_window = true;  norm_power = 0; break;
    case DualSumVariant::s243: small_window = false; norm_power = 1; break;
    case DualSumVariant::s244: small_window = false; norm_power = 2; break;
    case DualSumVariant::s245: small_window = true;  norm_power = 0; break;
  }

  const double cutoff = 1.0 / query.Q0;
  KahanSum lhs;
  for (long long k0 = k_first; k0 <= k_last; ++k0) {
    double k0d = static_cast<double>(k0);
    double weight = low_range ? 1.0 / std::sqrt(k0d) : 1.0 / (k0d * std::sqrt(k0d));
    long long j_lo = static_cast<long long>(std::ceil(k0d * query.lo - 1e-9));
    long long j_hi = static_cast<long long>(std::floor(k0d * query.hi + 1e-9));
    KahanSum slot;
    for (long long j = j_lo; j <= j_hi; ++j) {
      double nd = dist_nearest_int(k0d * query.F(static_cast<double>(j) / k0d));
      bool inside = small_window ? (nd <= cutoff) : (nd > cutoff);
      if (!inside) continue;
      switch (norm_power) {
        case 0: slot.add(1.0); break;
        case 1: slot.add(1.0 / std::sqrt(nd)); break;
        default: slot.add(1.0 / nd); break;
      }
    }
    lhs.add(weight * slot.value());
  }

  double rhs;
  double eps = query.epsilon;
  if (low_range) {
    double K0 = static_cast<double>(query.K0);
    double head = std::pow(K0, 1.5);
    double tail = std::sqrt(K0) * std::log(K0);
    switch (query.variant) {
      case DualSumVariant::s240: rhs = head + tail * std::sqrt(query.Q0); break;
      case DualSumVariant::s241: rhs = head * std::pow(query.Q0, eps) + tail * query.Q0; break;
      default: rhs = head * std::pow(query.Q0, eps - 1.0) + tail; break;
    }
  } else {
    double K1 = static_cast<double>(query.K1);
    double K2 = static_cast<double>(query.K2);
    double head = std::sqrt(K2);
    double tail = std::log(K1) / std::sqrt(K1);
    switch (query.variant) {
      case DualSumVariant::s243: rhs = head + tail * std::sqrt(query.Q0); break;
      case DualSumVariant::s244: rhs = head * std::pow(query.Q0, eps) + tail * query.Q0; break;
      default: rhs = head * std::pow(query.Q0, eps - 1.0) + tail; break;
    }
  }

  DualSumResult res;
  res.lhs = lhs.value();
  res.rhs_shape = rhs;
  res.ratio = rhs > 0.0 ? res.lhs / rhs : std::numeric_limits<double>::infinity();
  return res;
}

}  // namespace nearcurve
