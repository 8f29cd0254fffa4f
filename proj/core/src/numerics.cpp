#include "nearcurve/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nearcurve {

std::complex<double> unit_phase(double x) {
  double a = 2 * std::numbers::pi * x;
  return {std::cos(a), std::sin(a)};
}

double monotone_invert(const RealFn& g, const RealFn& dg, double a, double b,
                       double target, double xtol, double hint) {
  double ga = g(a), gb = g(b);
  bool increasing = gb >= ga;
  double lo = a, hi = b;
  // clamp targets that fall out of range by float slop
  if (increasing) {
    if (target <= ga) return a;
    if (target >= gb) return b;
  } else {
    if (target >= ga) return a;
    if (target <= gb) return b;
  }
  double x = (hint > a && hint < b) ? hint : 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    double fx = g(x) - target;
    if (fx == 0) return x;
    bool below = increasing ? fx < 0 : fx > 0;  // root is above x
    if (below) lo = x; else hi = x;
    if (hi - lo <= xtol * std::max(1.0, std::abs(x))) break;
    double next = std::numeric_limits<double>::quiet_NaN();
    if (dg) {
      double d = dg(x);
      if (d != 0 && std::isfinite(d)) {
        double step = fx / d;
        double cand = x - step;
        if (cand > lo && cand < hi) next = cand;
      }
    }
    x = std::isnan(next) ? 0.5 * (lo + hi) : next;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (positive half).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEval {
  std::complex<double> k15;
  double err;
};

PanelEval eval_panel(const RealFn& phase, double j, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::complex<double> acc_k{0, 0}, acc_g{0, 0};
  for (int i = 0; i < 8; ++i) {
    double off = half * kXgk[i];
    double x1 = mid - off, x2 = mid + off;
    std::complex<double> f1 = unit_phase(phase(x1) - j * x1);
    std::complex<double> f2 = (i == 7) ? std::complex<double>{0, 0} : unit_phase(phase(x2) - j * x2);
    std::complex<double> both = (i == 7) ? f1 : f1 + f2;
    acc_k += kWgk[i] * both;
    // Gauss-7 nodes sit at every other Kronrod node, center included
    if (i % 2 == 1) acc_g += kWg[i / 2] * both;
  }
  acc_k *= half;
  acc_g *= half;
  PanelEval pe;
  pe.k15 = acc_k;
  pe.err = std::abs(acc_k - acc_g);
  return pe;
}

}  // namespace

QuadratureResult oscillatory_integral(const RealFn& phase, double c, double d,
                                      double j, double tol, long long max_panels,
                                      std::span<const double> presplit) {
  QuadratureResult res;
  if (!(d > c)) {
    res.converged = true;
    return res;
  }
  double total = d - c;

  std::vector<double> brk{c};
  for (double p : presplit)
    if (p > c && p < d) brk.push_back(p);
  brk.push_back(d);
  std::sort(brk.begin(), brk.end());

  // resolve oscillation up front: ~2 phase cycles per initial panel
  std::vector<std::pair<double, double>> stack;
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    double a = brk[i], b = brk[i + 1];
    if (!(b > a)) continue;
    double tv = 0, prev = phase(a) - j * a;
    constexpr int kProbe = 32;
    for (int s = 1; s <= kProbe; ++s) {
      double x = a + (b - a) * s / kProbe;
      double cur = phase(x) - j * x;
      tv += std::abs(cur - prev);
      prev = cur;
    }
    int pieces = static_cast<int>(std::clamp(tv / 2.0, 1.0, 4096.0));
    for (int s = 0; s < pieces; ++s)
      stack.emplace_back(a + (b - a) * s / pieces, a + (b - a) * (s + 1) / pieces);
  }
  std::reverse(stack.begin(), stack.end());  // process left to right

  KahanComplex acc;
  KahanSum err_acc;
  res.converged = true;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    PanelEval pe = eval_panel(phase, j, a, b);
    ++res.panels;
    double budget_here = tol * (b - a) / total;
    if (pe.err <= budget_here || (b - a) <= 1e-14 * total) {
      acc.add(pe.k15);
      err_acc.add(pe.err);
    } else if (res.panels + static_cast<long long>(stack.size()) + 2 <= max_panels) {
      double mid = 0.5 * (a + b);
      stack.emplace_back(mid, b);
      stack.emplace_back(a, mid);
    } else {
      acc.add(pe.k15);
      err_acc.add(pe.err);
      res.converged = false;
    }
  }
  res.value = acc.value();
  res.err_estimate = err_acc.value();
  return res;
}

double fit_line(std::span<const double> x, std::span<const double> y,
                double* intercept, double* rms) {
  std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double b = (sy - slope * sx) / n;
  if (intercept) *intercept = b;
  if (rms) {
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = y[i] - (slope * x[i] + b);
      ss += r * r;
    }
    *rms = std::sqrt(ss / n);
  }
  return slope;
}

}  // namespace nearcurve
