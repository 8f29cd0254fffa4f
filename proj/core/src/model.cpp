#include "nearcurve/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nearcurve {

namespace {

constexpr int kH1Grid = 10000;
constexpr int kH2Grid = 2500;

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Formula validity half-widths around a0; infinite except for fermat.
double validity_halfwidth(const Curve& c, double a0) {
  if (c.kind() != CurveKind::fermat) return std::numeric_limits<double>::infinity();
  double right = 1.0 - a0;
  double left = c.fermat_degree() % 2 == 0 ? a0 - (-1.0) : std::numeric_limits<double>::infinity();
  return std::min(left, right);
}

int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Constant sign of f'' on [a, b] sampled at n+1 points; 0 when mixed or zero.
int constant_sign_d2(const Curve& f, double a, double b, int n) {
  int s = 0;
  for (int i = 0; i <= n; ++i) {
    double x = a + (b - a) * i / n;
    int si = sign_of(f.derivative(2, x));
    if (si == 0) return 0;
    if (s == 0) s = si;
    else if (s != si) return 0;
  }
  return s;
}

}  // namespace

std::optional<int> classify_type(const Curve& curve, double a0, double tol) {
  if (!curve.domain().contains(a0)) throw std::domain_error("classify_type: a0 outside domain");
  int kmax = std::min(curve.deriv_order_max(), 64);
  auto deriv_is_zero = [&](int k) {
    if (curve.is_polynomial()) return curve.derivative_exact(k, Rat(a0)) == 0;
    return std::abs(curve.derivative(k, a0)) <= tol;
  };
  if (!deriv_is_zero(1)) return std::nullopt;
  for (int d = 2; d <= kmax; ++d) {
    if (!deriv_is_zero(d)) return d;
  }
  return std::nullopt;
}

HypothesisReport certify_hypotheses(const Curve& curve, double a0, int d, double eps0) {
  HypothesisReport rep;
  double fd0 = curve.derivative(d, a0);
  rep.h1_required = 0.5 * std::abs(fd0);

  // H1 with Lipschitz slack: true min >= grid min - max|f^(d+1)| * h/2
  double lo = a0 - eps0, hi = a0 + eps0;
  double h = (hi - lo) / kH1Grid;
  double min_fd = std::numeric_limits<double>::infinity();
  double max_fd1 = 0;
  for (int i = 0; i <= kH1Grid; ++i) {
    double x = lo + i * h;
    min_fd = std::min(min_fd, std::abs(curve.derivative(d, x)));
    max_fd1 = std::max(max_fd1, std::abs(curve.derivative(d + 1, x)));
  }
  rep.h1_min = min_fd - max_fd1 * h / 2;
  rep.h1 = rep.h1_min >= rep.h1_required && std::isfinite(rep.h1_min) && rep.h1_required > 0;

  // H2 on the outer half-annuli against h(t) = c0 + c1 (t-a0)^d
  double c1 = fd0 / factorial(d);
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0;
  bool h2ok = c1 != 0;
  for (int side = 0; side < 2 && h2ok; ++side) {
    double s0 = side == 0 ? a0 + eps0 / 2 : a0 - eps0;
    double s1 = side == 0 ? a0 + eps0 : a0 - eps0 / 2;
    for (int j = 1; j <= d; ++j) {
      double hcoef = c1 * factorial(d) / factorial(d - j);
      for (int i = 0; i <= kH2Grid; ++i) {
        double t = s0 + (s1 - s0) * i / kH2Grid;
        double hj = hcoef * std::pow(t - a0, d - j);
        double fj = curve.derivative(j, t);
        if (hj == 0 || !std::isfinite(fj)) { h2ok = false; break; }
        double r = std::abs(fj) / std::abs(hj);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
      }
      if (!h2ok) break;
    }
  }
  rep.h2_ratio_min = rmin;
  rep.h2_ratio_max = rmax;
  rep.h2 = h2ok && rmin >= 0.25 && rmax <= 4.0;

  // H3: f' strictly monotone per half; for d = 2 one sign of f'' suffices
  if (d == 2) {
    int s = constant_sign_d2(curve, lo, hi, kH1Grid);
    rep.h3 = s != 0;
  } else {
    double gap = eps0 / kH1Grid;
    int sl = constant_sign_d2(curve, lo, a0 - gap, kH1Grid / 2);
    int sr = constant_sign_d2(curve, a0 + gap, hi, kH1Grid / 2);
    rep.h3 = sl != 0 && sr != 0;
  }
  return rep;
}

ModelCase model_decompose(const Curve& curve, double a0, int d, double eps0_cap) {
  auto type = classify_type(curve, a0);
  if (!type || *type != d) throw std::domain_error("model_decompose: curve is not of type d at a0");

  double vh = validity_halfwidth(curve, a0);
  double cap = std::min(eps0_cap, 0.999 * vh);
  if (!(cap > 0)) throw std::domain_error("model_decompose: no room around a0");

  double floor_eps = cap * 0x1p-20;
  for (double eps = cap; eps >= floor_eps; eps /= 2) {
    HypothesisReport rep = certify_hypotheses(curve, a0, d, eps);
    if (!rep.all()) continue;
    ModelCase m;
    m.a0 = a0;
    m.d = d;
    m.c0 = curve.derivative(0, a0);
    m.c1 = curve.derivative(d, a0) / factorial(d);
    m.eps0 = eps;
    m.hyp = rep;
    m.orient_left = sign_of(curve.derivative(2, a0 - eps / 2));
    m.orient_right = sign_of(curve.derivative(2, a0 + eps / 2));
    double rb = 0;
    for (int i = 0; i <= kH1Grid; ++i) {
      double x = a0 - eps + 2 * eps * i / kH1Grid;
      rb = std::max(rb, std::abs(curve.derivative(d + 1, x)));
    }
    m.remainder_bound = rb / factorial(d + 1);
    return m;
  }
  throw std::domain_error("model_decompose: certification failed at granularity floor");
}

}  // namespace nearcurve
