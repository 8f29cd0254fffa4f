#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace nearcurve {

// Raised when a quadrature budget or root-finder domain is exhausted;
// the CLI maps it to exit code 2.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KahanSum {
  double s = 0, c = 0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

struct KahanComplex {
  KahanSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// e(x) = exp(2*pi*i*x), the phase convention used throughout.
std::complex<double> unit_phase(double x);

using RealFn = std::function<double(double)>;

// Root of g(x) = target on [a, b] for strictly monotone continuous g.
// Safeguarded Newton when dg is provided, bisection otherwise; xtol is the
// bracket-width stopping tolerance. hint warm-starts the iteration.
double monotone_invert(const RealFn& g, const RealFn& dg, double a, double b,
                       double target, double xtol = 1e-12,
                       double hint = std::numeric_limits<double>::quiet_NaN());

struct QuadratureResult {
  std::complex<double> value{0, 0};
  double err_estimate = 0;
  long long panels = 0;
  bool converged = false;
};

// integral over [c, d] of e(phase(x) - j*x), adaptive Gauss-Kronrod 7/15.
// Panels are pre-split at the given breakpoints (e.g. phase-derivative
// zeros) and by a total-variation heuristic so oscillation is resolved
// before bisection starts; the subdivision budget caps the panel count.
QuadratureResult oscillatory_integral(const RealFn& phase, double c, double d,
                                      double j = 0.0, double tol = 1e-9,
                                      long long max_panels = 1 << 20,
                                      std::span<const double> presplit = {});

// Least-squares line fit; returns slope, optionally intercept and RMS residual.
double fit_line(std::span<const double> x, std::span<const double> y,
                double* intercept = nullptr, double* rms = nullptr);

}  // namespace nearcurve
