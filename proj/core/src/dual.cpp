#include "nearcurve/dual.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace nearcurve {

FuncView func_view(const Curve& curve) {
  auto c = std::make_shared<const Curve>(curve);
  FuncView fv;
  fv.f = [c](double x) { return c->derivative(0, x); };
  fv.df = [c](double x) { return c->derivative(1, x); };
  fv.d2f = [c](double x) { return c->derivative(2, x); };
  return fv;
}

DualCurve make_dual(FuncView fv, double x_lo, double x_hi, double inv_tol) {
  if (!(x_lo < x_hi)) throw std::domain_error("make_dual: empty base interval");
  DualCurve d;
  d.x_lo = x_lo;
  d.x_hi = x_hi;
  d.inv_tol = inv_tol;

  // f' must be strictly monotone on the branch (f'' != 0 throughout)
  constexpr int kProbe = 128;
  double prev = fv.df(x_lo);
  double first = prev;
  bool inc = true, dec = true;
  for (int i = 1; i <= kProbe; ++i) {
    double x = x_lo + (x_hi - x_lo) * i / kProbe;
    double cur = fv.df(x);
    if (!(cur > prev)) inc = false;
    if (!(cur < prev)) dec = false;
    prev = cur;
  }
  if (!inc && !dec) throw std::domain_error("make_dual: f' not strictly monotone on branch");
  d.convexity = inc ? 1 : -1;
  d.j_lo = std::min(first, prev);
  d.j_hi = std::max(first, prev);
  d.base = std::move(fv);
  return d;
}

DualCurve make_dual(const Curve& curve, double x_lo, double x_hi, double inv_tol) {
  return make_dual(func_view(curve), x_lo, x_hi, inv_tol);
}

double invert_fprime(const DualCurve& dual, double y) {
  double slack = 1e-9 * std::max(1.0, std::max(std::abs(dual.j_lo), std::abs(dual.j_hi)));
  if (y < dual.j_lo - slack || y > dual.j_hi + slack)
    throw std::domain_error("invert_fprime: slope outside J");
  double yc = std::min(std::max(y, dual.j_lo), dual.j_hi);
  return monotone_invert(dual.base.df, dual.base.d2f, dual.x_lo, dual.x_hi, yc,
                         dual.inv_tol, 0.5 * (dual.x_lo + dual.x_hi));
}

double dual_eval(const DualCurve& dual, double y) {
  double x = invert_fprime(dual, y);
  return y * x - dual.base.f(x);
}

FuncView dual_view(const DualCurve& dual) {
  FuncView fv;
  fv.f = [dual](double y) { return dual_eval(dual, y); };
  fv.df = [dual](double y) { return invert_fprime(dual, y); };
  return fv;
}

}  // namespace nearcurve
