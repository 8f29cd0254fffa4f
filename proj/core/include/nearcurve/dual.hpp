#pragma once

#include "nearcurve/curve.hpp"
#include "nearcurve/numerics.hpp"

namespace nearcurve {

// A function with its first two derivatives; d2f may be empty when unknown.
struct FuncView {
  RealFn f;
  RealFn df;
  RealFn d2f;
};

// Self-contained view of a curve (copies it into shared ownership).
FuncView func_view(const Curve& curve);

// Legendre-type dual of f on a base subinterval where f'' keeps one sign:
// f*(y) = y (f')^{-1}(y) - f((f')^{-1}(y)) for slopes y in J = f'([x_lo, x_hi]).
struct DualCurve {
  FuncView base;
  double x_lo = 0, x_hi = 0;
  double j_lo = 0, j_hi = 0;
  int convexity = 0;  // sign of f'' on the branch
  double inv_tol = 1e-12;
};

// Throws std::domain_error when f' is not strictly monotone on the
// subinterval (sampled check).
DualCurve make_dual(FuncView fv, double x_lo, double x_hi, double inv_tol = 1e-12);
DualCurve make_dual(const Curve& curve, double x_lo, double x_hi, double inv_tol = 1e-12);

// x with f'(x) = y. Slopes within a small slack of J are clamped to the
// boundary; anything further out throws std::domain_error.
double invert_fprime(const DualCurve& dual, double y);

double dual_eval(const DualCurve& dual, double y);

// The dual as a FuncView: value f*, derivative (f*)' = (f')^{-1}. Feeding
// this back into make_dual re-dualizes through the same machinery.
FuncView dual_view(const DualCurve& dual);

}  // namespace nearcurve
