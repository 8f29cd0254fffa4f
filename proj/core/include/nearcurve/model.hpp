#pragma once

#include "nearcurve/curve.hpp"

#include <optional>

namespace nearcurve {

struct HypothesisReport {
  bool h1 = false;
  double h1_min = 0;        // certified lower bound for |f^(d)| on the window
  double h1_required = 0;   // threshold 0.5*|f^(d)(a0)|
  bool h2 = false;
  double h2_ratio_min = 0;  // extremes of |f^(j)| / |h^(j)| on outer half-annuli
  double h2_ratio_max = 0;
  bool h3 = false;
  bool grid_certified = true;  // heuristic grid check, not interval arithmetic

  bool all() const { return h1 && h2 && h3; }
};

// Certified local normal form f(t) ~ c0 + c1 (t - a0)^d + R(t) on
// (a0 - eps0, a0 + eps0).
struct ModelCase {
  double a0 = 0;
  int d = 0;
  double c0 = 0;            // f(a0)
  double c1 = 0;            // f^(d)(a0) / d!
  double eps0 = 0;
  int orient_left = 0;      // sign of f'' on each open half interval
  int orient_right = 0;
  HypothesisReport hyp;
  double remainder_bound = 0;  // max |f^(d+1)| / (d+1)! over the window
};

// Smallest d in [2, deriv_order_max] with f^(1..d-1)(a0) all ~ 0 and
// f^(d)(a0) not ~ 0; nullopt when f'(a0) != 0 or no such d exists.
// Polynomial curves use exact zero tests; analytic kinds compare to tol.
std::optional<int> classify_type(const Curve& curve, double a0, double tol = 1e-9);

// Grid verification of the three model hypotheses on (a0-eps0, a0+eps0):
// H1: min |f^(d)| >= 0.5 |f^(d)(a0)|, with a derivative-Lipschitz slack
//     subtracted from the grid minimum;
// H2: |f^(j)| / |h^(j)| in [1/4, 4] on the outer half-annuli for j = 1..d,
//     where h(t) = c0 + c1 (t-a0)^d;
// H3: f' strictly monotone on each open half (f'' keeps one sign).
HypothesisReport certify_hypotheses(const Curve& curve, double a0, int d, double eps0);

// Finds the largest certifiable eps0 by halving from the cap (default 0.5,
// clipped to the formula's validity range); throws std::domain_error when
// certification still fails at the granularity floor cap * 2^-20.
ModelCase model_decompose(const Curve& curve, double a0, int d, double eps0_cap = 0.5);

}  // namespace nearcurve
