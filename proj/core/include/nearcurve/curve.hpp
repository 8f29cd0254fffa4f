#pragma once

#include "nearcurve/interval.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nearcurve {

enum class CurveKind { polynomial, cosine, exp_poly, fermat };

// A planar graph curve y = f(x) with closed analytic formulas for all
// derivatives used by the library. No finite differencing on the primary
// path. Instances are immutable after construction and safe to share
// between threads.
class Curve {
 public:
  // f(x) = sum coeffs[i] x^i, exact rational coefficients.
  static Curve polynomial(std::vector<Rat> coeffs, RatInterval domain);
  static Curve cosine(RatInterval domain);
  // f(x) = exp(sum inner[i] x^i).
  static Curve exp_poly(std::vector<Rat> inner, RatInterval domain);
  // f(y) = (1 - y^d)^(1/d); domain must stay clear of the singular point y = 1.
  static Curve fermat(int d, RatInterval domain);

  CurveKind kind() const { return kind_; }
  const RatInterval& domain() const { return dom_; }
  bool is_polynomial() const { return kind_ == CurveKind::polynomial; }
  int fermat_degree() const { return fermat_d_; }
  const std::vector<Rat>& coefficients() const { return coef_; }
  int deriv_order_max() const { return max_order_; }

  // Formula evaluation, unchecked: valid wherever the closed form is defined
  // (everywhere for polynomial/cos/exp, u = 1 - y^d > 0 for fermat), which
  // may extend beyond the stated domain. Model certification relies on that.
  double value(double x) const { return derivative(0, x); }
  double operator()(double x) const { return derivative(0, x); }
  double derivative(int order, double x) const;

  // The checked public operation: requires x in domain, order <= max.
  double eval_derivative(int order, double x) const;

  // Exact rational evaluation; polynomial kind only.
  Rat value_exact(const Rat& x) const { return derivative_exact(0, x); }
  Rat derivative_exact(int order, const Rat& x) const;

  // Canonical spec string: "poly:0,0,1", "cos", "exp:0,1", "fermat:3".
  std::string id() const;

  // Zeros of f' in [a, b] (ascending), by sign-change bisection on a dense
  // grid. Used for monotone segmentation and quadrature pre-splitting.
  std::vector<double> critical_points(double a, double b) const;

 private:
  Curve(CurveKind k, RatInterval dom);

  CurveKind kind_;
  RatInterval dom_;
  int max_order_ = 0;
  int fermat_d_ = 0;
  std::vector<Rat> coef_;                        // poly coeffs or exp inner coeffs
  std::vector<std::vector<Rat>> rows_;           // derivative coefficient rows
  std::vector<std::vector<double>> drows_;       // same rows as doubles
  // fermat: f^(m) = sum_j P_{m,j}(y) u^{1/d - j}, u = 1 - y^d;
  // fermat_terms_[m][j] holds the coefficients of P_{m,j}.
  std::vector<std::vector<std::vector<Rat>>> fermat_terms_;
  std::vector<std::vector<std::vector<double>>> fermat_terms_d_;

  double poly_row_eval(int order, double x) const;
  double exp_poly_deriv(int order, double x) const;
  double fermat_deriv(int order, double y) const;
};

// Grammar: "poly:c0,c1,...,cn" | "cos" | "exp:c0,...,cn" | "fermat:d",
// rational or decimal coefficients parsed exactly.
std::optional<Curve> parse_curve(std::string_view spec, RatInterval domain);

}  // namespace nearcurve
