#include "nearcurve/curve.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nearcurve {

namespace {

constexpr int kAnalyticOrderMax = 16;

std::vector<Rat> differentiate(const std::vector<Rat>& p) {
  std::vector<Rat> out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(Rat(static_cast<long>(i)) * p[i]);
  return out;
}

std::vector<double> to_doubles(const std::vector<Rat>& p) {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(to_double(c));
  return out;
}

double horner(const std::vector<double>& p, double x) {
  double v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

Rat horner_exact(const std::vector<Rat>& p, const Rat& x) {
  Rat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

}  // namespace

Curve::Curve(CurveKind k, RatInterval dom) : kind_(k), dom_(std::move(dom)) {}

Curve Curve::polynomial(std::vector<Rat> coeffs, RatInterval domain) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(Rat(0));
  Curve c(CurveKind::polynomial, std::move(domain));
  c.coef_ = coeffs;
  c.rows_.push_back(std::move(coeffs));
  while (!c.rows_.back().empty() && c.rows_.back().size() > 1)
    c.rows_.push_back(differentiate(c.rows_.back()));
  for (const auto& row : c.rows_) c.drows_.push_back(to_doubles(row));
  c.max_order_ = 1 << 20;  // every higher derivative is identically zero
  return c;
}

Curve Curve::cosine(RatInterval domain) {
  Curve c(CurveKind::cosine, std::move(domain));
  c.max_order_ = kAnalyticOrderMax;
  return c;
}

Curve Curve::exp_poly(std::vector<Rat> inner, RatInterval domain) {
  Curve c(CurveKind::exp_poly, std::move(domain));
  c.coef_ = inner;
  c.rows_.push_back(std::move(inner));
  while (c.rows_.back().size() > 1) c.rows_.push_back(differentiate(c.rows_.back()));
  for (const auto& row : c.rows_) c.drows_.push_back(to_doubles(row));
  c.max_order_ = kAnalyticOrderMax;
  return c;
}

Curve Curve::fermat(int d, RatInterval domain) {
  if (d < 2) throw std::invalid_argument("fermat: d must be >= 2");
  if (!(domain.hi() < 1)) throw std::invalid_argument("fermat: domain must satisfy y < 1");
  if (d % 2 == 0 && !(domain.lo() > -1)) throw std::invalid_argument("fermat: even d needs |y| < 1");
  Curve c(CurveKind::fermat, std::move(domain));
  c.fermat_d_ = d;
  c.max_order_ = kAnalyticOrderMax;

  // f^(m)(y) = sum_j P_{m,j}(y) u^{1/d-j} with u = 1 - y^d. Differentiating a
  // term (P, beta=1/d-j) yields (P', beta) and (-d*beta*y^{d-1}*P, beta-1).
  std::vector<std::vector<Rat>> cur(1);
  cur[0] = {Rat(1)};  // order 0: P_{0,0} = 1
  c.fermat_terms_.push_back(cur);
  for (int m = 1; m <= c.max_order_; ++m) {
    std::vector<std::vector<Rat>> next(m + 1);
    for (int j = 0; j < static_cast<int>(cur.size()); ++j) {
      const auto& P = cur[j];
      if (P.empty()) continue;
      Rat beta = Rat(1, d) - j;
      // P' keeps exponent index j
      auto dP = differentiate(P);
      auto& tgt = next[j];
      if (tgt.size() < dP.size()) tgt.resize(dP.size(), Rat(0));
      for (std::size_t i = 0; i < dP.size(); ++i) tgt[i] += dP[i];
      // -d*beta*y^{d-1}*P moves to exponent index j+1
      auto& tgt2 = next[j + 1];
      std::size_t need = P.size() + d - 1;
      if (tgt2.size() < need) tgt2.resize(need, Rat(0));
      Rat fac = Rat(-d) * beta;
      for (std::size_t i = 0; i < P.size(); ++i) tgt2[i + d - 1] += fac * P[i];
    }
    c.fermat_terms_.push_back(next);
    cur = std::move(next);
  }
  for (const auto& order : c.fermat_terms_) {
    std::vector<std::vector<double>> row;
    for (const auto& P : order) row.push_back(to_doubles(P));
    c.fermat_terms_d_.push_back(std::move(row));
  }
  return c;
}

double Curve::poly_row_eval(int order, double x) const {
  if (order >= static_cast<int>(drows_.size())) return 0.0;
  return horner(drows_[order], x);
}

double Curve::exp_poly_deriv(int order, double x) const {
  // f = exp(p): f^(n) = sum_{k=1..n} C(n-1,k-1) p^(k) f^(n-k)
  std::vector<double> f(order + 1);
  f[0] = std::exp(poly_row_eval(0, x));
  std::vector<double> pd(order + 1);
  for (int k = 1; k <= order; ++k) pd[k] = poly_row_eval(k, x);
  for (int n = 1; n <= order; ++n) {
    double binom = 1.0, acc = 0.0;
    for (int k = 1; k <= n; ++k) {
      acc += binom * pd[k] * f[n - k];
      binom = binom * (n - k) / k;
    }
    f[n] = acc;
  }
  return f[order];
}

double Curve::fermat_deriv(int order, double y) const {
  double u = 1.0 - std::pow(y, fermat_d_);
  if (!(u > 0)) return std::numeric_limits<double>::quiet_NaN();
  double w = std::pow(u, 1.0 / fermat_d_);
  const auto& buckets = fermat_terms_d_[order];
  // u^{1/d-j} = w * u^{-j}, accumulated from j = high down for stability
  double acc = 0.0;
  for (std::size_t j = buckets.size(); j-- > 0;) {
    if (buckets[j].empty()) continue;
    double uj = std::pow(u, -static_cast<double>(j));
    acc += horner(buckets[j], y) * w * uj;
  }
  return acc;
}

double Curve::derivative(int order, double x) const {
  switch (kind_) {
    case CurveKind::polynomial:
      return poly_row_eval(order, x);
    case CurveKind::cosine:
      switch (order & 3) {
        case 0: return std::cos(x);
        case 1: return -std::sin(x);
        case 2: return -std::cos(x);
        default: return std::sin(x);
      }
    case CurveKind::exp_poly:
      return exp_poly_deriv(order, x);
    case CurveKind::fermat:
      return fermat_deriv(order, x);
  }
  return 0.0;
}

double Curve::eval_derivative(int order, double x) const {
  if (order < 0 || order > max_order_) throw std::out_of_range("eval_derivative: order out of range");
  if (!dom_.contains(x)) throw std::domain_error("eval_derivative: x outside domain");
  return derivative(order, x);
}

Rat Curve::derivative_exact(int order, const Rat& x) const {
  if (kind_ != CurveKind::polynomial) throw std::domain_error("exact evaluation requires polynomial kind");
  if (order < 0) throw std::out_of_range("derivative_exact: negative order");
  if (order >= static_cast<int>(rows_.size())) return Rat(0);
  return horner_exact(rows_[order], x);
}

std::string Curve::id() const {
  switch (kind_) {
    case CurveKind::polynomial: {
      std::string s = "poly:";
      for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (i) s += ",";
        s += format_rational(coef_[i]);
      }
      return s;
    }
    case CurveKind::cosine:
      return "cos";
    case CurveKind::exp_poly: {
      std::string s = "exp:";
      for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (i) s += ",";
        s += format_rational(coef_[i]);
      }
      return s;
    }
    case CurveKind::fermat:
      return "fermat:" + std::to_string(fermat_d_);
  }
  return "";
}

std::vector<double> Curve::critical_points(double a, double b) const {
  std::vector<double> out;
  if (!(a < b)) return out;
  constexpr int kGrid = 4096;
  double h = (b - a) / kGrid;
  double prev = derivative(1, a);
  for (int i = 1; i <= kGrid; ++i) {
    double x = a + i * h;
    double cur = derivative(1, x);
    if (prev == 0.0) {
      if (out.empty() || out.back() != x - h) out.push_back(x - h);
    } else if ((prev < 0 && cur > 0) || (prev > 0 && cur < 0)) {
      double lo = x - h, hi = x, flo = prev;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi), fm = derivative(1, mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if ((flo < 0) == (fm < 0)) { lo = mid; flo = fm; } else { hi = mid; }
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  if (prev == 0.0 && (out.empty() || out.back() != b)) out.push_back(b);
  return out;
}

std::optional<Curve> parse_curve(std::string_view spec, RatInterval domain) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  spec = trim(spec);
  auto parse_coeffs = [&](std::string_view body) -> std::optional<std::vector<Rat>> {
    std::vector<Rat> cs;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      auto comma = body.find(',', pos);
      std::string_view tok = comma == std::string_view::npos ? body.substr(pos) : body.substr(pos, comma - pos);
      auto r = parse_rational(trim(tok));
      if (!r) return std::nullopt;
      cs.push_back(*r);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (cs.empty()) return std::nullopt;
    return cs;
  };

  try {
    if (spec == "cos") return Curve::cosine(std::move(domain));
    if (spec.substr(0, 5) == "poly:") {
      auto cs = parse_coeffs(spec.substr(5));
      if (!cs) return std::nullopt;
      return Curve::polynomial(std::move(*cs), std::move(domain));
    }
    if (spec.substr(0, 4) == "exp:") {
      auto cs = parse_coeffs(spec.substr(4));
      if (!cs) return std::nullopt;
      return Curve::exp_poly(std::move(*cs), std::move(domain));
    }
    if (spec.substr(0, 7) == "fermat:") {
      auto body = trim(spec.substr(7));
      int d = 0;
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        d = d * 10 + (c - '0');
        if (d > 64) return std::nullopt;
      }
      if (d < 2) return std::nullopt;
      return Curve::fermat(d, std::move(domain));
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace nearcurve
