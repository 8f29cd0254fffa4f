#include "nearcurve/asymptotics.hpp"

#include "nearcurve/io.hpp"

#include <cmath>
#include <stdexcept>

namespace nearcurve {

double main_term(const RatInterval& I, long long Q, double delta) {
  double Qd = static_cast<double>(Q);
  return I.width_d() * delta * Qd * Qd;
}

double error_bound(int d, long long Q, double delta, double eps) {
  if (d < 2) throw std::invalid_argument("error_bound: need d >= 2");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("error_bound: need 0 < delta < 1");
  double Qd = static_cast<double>(Q);
  double flat = std::sqrt(delta) * std::log(1.0 / delta) *
                std::pow(Qd, 2.0 - 1.0 / (2.0 * (d - 1)));
  double curved = std::pow(delta, 1.0 / d) * std::pow(Qd, 2.0 - 1.0 / d);
  double trivial = std::pow(Qd, 1.0 + eps);
  return flat + curved + trivial;
}

std::optional<CountMethod> parse_method(std::string_view text) {
  if (text == "naive") return CountMethod::naive;
  if (text == "fast") return CountMethod::fast;
  if (text == "exact") return CountMethod::exact_poly;
  return std::nullopt;
}

std::string method_name(CountMethod m) {
  switch (m) {
    case CountMethod::naive: return "naive";
    case CountMethod::fast: return "fast";
    case CountMethod::exact_poly: return "exact";
  }
  return "?";
}

ScanTable scan_grid(const Curve& curve, const RatInterval& I, std::span<const long long> Qs,
                    std::span<const std::string> delta_texts, CountMethod method, int threads,
                    bool timings) {
  struct ParsedDelta {
    Rat value;
    bool decimal;
  };
  std::vector<ParsedDelta> deltas;
  for (const std::string& text : delta_texts) {
    auto r = parse_rational(text);
    if (!r) throw std::invalid_argument("scan_grid: unparsable delta: " + text);
    bool dec = is_decimal_literal(text);
    if (dec && method == CountMethod::exact_poly)
      throw std::invalid_argument("scan_grid: exact method needs rational delta literals, got " +
                                  text);
    deltas.push_back({std::move(*r), dec});
  }

  ScanTable table;
  table.curve_spec = curve.id();
  table.interval_text = format_interval(I);

  std::string cfg = table.curve_spec + "|" + table.interval_text + "|" + method_name(method);
  for (long long Q : Qs) cfg += "|Q=" + std::to_string(Q);
  for (const std::string& t : delta_texts) cfg += "|d=" + t;
  table.config_digest = fnv1a64_hex(cfg);

  for (long long Q : Qs) {
    for (const ParsedDelta& pd : deltas) {
      CountQuery query = pd.decimal ? CountQuery(Q, to_double(pd.value), I)
                                    : CountQuery(Q, pd.value, I);
      CountResult r = [&]() -> CountResult {
        switch (method) {
          case CountMethod::naive: return count_naive(curve, query, threads);
          case CountMethod::fast: return count_fast(curve, query, threads);
          case CountMethod::exact_poly: return count_exact_poly(curve, query);
        }
        throw std::logic_error("scan_grid: bad method");
      }();
      ScanRow row;
      row.curve_id = table.curve_spec;
      row.Q = Q;
      row.delta_text = query.delta_text();
      row.delta = query.delta;
      row.N = r.N;
      row.main_term = r.main_term;
      row.residual = r.residual;
      row.ambiguous = r.ambiguous;
      row.method = r.method;
      row.elapsed_ms = timings ? r.elapsed_ms : 0.0;
      row.regime_ok = query.in_regime;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

FitReport fit_exponents(const ScanTable& table, FitMode mode, const std::string& fixed_text) {
  auto fixed = parse_rational(fixed_text);
  double fixed_d = fixed ? to_double(*fixed) : 0.0;

  std::vector<double> xs, ys;
  for (const ScanRow& row : table.rows) {
    if (row.N <= 0 || row.ambiguous > 0) continue;
    bool match;
    if (mode == FitMode::slope_q) {
      match = row.delta_text == fixed_text ||
              (fixed && std::abs(row.delta - fixed_d) <= 1e-12 * std::max(1.0, fixed_d));
    } else {
      match = fixed && static_cast<double>(row.Q) == fixed_d;
    }
    if (!match) continue;
    xs.push_back(mode == FitMode::slope_q ? std::log(static_cast<double>(row.Q))
                                          : std::log(row.delta));
    ys.push_back(std::log(static_cast<double>(row.N)));
  }
  if (xs.size() < 4)
    throw std::invalid_argument("fit_exponents: need at least 4 usable rows at the fixed value");

  FitReport rep;
  rep.rows_used = static_cast<int>(xs.size());
  rep.slope = fit_line(xs, ys, &rep.intercept, &rep.rms);
  return rep;
}

ParabolaSharpness sharpness_parabola(long long Q) {
  if (Q < 1) throw std::invalid_argument("sharpness_parabola: Q must be >= 1");
  ParabolaSharpness s;
  s.Q = Q;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(Q)));
  while ((r + 1) * (r + 1) <= Q) ++r;
  while (r * r > Q) --r;
  for (long long q = 1; q <= r; ++q) s.construction_count += q + 1;

  Curve parabola = Curve::polynomial({Rat(0), Rat(0), Rat(1)}, RatInterval(Rat(0), Rat(1)));
  s.on_curve = on_curve_count(parabola, RatInterval(Rat(0), Rat(1)), Q);
  s.verified = s.on_curve >= s.construction_count;
  return s;
}

std::vector<FermatSharpnessRow> sharpness_fermat(int d, std::span<const long long> Qs,
                                                 double ymax, const RealFn& delta_rule) {
  if (!(ymax > 0.0) || !(ymax < 1.0))
    throw std::invalid_argument("sharpness_fermat: need 0 < ymax < 1");
  RatInterval I(Rat(0), Rat(ymax));
  Curve curve = Curve::fermat(d, I);

  std::vector<FermatSharpnessRow> rows;
  for (long long Q : Qs) {
    double Qd = static_cast<double>(Q);
    double delta = delta_rule ? delta_rule(Qd)
                              : 0.5 * std::pow(Qd, -1.0 / static_cast<double>(d - 1));
    CountQuery query(Q, delta, I);
    CountResult r = count_fast(curve, query);
    FermatSharpnessRow row;
    row.Q = Q;
    row.delta = delta;
    row.N = r.N;
    row.envelope = std::pow(delta, 1.0 / d) * std::pow(Qd, 2.0 - 1.0 / d) + delta * Qd * Qd;
    row.ratio = static_cast<double>(r.N) / row.envelope;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nearcurve
