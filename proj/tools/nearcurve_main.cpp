#include <nearcurve/asymptotics.hpp>
#include <nearcurve/counting.hpp>
#include <nearcurve/dual.hpp>
#include <nearcurve/expsums.hpp>
#include <nearcurve/io.hpp>
#include <nearcurve/model.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace nearcurve;

namespace {

// Usage-level failures (unparsable curve/interval/delta, bad flag combos)
// exit 1; NumericError exits 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

RatInterval need_interval(const std::string& text) {
  auto I = parse_interval(text);
  if (!I) throw UsageError("bad interval: " + text + " (want lo,hi)");
  return *I;
}

Curve need_curve(const std::string& spec, const RatInterval& domain) {
  auto c = parse_curve(spec, domain);
  if (!c)
    throw UsageError("bad curve: " + spec +
                     " (want poly:c0,c1,... | cos | exp:c0,c1,... | fermat:d)");
  return *c;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// key=value report lines; values use shortest round-trip doubles so stdout
// is stable across runs.
void print_kv(const char* key, const std::string& value) {
  std::cout << key << "=" << value << "\n";
}
void print_kv(const char* key, double value) { print_kv(key, format_double(value)); }
void print_kv(const char* key, long long value) { print_kv(key, std::to_string(value)); }

struct CountArgs {
  std::string curve, interval = "0,1", delta, method = "fast";
  long long Q = 0;
  int threads = 0;
  bool timings = false;
};

CountResult run_count_query(const CountArgs& a, const Curve& curve, const RatInterval& I) {
  auto m = parse_method(a.method);
  if (!m) throw UsageError("bad method: " + a.method + " (want naive|fast|exact)");
  auto d = parse_rational(a.delta);
  if (!d) throw UsageError("bad delta: " + a.delta);
  bool decimal = is_decimal_literal(a.delta);
  if (*m == CountMethod::exact_poly && decimal)
    throw UsageError("exact method needs a rational delta literal (p/q), got " + a.delta);
  CountQuery query = decimal ? CountQuery(a.Q, to_double(*d), I) : CountQuery(a.Q, *d, I);
  switch (*m) {
    case CountMethod::naive: return count_naive(curve, query, a.threads);
    case CountMethod::fast: return count_fast(curve, query, a.threads);
    case CountMethod::exact_poly: return count_exact_poly(curve, query);
  }
  throw std::logic_error("unreachable");
}

void cmd_count(const CountArgs& a) {
  RatInterval I = need_interval(a.interval);
  Curve curve = need_curve(a.curve, I);
  CountResult r = run_count_query(a, curve, I);
  print_kv("curve", curve.id());
  print_kv("interval", format_interval(I));
  print_kv("Q", r.query.Q);
  print_kv("delta", r.query.delta_text());
  print_kv("method", r.method);
  print_kv("N", r.N);
  print_kv("ambiguous", r.ambiguous);
  print_kv("main_term", r.main_term);
  print_kv("residual", r.residual);
  print_kv("regime_ok", bool_text(r.query.in_regime));
  if (a.timings) print_kv("elapsed_ms", r.elapsed_ms);
}

struct ScanArgs {
  std::string curve, interval = "0,1", method = "fast", out, format = "csv", plot_dir;
  std::vector<long long> Qs;
  std::vector<std::string> deltas;
  int threads = 0;
  bool timings = false;
};

void cmd_scan(const ScanArgs& a) {
  RatInterval I = need_interval(a.interval);
  Curve curve = need_curve(a.curve, I);
  auto m = parse_method(a.method);
  if (!m) throw UsageError("bad method: " + a.method + " (want naive|fast|exact)");
  if (a.format != "csv" && a.format != "jsonl")
    throw UsageError("bad format: " + a.format + " (want csv|jsonl)");

  ScanTable table = scan_grid(curve, I, a.Qs, a.deltas, *m, a.threads, a.timings);

  auto write_to = [&](std::ostream& os) {
    if (a.format == "csv") write_scan_csv(os, table);
    else write_scan_jsonl(os, table);
  };
  if (a.out.empty()) {
    write_to(std::cout);
  } else {
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw UsageError("cannot open output file: " + a.out);
    write_to(os);
  }

  if (!a.plot_dir.empty()) {
    for (std::size_t i = 0; i < a.deltas.size(); ++i) {
      std::string base = a.plot_dir + "/scan_d" + std::to_string(i);
      std::ofstream dat(base + ".dat", std::ios::binary);
      std::ofstream desc(base + ".desc", std::ios::binary);
      if (!dat || !desc) throw UsageError("cannot write plot files under " + a.plot_dir);
      // rows are Q-outer, delta-inner: row i + k * deltas.size() walks one delta
      for (std::size_t k = i; k < table.rows.size(); k += a.deltas.size()) {
        const ScanRow& r = table.rows[k];
        dat << r.Q << " " << r.N << "\n";
      }
      desc << "x: Q\ny: N\nlabel: delta=" << a.deltas[i] << "\ncurve: " << table.curve_spec
           << "\ninterval: " << table.interval_text << "\nconfig: " << table.config_digest << "\n";
    }
  }

  if (a.timings) {
    double total = 0;
    for (const ScanRow& r : table.rows) total += r.elapsed_ms;
    std::cerr << "scan: " << table.rows.size() << " rows, " << total << " ms\n";
  }
}

struct ExpsumArgs {
  std::string curve, interval = "0,1";
  long long Q = 0, k = 1;
};

void cmd_expsum(const ExpsumArgs& a) {
  RatInterval I = need_interval(a.interval);
  Curve curve = need_curve(a.curve, I);
  SequencePoints pts = sequence_points(curve, I, a.Q);
  std::complex<double> s = exp_sum(pts, a.k);
  print_kv("curve", curve.id());
  print_kv("Q", a.Q);
  print_kv("k", a.k);
  print_kv("points", static_cast<long long>(pts.entries.size()));
  print_kv("sum_re", s.real());
  print_kv("sum_im", s.imag());
  print_kv("sum_abs", std::abs(s));
}

struct DiscArgs {
  std::string curve, interval = "0,1";
  long long Q = 0, K = 100;
  double alpha = 0, beta = 0;
};

void cmd_discrepancy(const DiscArgs& a) {
  RatInterval I = need_interval(a.interval);
  Curve curve = need_curve(a.curve, I);
  SequencePoints pts = sequence_points(curve, I, a.Q);
  DiscrepancyRecord rec = discrepancy_record(pts, a.alpha, a.beta, a.K);
  print_kv("N", rec.N);
  print_kv("Z", rec.Z);
  print_kv("D", rec.D);
  print_kv("et_bound", rec.et_bound);
  print_kv("K", rec.K);
  print_kv("bounded", bool_text(std::abs(rec.D) <= rec.et_bound));
}

struct PoissonArgs {
  std::string curve, interval = "0,1";
  double c = 0, d = 0, tol = 1e-9;
};

void cmd_poisson(const PoissonArgs& a) {
  RatInterval I = need_interval(a.interval);
  Curve curve = need_curve(a.curve, I);
  FuncView fv = func_view(curve);
  PoissonReport rep = poisson_check(fv.f, fv.df, a.c, a.d, a.tol);
  print_kv("lhs_re", rep.lhs.real());
  print_kv("lhs_im", rep.lhs.imag());
  print_kv("rhs_re", rep.rhs.real());
  print_kv("rhs_im", rep.rhs.imag());
  print_kv("s", rep.s);
  print_kv("t", rep.t);
  print_kv("residual", rep.residual);
  print_kv("normalized", rep.normalized);
}

struct VdcArgs {
  std::string curve, interval = "0,1";
  double lo = 0, hi = 0, tol = 1e-9;
  int d = 2;
  long long max_panels = 1 << 20;
  std::vector<double> lambdas;
};

void cmd_vdc(const VdcArgs& a) {
  RatInterval I = need_interval(a.interval);
  Curve curve = need_curve(a.curve, I);
  for (double lambda : a.lambdas) {
    double v = vdc_value(curve, a.lo, a.hi, a.d, lambda, a.tol, a.max_panels);
    std::cout << "lambda=" << format_double(lambda) << " value=" << format_double(v) << "\n";
  }
  print_kv("max", vdc_check(curve, a.lo, a.hi, a.d, a.lambdas, a.tol, a.max_panels));
}

struct DualArgs {
  std::string curve, interval = "0,1";
  double xlo = 0, xhi = 0, y = 0, lambda = 0, tol = 1e-9;
};

void cmd_dual(const DualArgs& a) {
  RatInterval I = need_interval(a.interval);
  Curve curve = need_curve(a.curve, I);
  DualCurve dual = make_dual(curve, a.xlo, a.xhi);
  print_kv("j_lo", dual.j_lo);
  print_kv("j_hi", dual.j_hi);
  print_kv("convexity", static_cast<long long>(dual.convexity));
  print_kv("theta", invert_fprime(dual, a.y));
  print_kv("fstar", dual_eval(dual, a.y));
  if (a.lambda > 0) {
    StationaryPhaseReport rep = stationary_phase_approx(dual, a.lambda, a.y, a.tol);
    print_kv("approx_re", rep.approx.real());
    print_kv("approx_im", rep.approx.imag());
    print_kv("exact_re", rep.exact.real());
    print_kv("exact_im", rep.exact.imag());
    print_kv("err", rep.err);
  }
}

struct DualSumArgs {
  std::string curve, interval = "0,1", variant;
  double lo = 0, hi = 1, Q0 = 0, epsilon = 0.1;
  long long K0 = 0, K1 = 0, K2 = 0;
};

void cmd_dualsum(const DualSumArgs& a) {
  RatInterval I = need_interval(a.interval);
  Curve curve = need_curve(a.curve, I);
  auto v = parse_variant(a.variant);
  if (!v) throw UsageError("bad variant: " + a.variant + " (want 2.40..2.45)");
  DualSumQuery q;
  q.variant = *v;
  q.F = func_view(curve).f;
  q.lo = a.lo;
  q.hi = a.hi;
  q.K0 = a.K0;
  q.K1 = a.K1;
  q.K2 = a.K2;
  q.Q0 = a.Q0;
  q.epsilon = a.epsilon;
  DualSumResult r = dual_sums(q);
  print_kv("variant", variant_name(*v));
  print_kv("lhs", r.lhs);
  print_kv("rhs_shape", r.rhs_shape);
  print_kv("ratio", r.ratio);
}

struct FitArgs {
  std::string in, mode = "slope_q", fixed;
};

void cmd_fit(const FitArgs& a) {
  std::ifstream is(a.in, std::ios::binary);
  if (!is) throw UsageError("cannot open input file: " + a.in);
  ScanTable table = read_scan_csv(is);
  FitMode mode;
  if (a.mode == "slope_q") mode = FitMode::slope_q;
  else if (a.mode == "slope_delta") mode = FitMode::slope_delta;
  else throw UsageError("bad mode: " + a.mode + " (want slope_q|slope_delta)");
  FitReport rep = fit_exponents(table, mode, a.fixed);
  print_kv("mode", a.mode);
  print_kv("fixed", a.fixed);
  print_kv("slope", rep.slope);
  print_kv("intercept", rep.intercept);
  print_kv("rms", rep.rms);
  print_kv("rows_used", static_cast<long long>(rep.rows_used));
}

struct ExamplesArgs {
  std::string which;
  long long Q = 100;
  int d = 3;
  double ymax = 0.9;
  std::vector<long long> Qs;
};

void cmd_examples(const ExamplesArgs& a) {
  if (a.which == "parabola") {
    ParabolaSharpness s = sharpness_parabola(a.Q);
    print_kv("Q", s.Q);
    print_kv("construction_count", s.construction_count);
    print_kv("on_curve", s.on_curve);
    print_kv("verified", bool_text(s.verified));
  } else if (a.which == "fermat") {
    std::vector<long long> Qs = a.Qs;
    if (Qs.empty()) Qs = {500, 1000, 2000};
    auto rows = sharpness_fermat(a.d, Qs, a.ymax);
    for (const auto& r : rows) {
      std::cout << "Q=" << r.Q << " delta=" << format_double(r.delta) << " N=" << r.N
                << " envelope=" << format_double(r.envelope)
                << " ratio=" << format_double(r.ratio) << "\n";
    }
  } else {
    throw UsageError("unknown example: " + a.which + " (want parabola|fermat)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational points near plane curves: counting, spacing and dual sums"};
  app.set_config("--config");
  app.require_subcommand(1);

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "count pairs (a, q) with ||q f(a/q)|| < delta");
  count->add_option("--curve", count_args.curve, "curve spec")->required();
  count->add_option("--interval", count_args.interval, "interval lo,hi");
  count->add_option("--Q", count_args.Q, "denominator bound")->required();
  count->add_option("--delta", count_args.delta, "threshold (p/q or decimal)")->required();
  count->add_option("--method", count_args.method, "naive|fast|exact");
  count->add_option("--threads", count_args.threads, "worker threads (0 = auto)");
  count->add_flag("--timings", count_args.timings, "report elapsed time");
  count->callback([&count_args] { cmd_count(count_args); });

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "count over a (Q, delta) grid, write a table");
  scan->add_option("--curve", scan_args.curve, "curve spec")->required();
  scan->add_option("--interval", scan_args.interval, "interval lo,hi");
  scan->add_option("--Q", scan_args.Qs, "denominator bounds")->required();
  scan->add_option("--delta", scan_args.deltas, "thresholds")->required();
  scan->add_option("--method", scan_args.method, "naive|fast|exact");
  scan->add_option("--threads", scan_args.threads, "worker threads (0 = auto)");
  scan->add_option("--out", scan_args.out, "output file (default stdout)");
  scan->add_option("--format", scan_args.format, "csv|jsonl");
  scan->add_option("--emit-plot", scan_args.plot_dir, "directory for .dat/.desc plot files");
  scan->add_flag("--timings", scan_args.timings, "include elapsed_ms in rows");
  scan->callback([&scan_args] { cmd_scan(scan_args); });

  ExpsumArgs expsum_args;
  auto* expsum = app.add_subcommand("expsum", "sum of e(k q f(a/q)) over the point sequence");
  expsum->add_option("--curve", expsum_args.curve, "curve spec")->required();
  expsum->add_option("--interval", expsum_args.interval, "interval lo,hi");
  expsum->add_option("--Q", expsum_args.Q, "denominator bound")->required();
  expsum->add_option("--k", expsum_args.k, "frequency");
  expsum->callback([&expsum_args] { cmd_expsum(expsum_args); });

  DiscArgs disc_args;
  auto* disc = app.add_subcommand("discrepancy", "window count vs expected, with the "
                                                 "Erdos-Turan bound");
  disc->add_option("--curve", disc_args.curve, "curve spec")->required();
  disc->add_option("--interval", disc_args.interval, "interval lo,hi");
  disc->add_option("--Q", disc_args.Q, "denominator bound")->required();
  disc->add_option("--alpha", disc_args.alpha, "window start")->required();
  disc->add_option("--beta", disc_args.beta, "window end")->required();
  disc->add_option("--K", disc_args.K, "bound truncation");
  disc->callback([&disc_args] { cmd_discrepancy(disc_args); });

  PoissonArgs poisson_args;
  auto* poisson = app.add_subcommand("poisson", "truncated Poisson summation residual");
  poisson->add_option("--curve", poisson_args.curve, "phase curve g")->required();
  poisson->add_option("--interval", poisson_args.interval, "curve domain lo,hi");
  poisson->add_option("--c", poisson_args.c, "sum start")->required();
  poisson->add_option("--d", poisson_args.d, "sum end")->required();
  poisson->add_option("--tol", poisson_args.tol, "quadrature tolerance");
  poisson->callback([&poisson_args] { cmd_poisson(poisson_args); });

  VdcArgs vdc_args;
  auto* vdc = app.add_subcommand("vdc", "scaled oscillatory integral decay across lambda");
  vdc->add_option("--curve", vdc_args.curve, "curve spec")->required();
  vdc->add_option("--interval", vdc_args.interval, "curve domain lo,hi");
  vdc->add_option("--lo", vdc_args.lo, "integration start")->required();
  vdc->add_option("--hi", vdc_args.hi, "integration end")->required();
  vdc->add_option("--d", vdc_args.d, "type (lambda^{1/d} scaling)");
  vdc->add_option("--lambda", vdc_args.lambdas, "frequencies (>= 1)")->required();
  vdc->add_option("--tol", vdc_args.tol, "quadrature tolerance");
  vdc->add_option("--max-panels", vdc_args.max_panels, "quadrature subdivision budget");
  vdc->callback([&vdc_args] { cmd_vdc(vdc_args); });

  DualArgs dual_args;
  auto* dual = app.add_subcommand("dual", "slope inversion, dual values and the stationary "
                                          "phase comparison");
  dual->add_option("--curve", dual_args.curve, "curve spec")->required();
  dual->add_option("--interval", dual_args.interval, "curve domain lo,hi");
  dual->add_option("--xlo", dual_args.xlo, "branch start")->required();
  dual->add_option("--xhi", dual_args.xhi, "branch end")->required();
  dual->add_option("--y", dual_args.y, "slope to invert")->required();
  dual->add_option("--lambda", dual_args.lambda, "frequency for the stationary phase report");
  dual->add_option("--tol", dual_args.tol, "quadrature tolerance");
  dual->callback([&dual_args] { cmd_dual(dual_args); });

  DualSumArgs dualsum_args;
  auto* dualsum = app.add_subcommand("dualsum", "weighted rational sums over dual slopes");
  dualsum->add_option("--curve", dualsum_args.curve, "curve spec for F")->required();
  dualsum->add_option("--interval", dualsum_args.interval, "curve domain lo,hi");
  dualsum->add_option("--variant", dualsum_args.variant, "2.40..2.45")->required();
  dualsum->add_option("--lo", dualsum_args.lo, "lattice window start");
  dualsum->add_option("--hi", dualsum_args.hi, "lattice window end");
  dualsum->add_option("--K0", dualsum_args.K0, "range bound (2.40-2.42)");
  dualsum->add_option("--K1", dualsum_args.K1, "lower range bound (2.43-2.45)");
  dualsum->add_option("--K2", dualsum_args.K2, "upper range bound (2.43-2.45)");
  dualsum->add_option("--Q0", dualsum_args.Q0, "window scale")->required();
  dualsum->add_option("--epsilon", dualsum_args.epsilon, "epsilon exponent");
  dualsum->callback([&dualsum_args] { cmd_dualsum(dualsum_args); });

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "log-log exponent fit over a scan table");
  fit->add_option("--in", fit_args.in, "scan csv file")->required();
  fit->add_option("--mode", fit_args.mode, "slope_q|slope_delta");
  fit->add_option("--fixed", fit_args.fixed, "fixed delta (slope_q) or Q (slope_delta)")
      ->required();
  fit->callback([&fit_args] { cmd_fit(fit_args); });

  ExamplesArgs ex_args;
  auto* examples = app.add_subcommand("examples", "worked sharpness constructions");
  examples->add_option("which", ex_args.which, "parabola|fermat")->required();
  examples->add_option("--Q", ex_args.Q, "denominator bound (parabola)");
  examples->add_option("--d", ex_args.d, "degree (fermat)");
  examples->add_option("--ymax", ex_args.ymax, "interval end (fermat)");
  examples->add_option("--Qs", ex_args.Qs, "denominator bounds (fermat)");
  examples->callback([&ex_args] { cmd_examples(ex_args); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
