#pragma once

#include "nearcurve/counting.hpp"
#include "nearcurve/numerics.hpp"

#include <span>
#include <vector>

namespace nearcurve {

// |I| delta Q^2, the expected pair count when delta > 1/Q.
double main_term(const RatInterval& I, long long Q, double delta);

// delta^{1/2} log(1/delta) Q^{2 - 1/(2(d-1))} + delta^{1/d} Q^{2 - 1/d}
// + Q^{1 + eps}, natural log; the error envelope for a type-d curve.
double error_bound(int d, long long Q, double delta, double eps = 0.1);

enum class CountMethod { naive, fast, exact_poly };

std::optional<CountMethod> parse_method(std::string_view text);
std::string method_name(CountMethod m);

struct ScanRow {
  std::string curve_id;
  long long Q = 0;
  std::string delta_text;
  double delta = 0;
  long long N = 0;
  double main_term = 0;
  double residual = 0;
  long long ambiguous = 0;
  std::string method;
  double elapsed_ms = 0;
  bool regime_ok = false;  // delta > 1/Q
};

struct ScanTable {
  std::vector<ScanRow> rows;
  std::string curve_spec;
  std::string interval_text;
  std::string config_digest;  // FNV-1a over the canonical config line
};

// One row per (Q, delta) in the given order (Q outer, delta inner);
// row order is part of the output contract. Deltas arrive as literals:
// rational literals stay boundary-exact, decimal literals take the float
// path (and are rejected when the method is exact).
ScanTable scan_grid(const Curve& curve, const RatInterval& I,
                    std::span<const long long> Qs, std::span<const std::string> delta_texts,
                    CountMethod method, int threads = 0, bool timings = false);

struct FitReport {
  double slope = 0;
  double intercept = 0;
  double rms = 0;
  int rows_used = 0;
};

enum class FitMode { slope_q, slope_delta };

// log N against log Q at fixed delta (slope_q) or against log delta at
// fixed Q (slope_delta). Rows with N = 0 or ambiguous > 0 are excluded;
// fewer than 4 usable rows is an error.
FitReport fit_exponents(const ScanTable& table, FitMode mode, const std::string& fixed_text);

struct ParabolaSharpness {
  long long Q = 0;
  long long construction_count = 0;  // sum over q <= floor(sqrt(Q)) of (q + 1)
  long long on_curve = 0;            // pairs with ||q f(a/q)|| = 0, q <= Q
  bool verified = false;             // on_curve >= construction_count
};
ParabolaSharpness sharpness_parabola(long long Q);

struct FermatSharpnessRow {
  long long Q = 0;
  double delta = 0;
  long long N = 0;
  double envelope = 0;  // delta^{1/d} Q^{2 - 1/d} + delta Q^2
  double ratio = 0;     // N / envelope
};

// Counts along delta = Q^{-1/(d-1)} / 2 (or a caller-supplied rule) on the
// d-th Fermat curve over [0, ymax]; the flat point at y = 1 keeps the
// delta^{1/d} Q^{2-1/d} term live, so the ratio should stay bounded.
std::vector<FermatSharpnessRow> sharpness_fermat(int d, std::span<const long long> Qs,
                                                 double ymax = 0.9,
                                                 const RealFn& delta_rule = {});

}  // namespace nearcurve
