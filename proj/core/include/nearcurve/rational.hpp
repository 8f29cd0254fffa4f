#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nearcurve {

// Exact rational number. All boundary-sensitive comparisons in the library go
// through this type; doubles are a derived, lossy view.
using Rat = mpq_class;

// Accepts integer ("7", "-3"), fraction ("5/12", "-1/3") and decimal
// ("0.25", "2.5e-3") literals. Decimals are scaled by powers of ten, so the
// result is the exact value of the written digits, never the nearest double.
std::optional<Rat> parse_rational(std::string_view text);

// Whether the literal was written as a decimal ("0.1") rather than an
// integer or fraction. Callers use this to route decimals to float paths.
bool is_decimal_literal(std::string_view text);

// "p/q" when the denominator is not 1, plain integer otherwise.
std::string format_rational(const Rat& r);

double to_double(const Rat& r);

// Largest integer <= x and smallest integer >= x. Results must fit int64.
std::int64_t rat_floor(const Rat& x);
std::int64_t rat_ceil(const Rat& x);

// ||x||: distance to the nearest integer, exact, in [0, 1/2].
Rat nearest_int_dist_exact(const Rat& x);

}  // namespace nearcurve
