#pragma once

#include "nearcurve/rational.hpp"

#include <optional>

namespace nearcurve {

// Closed interval [lo, hi] with exact rational endpoints. The lattice of
// rationals a/q inside it is computed with exact ceil/floor so membership
// never depends on float rounding.
class RatInterval {
 public:
  RatInterval(Rat lo, Rat hi);

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  double lo_d() const { return lo_d_; }
  double hi_d() const { return hi_d_; }
  Rat width() const { return hi_ - lo_; }
  double width_d() const { return to_double(hi_ - lo_); }

  struct ARange {
    std::int64_t first = 0, last = -1;  // empty when first > last
    bool empty() const { return first > last; }
    std::int64_t size() const { return empty() ? 0 : last - first + 1; }
  };
  // {a : a/q in [lo, hi]} for q >= 1.
  ARange lattice(std::int64_t q) const;

  bool contains(double x) const { return lo_d_ <= x && x <= hi_d_; }
  bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }

 private:
  Rat lo_, hi_;
  double lo_d_, hi_d_;
};

using ARange = RatInterval::ARange;

// "lo,hi" with rational or decimal endpoints.
std::optional<RatInterval> parse_interval(std::string_view text);

std::string format_interval(const RatInterval& I);

}  // namespace nearcurve
