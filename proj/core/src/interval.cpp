#include "nearcurve/interval.hpp"

#include <stdexcept>

namespace nearcurve {

RatInterval::RatInterval(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("interval: lo > hi");
  lo_d_ = to_double(lo_);
  hi_d_ = to_double(hi_);
}

RatInterval::ARange RatInterval::lattice(std::int64_t q) const {
  ARange r;
  r.first = rat_ceil(Rat(q) * lo_);
  r.last = rat_floor(Rat(q) * hi_);
  return r;
}

std::optional<RatInterval> parse_interval(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto lo = parse_rational(text.substr(0, comma));
  auto hi = parse_rational(text.substr(comma + 1));
  if (!lo || !hi || *lo > *hi) return std::nullopt;
  return RatInterval(*lo, *hi);
}

std::string format_interval(const RatInterval& I) {
  return format_rational(I.lo()) + "," + format_rational(I.hi());
}

}  // namespace nearcurve
