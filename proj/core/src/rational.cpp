#include "nearcurve/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace nearcurve {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// mantissa: [+-]?digits[.digits], returns false on malformed input.
// On success num is the digit string value and scale the count of
// fractional digits.
bool split_mantissa(std::string_view s, mpz_class& num, int& scale, bool& neg) {
  neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string digits;
  if (dot == std::string_view::npos) {
    if (!all_digits(s)) return false;
    digits = std::string(s);
    scale = 0;
  } else {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return false;
    if (!ip.empty() && !all_digits(ip)) return false;
    if (!fp.empty() && !all_digits(fp)) return false;
    digits = std::string(ip) + std::string(fp);
    if (digits.empty()) return false;
    scale = static_cast<int>(fp.size());
  }
  num = mpz_class(digits, 10);
  return true;
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view ns = text.substr(0, slash), ds = text.substr(slash + 1);
    mpz_class n, d;
    int sn = 0, sd = 0;
    bool negn = false, negd = false;
    if (!split_mantissa(ns, n, sn, negn) || sn != 0) return std::nullopt;
    if (!split_mantissa(ds, d, sd, negd) || sd != 0) return std::nullopt;
    if (d == 0) return std::nullopt;
    Rat r(negn != negd ? mpz_class(-n) : n, d);
    r.canonicalize();
    return r;
  }

  // decimal or integer, with optional exponent
  auto epos = text.find_first_of("eE");
  long expo = 0;
  std::string_view mant = text;
  if (epos != std::string_view::npos) {
    std::string es(text.substr(epos + 1));
    if (es.empty()) return std::nullopt;
    char* end = nullptr;
    expo = std::strtol(es.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') return std::nullopt;
    mant = text.substr(0, epos);
  }
  mpz_class num;
  int scale = 0;
  bool neg = false;
  if (!split_mantissa(mant, num, scale, neg)) return std::nullopt;

  long p10 = expo - scale;
  mpz_class den = 1;
  if (p10 >= 0) {
    mpz_class mul;
    mpz_ui_pow_ui(mul.get_mpz_t(), 10, static_cast<unsigned long>(p10));
    num *= mul;
  } else {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-p10));
  }
  Rat r(neg ? mpz_class(-num) : num, den);
  r.canonicalize();
  return r;
}

bool is_decimal_literal(std::string_view text) {
  return text.find('.') != std::string_view::npos ||
         text.find('e') != std::string_view::npos ||
         text.find('E') != std::string_view::npos;
}

std::string format_rational(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rat& r) { return r.get_d(); }

std::int64_t rat_floor(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return static_cast<std::int64_t>(q.get_si());
}

std::int64_t rat_ceil(const Rat& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return static_cast<std::int64_t>(q.get_si());
}

Rat nearest_int_dist_exact(const Rat& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  Rat frac = x - Rat(fl);          // in [0, 1)
  Rat other = 1 - frac;
  return frac <= other ? frac : other;
}

}  // namespace nearcurve
