#include "equidist/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace equidist {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational parse_decimal(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '-' || es[0] == '+')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) throw std::invalid_argument("bad exponent in rational");
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
    s = s.substr(0, epos);
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    exp10 -= static_cast<long>(s.size() - dot - 1);
  }
  if (!all_digits(digits)) throw std::invalid_argument("bad decimal: " + std::string(s));
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational r = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator");
  return num / den;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  Rational r(x);
  return r;
}

Rational rpow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (sgn(base) == 0) throw std::domain_error("zero to negative power");
    return rpow(Rational(1) / base, -exponent);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational rabs(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

bool exact_sqrt(const Rational& r, Rational& out) {
  if (sgn(r) < 0) return false;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

bool exact_cbrt(const Rational& r, Rational& out) {
  mpz_class n = abs(r.get_num()), d = r.get_den();
  mpz_class cn, cd;
  bool okn = mpz_root(cn.get_mpz_t(), n.get_mpz_t(), 3) != 0;
  bool okd = mpz_root(cd.get_mpz_t(), d.get_mpz_t(), 3) != 0;
  if (!okn || !okd) return false;
  out = Rational(sgn(r) < 0 ? mpz_class(-cn) : cn, cd);
  out.canonicalize();
  return true;
}

Rational cbrt_approx(const Rational& r, int bits) {
  Rational exact;
  if (exact_cbrt(r, exact)) return exact;
  bool neg = sgn(r) < 0;
  Rational a = neg ? Rational(-r) : r;
  Rational lo = 0, hi = a > 1 ? a : Rational(1);
  Rational tol = rpow(Rational(2), -bits);
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (mid * mid * mid > a)
      hi = mid;
    else
      lo = mid;
  }
  Rational mid = (lo + hi) / 2;
  return neg ? Rational(-mid) : mid;
}

}  // namespace equidist
