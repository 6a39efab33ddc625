#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace equidist {

using Rational = mpq_class;

// Accepts "7", "-3/4", "0.125", "-1.5e-3". Decimals are read exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

// n/d in lowest terms (mpq_class(n, d) alone does not reduce).
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& r) { return sgn(r); }
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline double to_double(const Rational& r) { return r.get_d(); }

// Exact binary value of a finite double.
Rational from_double(double x);

Rational rpow(const Rational& base, int exponent);
Rational rabs(const Rational& r);

// Exact square root when r is the square of a rational.
bool exact_sqrt(const Rational& r, Rational& out);
// Exact cube root when r is the cube of a rational.
bool exact_cbrt(const Rational& r, Rational& out);

// Rational x with |x - cbrt(r)| <= 2^-bits (bisection on t^3 - r).
Rational cbrt_approx(const Rational& r, int bits);

}  // namespace equidist
