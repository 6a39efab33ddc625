#pragma once

#include <string>
#include <utility>
#include <vector>

#include "equidist/rational.hpp"

namespace equidist {

// Dense univariate polynomial over Q, coefficients low to high.
class UniPoly {
 public:
  static constexpr int kMaxDegree = 16;

  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(std::initializer_list<Rational> coeffs) : UniPoly(std::vector<Rational>(coeffs)) {}
  static UniPoly constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }
  static UniPoly monomial(const Rational& c, int n);
  static UniPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  const Rational& lead() const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }

  UniPoly derivative() const;
  UniPoly monic() const;
  // p(x + a)
  UniPoly shift(const Rational& a) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const Rational& s);
  UniPoly operator-() const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<Rational> c_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly squarefree_part(const UniPoly& p);
// Yun: factors f[0], f[1], ... with p = lc * prod f[i]^(i+1), each squarefree and coprime.
std::vector<UniPoly> squarefree_decomposition(const UniPoly& p);

}  // namespace equidist
