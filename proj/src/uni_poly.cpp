#include "equidist/uni_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace equidist {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

UniPoly UniPoly::monomial(const Rational& c, int n) {
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1, Rational(0));
  v[n] = c;
  return UniPoly(std::move(v));
}

void UniPoly::normalize() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  if (degree() > kMaxDegree) throw std::length_error("UniPoly degree exceeds 16");
}

const Rational& UniPoly::lead() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Rational UniPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

double UniPoly::eval(double x) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->get_d();
  return r;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / lead());
}

UniPoly UniPoly::shift(const Rational& a) const {
  // Horner with (x + a)
  UniPoly r;
  UniPoly xa({a, Rational(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * xa + UniPoly::constant(*it);
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(r));
}

UniPoly operator*(UniPoly a, const Rational& s) {
  for (auto& c : a.c_) c *= s;
  a.normalize();
  return a;
}

UniPoly UniPoly::operator-() const { return *this * Rational(-1); }

std::string UniPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i == 1) os << "*" << var;
    if (i > 1) os << "*" << var << "^" << i;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
  const Rational& lb = b.lead();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    Rational q = rem[i + b.degree()] / lb;
    quo[i] = q;
    if (sgn(q) == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[i + j] -= q * b[j];
  }
  rem.resize(static_cast<std::size_t>(b.degree()));
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UniPoly g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
  std::vector<UniPoly> out;
  if (p.degree() <= 0) return out;
  UniPoly a = p.monic();
  UniPoly b = a.derivative();
  UniPoly c = gcd(a, b);
  UniPoly w = divmod(a, c).first;
  UniPoly y = divmod(b, c).first;
  UniPoly z = y - w.derivative();
  while (w.degree() > 0) {
    UniPoly g = gcd(w, z);
    out.push_back(g);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
  }
  return out;
}

}  // namespace equidist
