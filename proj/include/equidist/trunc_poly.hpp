#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "equidist/rational.hpp"

namespace equidist {

using VarList = std::vector<std::string>;

// Highest order a TruncPoly may carry; keeps packed exponent sums below 256.
constexpr int kMaxOrder = 120;

class UnknownVariable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exponent vector of up to 8 variables packed one byte each.
class Monomial {
 public:
  static constexpr int kMaxVars = 8;

  Monomial() = default;
  explicit Monomial(std::uint64_t bits) : bits_(bits) {}
  Monomial(std::initializer_list<int> exps) {
    int i = 0;
    for (int e : exps) set(i++, e);
  }
  static Monomial from(const std::vector<int>& exps) {
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(static_cast<int>(i), exps[i]);
    return m;
  }
  static Monomial unit(int var, int e = 1) {
    Monomial m;
    m.set(var, e);
    return m;
  }

  int operator[](int i) const { return static_cast<int>((bits_ >> (8 * i)) & 0xffu); }
  void set(int i, int e) {
    if (i < 0 || i >= kMaxVars || e < 0 || e > 255) throw std::out_of_range("monomial exponent");
    bits_ &= ~(std::uint64_t{0xff} << (8 * i));
    bits_ |= static_cast<std::uint64_t>(e) << (8 * i);
  }
  Monomial with(int i, int e) const {
    Monomial m = *this;
    m.set(i, e);
    return m;
  }
  int degree() const { return static_cast<int>((bits_ * 0x0101010101010101ull) >> 56); }
  Monomial operator*(Monomial o) const { return Monomial(bits_ + o.bits_); }
  bool divisible_by(Monomial o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if ((*this)[i] < o[i]) return false;
    return true;
  }
  Monomial operator/(Monomial o) const { return Monomial(bits_ - o.bits_); }
  std::uint64_t bits() const { return bits_; }
  auto operator<=>(const Monomial&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
  return is_zero(c);
}
template <class C>
std::string coeff_string(const C& c) {
  return to_string(c);
}
}  // namespace detail

inline int var_index(const VarList& vars, std::string_view name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  throw UnknownVariable("unknown variable: " + std::string(name));
}

// Multivariate polynomial with coefficients in C, truncated at total degree `order`.
// C needs +, -, *, unary -, construction from int and a free is_zero(const C&).
template <class C>
class TruncPoly {
 public:
  using Coeff = C;
  using Terms = std::map<Monomial, C>;

  TruncPoly() = default;
  TruncPoly(VarList vars, int order) : vars_(std::move(vars)), order_(order) {
    if (static_cast<int>(vars_.size()) > Monomial::kMaxVars) throw std::invalid_argument("too many variables");
    if (order_ < 0 || order_ > kMaxOrder) throw std::invalid_argument("order out of range");
  }
  static TruncPoly constant(VarList vars, int order, const C& c) {
    TruncPoly p(std::move(vars), order);
    p.add_term(Monomial{}, c);
    return p;
  }
  static TruncPoly variable(VarList vars, int order, std::string_view name) {
    TruncPoly p(std::move(vars), order);
    p.add_term(Monomial::unit(var_index(p.vars_, name)), C(1));
    return p;
  }
  static TruncPoly monomial(VarList vars, int order, Monomial m, const C& c) {
    TruncPoly p(std::move(vars), order);
    p.add_term(m, c);
    return p;
  }

  const VarList& vars() const { return vars_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int index(std::string_view name) const { return var_index(vars_, name); }

  C coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }
  C coeff(std::initializer_list<int> exps) const { return coeff(Monomial(exps)); }
  C constant_term() const { return coeff(Monomial{}); }

  void add_term(Monomial m, const C& c) {
    if (m.degree() > order_ || is_zero_coeff(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_coeff(it->second)) terms_.erase(it);
    }
  }

  TruncPoly& operator+=(const TruncPoly& o) {
    check_compatible(o);
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  TruncPoly& operator-=(const TruncPoly& o) {
    check_compatible(o);
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  TruncPoly& operator*=(const C& s) {
    if (is_zero_coeff(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (is_zero_coeff(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }
  TruncPoly& operator*=(const TruncPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend TruncPoly operator*(TruncPoly a, const C& s) { return a *= s; }
  friend TruncPoly operator*(const C& s, TruncPoly a) { return a *= s; }
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
    a.check_compatible(b);
    TruncPoly r(a.vars_, std::min(a.order_, b.order_));
    for (const auto& [ma, ca] : a.terms_) {
      int da = ma.degree();
      if (da > r.order_) continue;
      for (const auto& [mb, cb] : b.terms_) {
        if (da + mb.degree() > r.order_) continue;
        r.add_term(ma * mb, ca * cb);
      }
    }
    return r;
  }
  TruncPoly operator-() const {
    TruncPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  TruncPoly pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power");
    TruncPoly result = constant(vars_, order_, C(1));
    TruncPoly base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  TruncPoly derivative(int var) const {
    TruncPoly r(vars_, order_);
    for (const auto& [m, c] : terms_) {
      int e = m[var];
      if (e == 0) continue;
      r.add_term(m.with(var, e - 1), c * C(e));
    }
    return r;
  }
  TruncPoly derivative(std::string_view name) const { return derivative(index(name)); }

  TruncPoly truncated(int order) const {
    TruncPoly r(vars_, order);
    for (const auto& [m, c] : terms_)
      if (m.degree() <= order) r.terms_.emplace(m, c);
    return r;
  }
  // Same terms, new cap (raising the cap does not recover dropped terms).
  TruncPoly with_order(int order) const { return truncated(order); }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  int low_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = d < 0 ? m.degree() : std::min(d, m.degree());
    return d;
  }
  int degree_in(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }
  int degree_in(std::string_view name) const { return degree_in(index(name)); }

  TruncPoly homogeneous(int deg) const {
    TruncPoly r(vars_, order_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == deg) r.terms_.emplace(m, c);
    return r;
  }
  TruncPoly jet(int deg) const { return truncated(std::min(deg, order_)).with_cap(order_); }

  // Terms containing var^power exactly, with that factor removed.
  TruncPoly coefficient_of(int var, int power) const {
    TruncPoly r(vars_, order_);
    for (const auto& [m, c] : terms_)
      if (m[var] == power) r.terms_.emplace(m.with(var, 0), c);
    return r;
  }
  TruncPoly coefficient_of(std::string_view name, int power) const { return coefficient_of(index(name), power); }

  // Keep only terms for which pred(monomial) holds.
  template <class Pred>
  TruncPoly filter(Pred pred) const {
    TruncPoly r(vars_, order_);
    for (const auto& [m, c] : terms_)
      if (pred(m)) r.terms_.emplace(m, c);
    return r;
  }

  // Re-express over another variable list (matching by name).
  TruncPoly embed(const VarList& target, int order = -1) const {
    std::vector<int> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) map[i] = -1;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      for (std::size_t j = 0; j < target.size(); ++j)
        if (target[j] == vars_[i]) map[i] = static_cast<int>(j);
    }
    TruncPoly r(target, order < 0 ? order_ : order);
    for (const auto& [m, c] : terms_) {
      Monomial t;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (m[static_cast<int>(i)] == 0) continue;
        if (map[i] < 0) throw UnknownVariable("embed: variable " + vars_[i] + " missing in target");
        t.set(map[i], m[static_cast<int>(i)]);
      }
      r.add_term(t, c);
    }
    return r;
  }

  template <class D, class F>
  TruncPoly<D> map_coeffs(F f) const {
    TruncPoly<D> r(vars_, order_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  bool operator==(const TruncPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff_string(c) << ")";
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        int e = m[static_cast<int>(i)];
        if (e == 1) os << "*" << vars_[i];
        if (e > 1) os << "*" << vars_[i] << "^" << e;
      }
    }
    return os.str();
  }

 private:
  static bool is_zero_coeff(const C& c) { return detail::coeff_is_zero(c); }
  static std::string coeff_string(const C& c) { return detail::coeff_string(c); }
  TruncPoly with_cap(int order) const {
    TruncPoly r = *this;
    r.order_ = order;
    return r;
  }
  void check_compatible(const TruncPoly& o) const {
    if (vars_ != o.vars_) throw std::invalid_argument("TruncPoly variable lists differ");
  }

  VarList vars_;
  int order_ = 0;
  Terms terms_;
};

using Poly = TruncPoly<Rational>;

struct SubstituteOptions {
  // Needed for shifts such as k -> k0 + z; the caller vouches that p is an exact polynomial.
  bool allow_constant = false;
};

// Compose p with bindings var -> replacement. Unbound variables of p must exist in the
// replacements' variable list (or p's own list when no binding is given).
template <class C>
TruncPoly<C> substitute(const TruncPoly<C>& p, const std::map<std::string, TruncPoly<C>>& bindings,
                        SubstituteOptions opts = {}) {
  if (bindings.empty()) return p;
  const VarList& target = bindings.begin()->second.vars();
  for (const auto& [name, image] : bindings) {
    var_index(p.vars(), name);
    if (image.vars() != target) throw std::invalid_argument("substitute: replacements use different variable lists");
    if (!opts.allow_constant && !detail::coeff_is_zero(image.constant_term()))
      throw std::invalid_argument("substitute: replacement for " + name + " has a constant term");
  }
  int order = p.order();
  std::vector<TruncPoly<C>> images;
  for (std::size_t i = 0; i < p.vars().size(); ++i) {
    auto it = bindings.find(p.vars()[i]);
    if (it != bindings.end())
      images.push_back(it->second.with_order(std::max(order, it->second.order())));
    else if (p.degree_in(static_cast<int>(i)) > 0)
      images.push_back(TruncPoly<C>::variable(target, order, p.vars()[i]));
    else
      images.push_back(TruncPoly<C>(target, order));
  }
  std::vector<std::vector<TruncPoly<C>>> powers(images.size());
  auto power = [&](std::size_t v, int e) -> const TruncPoly<C>& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(TruncPoly<C>::constant(target, order, C(1)));
    while (static_cast<int>(list.size()) <= e) list.push_back((list.back() * images[v]).truncated(order));
    return list[e];
  };
  TruncPoly<C> result(target, order);
  for (const auto& [m, c] : p.terms()) {
    TruncPoly<C> term = TruncPoly<C>::constant(target, order, c);
    for (std::size_t v = 0; v < images.size(); ++v) {
      int e = m[static_cast<int>(v)];
      if (e > 0) term = term * power(v, e);
      if (term.is_zero()) break;
    }
    result += term;
  }
  return result;
}

}  // namespace equidist
