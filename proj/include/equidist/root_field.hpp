#pragma once

#include <memory>
#include <string>

#include "equidist/roots.hpp"
#include "equidist/uni_poly.hpp"

namespace equidist {

// Residue class in Q[k]/(m(k)). A null modulus marks a plain rational that adopts the
// modulus of whatever it is combined with, so TruncPoly<FieldElem> can build constants.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(int v) : rep_(UniPoly::constant(Rational(v))) {}  // NOLINT
  FieldElem(const Rational& v) : rep_(UniPoly::constant(v)) {}  // NOLINT
  FieldElem(UniPoly rep, std::shared_ptr<const UniPoly> modulus);

  static FieldElem generator(std::shared_ptr<const UniPoly> modulus) { return FieldElem(UniPoly::x(), std::move(modulus)); }

  const UniPoly& rep() const { return rep_; }
  const std::shared_ptr<const UniPoly>& modulus() const { return mod_; }
  // True when the residue class is zero (the value then vanishes at every root).
  bool is_zero_class() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rational rational_value() const;

  int sign_at(const CertifiedRoot& root) const { return root.sign_of(rep_); }
  double value_at(const CertifiedRoot& root) const;

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  FieldElem operator-() const;
  bool operator==(const FieldElem& o) const { return rep_ == o.rep_; }

 private:
  void adopt(const FieldElem& o);
  void reduce();
  UniPoly rep_;
  std::shared_ptr<const UniPoly> mod_;
};

inline bool is_zero(const FieldElem& x) { return x.is_zero_class(); }
std::string to_string(const FieldElem& x);

}  // namespace equidist
