#include "equidist/root_field.hpp"

#include <stdexcept>

namespace equidist {

FieldElem::FieldElem(UniPoly rep, std::shared_ptr<const UniPoly> modulus) : rep_(std::move(rep)), mod_(std::move(modulus)) {
  reduce();
}

Rational FieldElem::rational_value() const {
  if (!is_rational()) throw std::domain_error("field element is not rational");
  return rep_[0];
}

double FieldElem::value_at(const CertifiedRoot& root) const {
  Rational k = root.approx(200);
  return rep_.eval(k).get_d();
}

void FieldElem::adopt(const FieldElem& o) {
  if (!mod_ && o.mod_) {
    mod_ = o.mod_;
  } else if (mod_ && o.mod_ && mod_ != o.mod_ && !(*mod_ == *o.mod_)) {
    throw std::invalid_argument("field elements with different moduli");
  }
}

void FieldElem::reduce() {
  if (mod_ && rep_.degree() >= mod_->degree()) rep_ = rep_ % *mod_;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  adopt(o);
  rep_ += o.rep_;
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  adopt(o);
  rep_ -= o.rep_;
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  adopt(o);
  rep_ = rep_ * o.rep_;
  reduce();
  return *this;
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  r.rep_ = -r.rep_;
  return r;
}

std::string to_string(const FieldElem& x) { return x.rep().to_string("k"); }

}  // namespace equidist
