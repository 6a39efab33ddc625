#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "equidist/trunc_poly.hpp"

namespace equidist {

class DegenerateSquare : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// old v = image(new variables)
struct SubstitutionRecord {
  std::string var;
  Poly image;

  Poly apply(const Poly& p) const;
  // Series inverse of v -> image(v, others), to the image's order.
  SubstitutionRecord inverse() const;
  // this followed by next (both acting on the same variable list)
  SubstitutionRecord then(const SubstitutionRecord& next) const;
};

SubstitutionRecord identity_record(const VarList& vars, int order, const std::string& var);

std::pair<Poly, SubstitutionRecord> complete_square(const Poly& p, std::string_view v);

// p = a*v + b with a, b free of v: returns (a, b). Throws if p is not linear in v.
std::pair<Poly, Poly> split_linear(const Poly& p, std::string_view v);

// Drop all monomials in which none of the listed variables occurs.
Poly drop_free_of(const Poly& p, const std::vector<std::string>& keep_vars);

}  // namespace equidist
