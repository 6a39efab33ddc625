#pragma once

#include <array>
#include <vector>

#include "equidist/trunc_poly.hpp"

namespace equidist {

// Floating-point copy of a polynomial for fast evaluation in meshing.
class NumPoly {
 public:
  NumPoly() = default;
  explicit NumPoly(const Poly& p);
  NumPoly(const VarList& vars, std::vector<std::pair<Monomial, double>> terms);

  int nvars() const { return nvars_; }
  const VarList& vars() const { return vars_; }
  double operator()(const double* x) const;
  double operator()(const std::vector<double>& x) const { return (*this)(x.data()); }
  NumPoly derivative(int var) const;
  bool empty() const { return terms_.empty(); }

 private:
  VarList vars_;
  int nvars_ = 0;
  int maxdeg_ = 0;
  std::vector<std::pair<Monomial, double>> terms_;
};

}  // namespace equidist
