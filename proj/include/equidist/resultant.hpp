#pragma once

#include <string_view>

#include "equidist/trunc_poly.hpp"
#include "equidist/uni_poly.hpp"

namespace equidist {

// Sylvester determinant. Both zero is an error; one zero gives 0.
Rational resultant(const UniPoly& p, const UniPoly& q);

// p, q polynomials in v and at most one other variable w; returns Res_v(p, q) in w.
// Degrees in v must be <= 4.
UniPoly resultant(const Poly& p, const Poly& q, std::string_view v);

// Coefficients of p in v as polynomials in the single other variable w.
std::vector<UniPoly> coefficients_in(const Poly& p, int v, int w);

}  // namespace equidist
