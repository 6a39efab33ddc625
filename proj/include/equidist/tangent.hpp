#pragma once

#include <optional>
#include <vector>

#include "equidist/trunc_poly.hpp"

namespace equidist {

// Variables (s1, s2, u1, u2) of a map germ (u1, u2, h).
inline const VarList& germ_vars() {
  static const VarList v{"s1", "s2", "u1", "u2"};
  return v;
}

// Degree-4 part of the tangent space (unipotent A-group, first order) of the germ with
// 3-jet h3. Works with vectors over all monomials of degree 1..4 in germ_vars().
class TangentSpace4 {
 public:
  explicit TangentSpace4(const Poly& h3);

  // Coordinates of the degree-4 polynomial h4 along `complement` modulo the tangent space,
  // or nullopt when the complement does not span the quotient.
  std::optional<std::vector<Rational>> project(const Poly& h4, const std::vector<Monomial>& complement) const;

  // Greedy monomial complement; `preferred` monomials are tried first.
  std::vector<Monomial> complement(const std::vector<Monomial>& preferred = {}) const;

  int quotient_dim() const { return quotient_dim_; }

 private:
  bool in_span(const std::vector<Rational>& target, const std::vector<Monomial>& extra) const;
  std::vector<Rational> vec(const Poly& p) const;

  std::vector<Monomial> monos_;  // degree 1..4
  std::vector<std::vector<Rational>> gens_;
  int quotient_dim_ = 0;
};

}  // namespace equidist
