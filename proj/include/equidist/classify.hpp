#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equidist/roots.hpp"
#include "equidist/surfaces.hpp"

namespace equidist {

class NoSpecialValues : public std::domain_error {
 public:
  NoSpecialValues() : std::domain_error("no special values: f030 and g030 have opposite signs") {}
};

enum class Subcase { PosDef, NegDef, Indef };
enum class Region { ac, b, d };

std::string subcase_name(Subcase s);    // PosDef / NegDef / Indef
std::string subcase_symbol(Subcase s);  // ++ / -- / +-
std::string region_name(Region r);

// a + b * sqrt(radicand), radicand > 0
struct Surd {
  Rational a, b, radicand = 1;
  int sign() const;
  double value() const;
  std::string to_string() const;
};

// A root of Q(lambda) = f030 lambda^2 - g030 (1 - lambda)^2.
struct SpecialValue {
  int which = 1;                 // +1 for g3/(g3+f3), -1 for g3/(g3-f3)
  std::optional<Rational> exact;  // when f030 g030 is a rational square
  UniPoly minpoly;               // squarefree polynomial with this root
  RootInterval interval;
  double approx = 0;
  Rational rational_approx(int bits) const;
};

struct LambdaLandscape {
  std::vector<SpecialValue> special;
  std::optional<Rational> degenerate;
  std::vector<std::string> warnings;
};

Rational q_invariant(const SurfacePair& p, const Rational& lambda);
UniPoly q_polynomial(const SurfacePair& p);  // Q as a polynomial in lambda
Rational r_invariant(const SurfacePair& p);
std::pair<Rational, Rational> gauss_tangency(const SurfacePair& p);

LambdaLandscape lambda_landscape(const SurfacePair& p);

struct CaseLabel {
  enum class Case { Generic11, Special12, Degenerate2 };
  Case kind = Case::Generic11;
  std::optional<Subcase> subcase;  // Generic11 only; absent when R = 0
  int special_sign = 0;            // Special12: +1 or -1
  Rational q, r;
  std::optional<Region> region;
  bool versal = false;
  bool more_degenerate = false;  // genericity failure (R = 0)
  std::vector<std::string> warnings;
  std::string case_name() const;
};

CaseLabel classify_lambda(const SurfacePair& p, const Rational& lambda);

// The displayed A3 expression for the special value `which`; needs f030, g030 > 0.
Surd a3_condition(const SurfacePair& p, int which);

// Direct jet reduction at a generic ratio: completes the square in s1, removes s2^2 u terms,
// and reads the quadratic form of the s2 u u terms.
struct GenericReduction {
  Rational s1sq, c0300, qa, qb, qc, eps_s2;
  std::optional<Subcase> subcase;
};
GenericReduction reduce_generic(const SurfacePair& p, const Rational& lambda);

// 4-jet data at a rational special value, in a frame where the 3-jet is
// c s1^2 + s2^2 u2 + a s2 u1^2. c0400 != 0 iff the germ is A3-type; c0310 is the
// s2^3 u1 coordinate (reported as the third condition).
struct SpecialJet {
  Rational lambda, c, a, c0400, c0310;
};
std::optional<SpecialJet> special_jet(const SurfacePair& p, const Rational& lambda);

}  // namespace equidist
