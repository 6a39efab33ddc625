#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "equidist/rational.hpp"
#include "equidist/trunc_poly.hpp"

namespace equidist {

class ExcludedRatio : public std::invalid_argument {
 public:
  ExcludedRatio() : std::invalid_argument("excluded ratio: lambda must differ from 0 and 1") {}
};

class NotSingular : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Height function jet z = sum c(i,j,k) x^i y^j eps^k. Missing entries are zero.
struct SurfaceJet {
  using Key = std::array<int, 3>;
  std::map<Key, Rational> coeffs;
  int order = 4;      // max i + j kept
  int eps_order = 1;  // max k kept

  Rational operator()(int i, int j, int k = 0) const;
  void set(int i, int j, int k, const Rational& c);

  // Polynomial in (x, y, eps).
  Poly poly() const;
  // eps = 0 slice as a polynomial in (x, y).
  Poly slice(int order_cap) const;
};

struct SurfacePair {
  SurfaceJet m;  // z = f
  SurfaceJet n;  // z = 1 + g

  Rational f20() const { return m(2, 0); }
  Rational g20() const { return n(2, 0); }
  Rational f030() const { return m(0, 3); }
  Rational g030() const { return n(0, 3); }
  Rational g011() const { return n(0, 1, 1); }
};

// {"f": [[i,j,k,"num/den"], ...], "g": [...]} with optional "order", "eps_order".
SurfacePair parse_pair(const std::string& json_text);
SurfacePair load_pair(const std::string& path);
std::string pair_to_json(const SurfacePair& p);

// y -> -y on both surfaces (flips the sign of f030).
SurfacePair flip_y(const SurfacePair& p);

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;
  bool geometric_ok() const;  // everything except versality
  bool versal() const;
  std::vector<std::string> failures() const;
};

ValidationReport validate_pair(const SurfacePair& p);

inline const VarList& family_vars() {
  static const VarList v{"s1", "s2", "u1", "u2", "eps", "alpha"};
  return v;
}

struct FamilyJet {
  Poly h;  // in family_vars()
  Rational lambda0;
  // alpha = eps = 0 slice in (s1, s2, u1, u2)
  Poly base() const;
};

void require_admissible(const Rational& lambda);

// Third component of H with lambda = lambda0 + alpha, t = (u - (1 - lambda) s) / lambda,
// truncated at `order`. The pure-parameter constant lambda is dropped.
FamilyJet build_family(const SurfacePair& p, const Rational& lambda0, int order);

// K(x, y) = mu g(x, y, 0) - f(mu x, mu y, 0), mu = lambda / (lambda - 1).
Poly scaled_contact_map(const SurfacePair& p, const Rational& lambda, int order);

struct ContactType {
  enum class Kind { A, D4plus, D4minus, MoreDegenerate };
  Kind kind = Kind::MoreDegenerate;
  int k = 0;  // for A_k
  std::string name() const;
  bool operator==(const ContactType&) const = default;
};

// K in two variables with zero 1-jet.
ContactType contact_type(const Poly& k);

}  // namespace equidist
