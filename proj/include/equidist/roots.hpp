#pragma once

#include <stdexcept>
#include <vector>

#include "equidist/uni_poly.hpp"

namespace equidist {

class NeedsPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Refinement cap used by every certified sign decision.
constexpr int kPrecisionCapBits = 2048;

struct RootInterval {
  Rational lo, hi;  // open interval (lo, hi), or the exact root when lo == hi
  int multiplicity = 1;
  double approx = 0;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
};

std::vector<UniPoly> sturm_sequence(const UniPoly& p);
// Number of distinct roots of the squarefree polynomial behind seq in (a, b].
int sturm_count(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b);
// Over the whole real line.
int sturm_count_all(const std::vector<UniPoly>& seq);

// Bisect an isolating interval of the squarefree polynomial sqf until width <= w.
void refine_interval(const UniPoly& sqf, RootInterval& iv, const Rational& w);

class RootSet {
 public:
  RootSet() = default;
  RootSet(UniPoly squarefree, std::vector<RootInterval> roots);

  std::size_t size() const { return roots_.size(); }
  const RootInterval& operator[](std::size_t i) const { return roots_[i]; }
  auto begin() const { return roots_.begin(); }
  auto end() const { return roots_.end(); }
  const UniPoly& squarefree() const { return sqf_; }
  // Largest current interval width.
  Rational width() const;
  void refine(const Rational& w);

 private:
  UniPoly sqf_;
  std::vector<RootInterval> roots_;
};

struct RootCount {
  int count = 0;
  RootSet roots;
};

// Distinct real roots with isolating intervals and multiplicities. Zero polynomial is an error.
RootCount count_real_roots(const UniPoly& p);

// A real algebraic number: a root of a squarefree polynomial with an isolating interval.
class CertifiedRoot {
 public:
  CertifiedRoot(UniPoly squarefree, RootInterval iv);
  const UniPoly& poly() const { return poly_; }
  const RootInterval& interval() const { return iv_; }
  // Exact sign of r at this root; refines the stored interval as needed.
  int sign_of(const UniPoly& r) const;
  Rational approx(int bits) const;
  double value() const;
  void refine(const Rational& w) const { refine_interval(poly_, iv_, w); }

 private:
  UniPoly poly_;
  mutable RootInterval iv_;
};

std::vector<CertifiedRoot> certified_roots(const UniPoly& p);

}  // namespace equidist
