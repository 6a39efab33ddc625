#pragma once

#include <random>

#include "equidist/rational.hpp"
#include "equidist/surfaces.hpp"
#include "equidist/trunc_poly.hpp"

namespace testing_support {

using equidist::Poly;
using equidist::Rational;
using equidist::VarList;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline int randint(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

// small rational num/den with num in [-range, range], den in [1, maxden]
inline Rational rand_rational(int range = 9, int maxden = 5) {
  Rational r(randint(-range, range), randint(1, maxden));
  r.canonicalize();
  return r;
}

inline Rational rand_nonzero(int range = 9, int maxden = 5) {
  Rational r;
  do r = rand_rational(range, maxden);
  while (sgn(r) == 0);
  return r;
}

inline Poly rand_poly(const VarList& vars, int order, int maxdeg, int terms, bool constant_ok = true) {
  Poly p(vars, order);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(vars.size(), 0);
    int d = randint(constant_ok ? 0 : 1, maxdeg);
    for (int k = 0; k < d; ++k) e[randint(0, static_cast<int>(vars.size()) - 1)]++;
    p.add_term(equidist::Monomial::from(e), rand_rational());
  }
  return p;
}

// A pair satisfying the standing assumptions, with random cubic, quartic and eps terms.
inline equidist::SurfacePair rand_pair() {
  equidist::SurfacePair p;
  p.m.set(2, 0, 0, rand_nonzero());
  p.n.set(2, 0, 0, rand_nonzero());
  for (int i = 0; i <= 3; ++i) {
    p.m.set(i, 3 - i, 0, rand_rational());
    p.n.set(i, 3 - i, 0, rand_rational());
  }
  for (int i = 0; i <= 4; ++i) {
    p.m.set(i, 4 - i, 0, rand_rational());
    p.n.set(i, 4 - i, 0, rand_rational());
  }
  p.m.set(0, 3, 0, equidist::rabs(rand_nonzero()));
  p.n.set(0, 3, 0, rand_nonzero());
  p.n.set(0, 1, 1, rand_nonzero());
  p.n.set(1, 0, 1, rand_rational());
  p.n.set(2, 0, 1, rand_rational());
  p.m.set(2, 1, 1, rand_rational());
  return p;
}

}  // namespace testing_support
