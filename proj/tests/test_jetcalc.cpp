#include <cmath>

#include "doctest.h"
#include "equidist/coordinate_change.hpp"
#include "equidist/linalg.hpp"
#include "equidist/resultant.hpp"
#include "equidist/root_field.hpp"
#include "equidist/roots.hpp"
#include "support.hpp"

using namespace equidist;
using namespace testing_support;

namespace {

Poly var(const VarList& vs, int order, const char* n) { return Poly::variable(vs, order, n); }

UniPoly from_roots(const std::vector<Rational>& roots) {
  UniPoly p = UniPoly::constant(1);
  for (const auto& r : roots) p = p * UniPoly({-r, Rational(1)});
  return p;
}

int sampled_sign_changes(const UniPoly& p, double lo, double hi, int n) {
  int changes = 0;
  double prev = p.eval(lo);
  for (int i = 1; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    double v = p.eval(x);
    if ((prev < 0 && v > 0) || (prev > 0 && v < 0)) ++changes;
    if (v != 0) prev = v;
  }
  return changes;
}

}  // namespace

TEST_SUITE("jetcalc") {
  TEST_CASE("parse rationals") {
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
  }

  TEST_CASE("substitute examples") {
    VarList vs{"s1", "u2"};
    Poly s1 = var(vs, 2, "s1"), u2 = var(vs, 2, "u2");
    Poly p = s1 * s1;
    Poly r = substitute(p, {{"s1", s1 + u2}});
    CHECK(r == s1 * s1 + Poly::constant(vs, 2, 2) * s1 * u2 + u2 * u2);
    CHECK(substitute(p, {}) == p);

    VarList ws{"s2", "u2", "y1"};
    Poly s2 = var(ws, 4, "s2"), w2 = var(ws, 4, "u2"), y1 = var(ws, 4, "y1");
    Poly q = (s2 + w2) * (s2 + w2);
    Poly k0 = Poly::constant(ws, 4, 1);
    CHECK(substitute(q, {{"s2", y1 * k0}}) == (y1 + w2) * (y1 + w2));
    CHECK_THROWS_AS(substitute(q, {{"zz", y1}}), UnknownVariable);
    CHECK_THROWS(substitute(q, {{"s2", y1 + k0}}));
    CHECK_NOTHROW(substitute(q, {{"s2", y1 + k0}}, {.allow_constant = true}));
  }

  TEST_CASE("substitute is associative with composition") {
    VarList vs{"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 40; ++trial) {
      Poly p = rand_poly(vs, 4, 4, 8);
      Poly f = rand_poly(vs, 4, 3, 4, false), g = rand_poly(vs, 4, 3, 4, false);
      Poly h = rand_poly(vs, 4, 3, 4, false);
      // p(a -> f)(b -> g) against p(a -> f(b -> g), b -> g)
      Poly left = substitute(substitute(p, {{"a", f}}), {{"b", g}});
      Poly right = substitute(p, {{"a", substitute(f, {{"b", g}})}, {"b", g}});
      CHECK(left == right);
      Poly l2 = substitute(substitute(p, {{"c", h}}), {{"c", f}});
      Poly r2 = substitute(p, {{"c", substitute(h, {{"c", f}})}});
      CHECK(l2 == r2);
    }
  }

  TEST_CASE("complete_square examples") {
    VarList vs{"s1", "u1"};
    Poly s1 = var(vs, 2, "s1"), u1 = var(vs, 2, "u1");
    Poly two = Poly::constant(vs, 2, 2);
    auto [q, rec] = complete_square(s1 * s1 + two * s1 * u1, "s1");
    CHECK(q == s1 * s1 - u1 * u1);
    CHECK(rec.image == s1 - u1);
    auto [q2, rec2] = complete_square(s1 * s1, "s1");
    CHECK(q2 == s1 * s1);
    CHECK(rec2.image == s1);
    CHECK_THROWS_AS(complete_square(s1 * u1, "s1"), DegenerateSquare);
  }

  TEST_CASE("complete_square leaves only c v^2 and inverts") {
    VarList vs{"v", "x", "y", "z"};
    for (int trial = 0; trial < 30; ++trial) {
      const int order = 5;
      Poly v = var(vs, order, "v");
      Poly p = Poly::constant(vs, order, rand_nonzero()) * v * v;
      Poly rest = rand_poly(vs, order, 5, 12, false);
      rest = rest.filter([](Monomial m) { return m.degree() >= 2 && m != Monomial::unit(0, 2); });
      p += rest;
      auto [q, rec] = complete_square(p, "v");
      for (const auto& [m, c] : q.terms())
        if (m[0] > 0) CHECK(m == Monomial::unit(0, 2));
      CHECK(q.coeff(Monomial::unit(0, 2)) == p.coeff(Monomial::unit(0, 2)));
      CHECK(rec.apply(p) == q);
      CHECK(rec.inverse().apply(q) == p);
    }
  }

  TEST_CASE("resultant examples") {
    CHECK(resultant(UniPoly({-1, 1}), UniPoly({-2, 1})) != 0);
    CHECK(resultant(UniPoly({0, 0, 1}), UniPoly({0, 1})) == 0);
    CHECK_THROWS(resultant(UniPoly(), UniPoly()));
    // Res(x - a, x - b) = a - b up to sign convention: (a-b)*(-1)^0 with our layout
    CHECK(abs(resultant(UniPoly({-3, 1}), UniPoly({-5, 1}))) == 2);
  }

  TEST_CASE("resultant vanishes iff a common factor") {
    for (int trial = 0; trial < 200; ++trial) {
      UniPoly common = UniPoly({rand_rational(), Rational(1)});
      UniPoly a = UniPoly({rand_rational(), rand_nonzero()}) * UniPoly({rand_rational(), rand_rational(), Rational(1)});
      UniPoly b = UniPoly({rand_rational(), rand_rational(), rand_nonzero()});
      bool share = randint(0, 1) == 1;
      UniPoly p = share ? a * common : a;
      UniPoly q = share ? b * common : b;
      bool zero = sgn(resultant(p, q)) == 0;
      CHECK(zero == (gcd(p, q).degree() > 0));
    }
  }

  TEST_CASE("bivariate resultant matches univariate at sample points") {
    VarList vs{"m", "n"};
    for (int trial = 0; trial < 20; ++trial) {
      Poly p = rand_poly(vs, 2, 2, 5), q = rand_poly(vs, 2, 2, 5);
      if (p.degree_in("m") < 1 || q.degree_in("m") < 1) continue;
      UniPoly r = resultant(p, q, "m");
      for (int x = -3; x <= 3; ++x) {
        std::vector<Rational> pc(p.degree_in(0) + 1), qc(q.degree_in(0) + 1);
        for (const auto& [mo, c] : p.terms()) pc[mo[0]] += c * rpow(Rational(x), mo[1]);
        for (const auto& [mo, c] : q.terms()) qc[mo[0]] += c * rpow(Rational(x), mo[1]);
        // formal degrees are kept by padding: compare only when leading terms survive
        if (sgn(pc.back()) == 0 || sgn(qc.back()) == 0) continue;
        CHECK(r.eval(Rational(x)) == resultant(UniPoly(pc), UniPoly(qc)));
      }
    }
  }

  TEST_CASE("count_real_roots examples") {
    CHECK(count_real_roots(UniPoly({1, 0, 1})).count == 0);
    auto rc = count_real_roots(UniPoly({0, -1, 0, 1}));
    REQUIRE(rc.count == 3);
    rc.roots.refine(Rational(1, 1000000));
    CHECK(std::abs(rc.roots[0].approx + 1) < 1e-6);
    CHECK(std::abs(rc.roots[1].approx) < 1e-6);
    CHECK(std::abs(rc.roots[2].approx - 1) < 1e-6);
    // e k^3 + d k^2 + b k + 1 at (b,d,e) = (8,-3,-1)
    CHECK(count_real_roots(UniPoly({1, 8, -3, -1})).count == 3);
    CHECK_THROWS(count_real_roots(UniPoly()));
    auto m = count_real_roots(UniPoly({-1, 1}) * UniPoly({-1, 1}) * UniPoly({2, 1}));
    REQUIRE(m.count == 2);
    CHECK(m.roots[0].multiplicity == 1);
    CHECK(m.roots[1].multiplicity == 2);
  }

  TEST_CASE("count_real_roots against constructed roots and sampling") {
    int agree = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      int deg = randint(3, 4);
      int nreal = randint(0, deg);
      if ((deg - nreal) % 2 == 1) nreal += nreal < deg ? 1 : -1;
      std::vector<Rational> roots;
      while (static_cast<int>(roots.size()) < nreal) {
        Rational r = ratio(randint(-40, 40), 4);
        bool sep = true;
        for (auto& o : roots)
          if (rabs(o - r) < Rational(1, 2)) sep = false;
        if (sep) roots.push_back(r);
      }
      UniPoly p = from_roots(roots);
      // complex pairs x^2 + b x + c with b^2 < 4c
      for (int k = nreal; k < deg; k += 2) p = p * UniPoly({Rational(randint(3, 9)), Rational(randint(-3, 3)), Rational(1)});
      int counted = count_real_roots(p).count;
      int sampled = sampled_sign_changes(p, -20, 20, 40000);
      if (counted == sampled && counted == nreal) ++agree;
    }
    CHECK(agree == 1000);
  }

  TEST_CASE("certified sign at algebraic roots") {
    // roots of k^2 - 2; sign of k - 1 is -, + ; sign of k^2 - 2 is 0
    auto roots = certified_roots(UniPoly({-2, 0, 1}));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].sign_of(UniPoly({-1, 1})) == -1);
    CHECK(roots[1].sign_of(UniPoly({-1, 1})) == 1);
    CHECK(roots[1].sign_of(UniPoly({-2, 0, 1})) == 0);
    CHECK(roots[1].sign_of(UniPoly({-2, 0, 1}) * UniPoly({5, 1})) == 0);
    // a tiny but nonzero quantity: k - 1.41421356 at sqrt(2)
    CHECK(roots[1].sign_of(UniPoly({Rational(-141421356, 100000000), 1})) == 1);
  }

  TEST_CASE("field elements reduce modulo the defining polynomial") {
    auto mod = std::make_shared<const UniPoly>(UniPoly({1, 8, -3, -1}));
    FieldElem k = FieldElem::generator(mod);
    FieldElem p = Rational(-1) * k * k * k + Rational(-3) * k * k + Rational(8) * k + Rational(1);
    CHECK(p.is_zero_class());
    auto roots = certified_roots(*mod);
    FieldElem x = k * k;
    for (auto& r : roots) CHECK(std::abs(x.value_at(r) - r.value() * r.value()) < 1e-9);
  }

  TEST_CASE("linear algebra") {
    RatMatrix a{{1, 2}, {3, 4}};
    CHECK(determinant(a) == -2);
    auto x = solve(a, {5, 6});
    REQUIRE(x);
    CHECK((*x)[0] == -4);
    CHECK((*x)[1] == Rational(9, 2));
    CHECK(rank(RatMatrix{{1, 2}, {2, 4}}) == 1);
    CHECK(!solve(RatMatrix{{1, 2}, {2, 4}}, {1, 1}));
  }
}
