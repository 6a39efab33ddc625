#include "doctest.h"
#include "equidist/surfaces.hpp"
#include "support.hpp"

using namespace equidist;
using namespace testing_support;

namespace {

SurfacePair unit_pair() {
  SurfacePair p;
  p.m.set(2, 0, 0, 1);
  p.n.set(2, 0, 0, 1);
  p.m.set(0, 3, 0, 1);
  p.n.set(0, 3, 0, 1);
  p.n.set(0, 1, 1, 1);
  return p;
}

bool passed(const ValidationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.passed;
  FAIL("no check named " << name);
  return false;
}

Rational fam_coeff(const FamilyJet& f, std::initializer_list<int> e) { return f.h.coeff(Monomial(e)); }

}  // namespace

TEST_SUITE("surfaces") {
  TEST_CASE("validate_pair examples") {
    auto ok = validate_pair(unit_pair());
    CHECK(ok.geometric_ok());
    CHECK(ok.versal());
    CHECK(ok.failures().empty());

    SurfacePair umb = unit_pair();
    umb.m.set(2, 0, 0, 0);
    auto r = validate_pair(umb);
    CHECK(!r.geometric_ok());
    CHECK(!passed(r, "umbilic M"));

    SurfacePair nv = unit_pair();
    nv.n.set(0, 1, 1, 0);
    auto r2 = validate_pair(nv);
    CHECK(r2.geometric_ok());
    CHECK(!r2.versal());

    SurfacePair neg = unit_pair();
    neg.m.set(0, 3, 0, -1);
    CHECK(!passed(validate_pair(neg), "f030 > 0"));
    CHECK(validate_pair(flip_y(neg)).geometric_ok());

    SurfacePair bad = unit_pair();
    bad.m.set(0, 2, 0, 1);
    CHECK(!passed(validate_pair(bad), "parabolic basepoint"));
    CHECK(!passed(validate_pair(bad), "supercaustic"));
  }

  TEST_CASE("random pairs satisfy the assumptions") {
    for (int t = 0; t < 50; ++t) {
      auto r = validate_pair(rand_pair());
      CHECK(r.geometric_ok());
      CHECK(r.versal());
    }
  }

  TEST_CASE("build_family examples") {
    SurfacePair p = unit_pair();
    p.n.set(2, 0, 0, 3);
    p.m = p.n;
    p.n.set(0, 1, 1, 1);
    auto fam = build_family(p, Rational(1, 2), 3);
    CHECK(fam_coeff(fam, {1, 0, 1, 0, 0, 0}) == -2 * p.g20());
    CHECK_THROWS_AS(build_family(p, 0, 3), ExcludedRatio);
    CHECK_THROWS_AS(build_family(p, 1, 3), ExcludedRatio);

    SurfacePair d = unit_pair();
    d.n.set(2, 0, 0, 2);
    CHECK(fam_coeff(build_family(d, 2, 3), {2, 0, 0, 0, 0, 0}) == 0);
  }

  TEST_CASE("family 2-jet and eps s2 coefficient on random pairs") {
    for (int t = 0; t < 30; ++t) {
      SurfacePair p = rand_pair();
      Rational lam = rand_nonzero();
      if (lam == 1) continue;
      auto fam = build_family(p, lam, 3);
      Rational f20 = p.f20(), g20 = p.g20();
      // s1^2 carries an extra 1/lambda against the printed form
      CHECK(fam_coeff(fam, {2, 0, 0, 0, 0, 0}) == (1 - lam) * (lam * f20 + (1 - lam) * g20) / lam);
      CHECK(fam_coeff(fam, {1, 0, 1, 0, 0, 0}) == -2 * g20 * (1 - lam) / lam);
      CHECK(fam_coeff(fam, {0, 1, 0, 0, 1, 0}) == -p.g011() * (1 - lam));
      CHECK(fam_coeff(fam, {0, 0, 0, 0, 0, 1}) == 0);
      // no pure-parameter terms
      for (const auto& [m, c] : fam.h.terms()) CHECK(m[0] + m[1] + m[2] + m[3] > 0);
    }
  }

  TEST_CASE("family scales with the heights") {
    for (int t = 0; t < 10; ++t) {
      SurfacePair p = rand_pair();
      Rational s = ratio(randint(1, 7), randint(1, 5));
      SurfacePair q = p;
      for (auto* j : {&q.m, &q.n})
        for (auto& [k, c] : j->coeffs) c *= s;
      Rational lam = ratio(randint(2, 9), 11);
      CHECK(build_family(q, lam, 4).h == s * build_family(p, lam, 4).h);
    }
  }

  TEST_CASE("scaled_contact_map examples") {
    SurfacePair p = unit_pair();
    p.n.set(2, 0, 0, 5);
    p.m.set(2, 0, 0, 3);
    Poly k = scaled_contact_map(p, Rational(1, 2), 3);
    CHECK(k.coeff({2, 0}) == -(5 + 3));

    // degenerate ratio g20/(g20-f20)
    Rational deg = p.g20() / (p.g20() - p.f20());
    CHECK(scaled_contact_map(p, deg, 3).homogeneous(2).is_zero());

    // special ratio g3/(g3+f3) with f030 = 4, g030 = 9
    SurfacePair s = unit_pair();
    s.m.set(0, 3, 0, 4);
    s.n.set(0, 3, 0, 9);
    Rational sp = Rational(3) / (3 + 2);
    CHECK(scaled_contact_map(s, sp, 3).coeff({0, 3}) == 0);
    CHECK_THROWS_AS(scaled_contact_map(s, 1, 3), ExcludedRatio);
  }

  TEST_CASE("scaled contact 2-jet formula") {
    for (int t = 0; t < 20; ++t) {
      SurfacePair p = rand_pair();
      Rational lam = rand_nonzero();
      if (lam == 1) continue;
      Rational mu = lam / (lam - 1);
      Poly k = scaled_contact_map(p, lam, 4);
      CHECK(k.coeff({2, 0}) == mu * (p.g20() - mu * p.f20()));
      CHECK(k.coeff({0, 3}) == mu * (p.g030() - mu * mu * p.f030()));
    }
  }

  TEST_CASE("contact_type examples") {
    VarList v{"x", "y"};
    Poly x = Poly::variable(v, 6, "x"), y = Poly::variable(v, 6, "y");
    CHECK(contact_type(x * x + y.pow(3)).name() == "A2");
    CHECK(contact_type(x * x + y.pow(4)).name() == "A3");
    CHECK(contact_type(x.pow(3) - x * y * y).name() == "D4-");
    CHECK(contact_type(x.pow(3) + x * y * y).name() == "D4+");
    CHECK(contact_type(x * x + y * y).name() == "A1");
    CHECK(contact_type(x * x).name() == "MoreDegenerate");
    CHECK(contact_type(x * x * y).name() == "MoreDegenerate");
    // corank 1 with the square in y and mixed terms
    CHECK(contact_type(y * y + Rational(2) * x * x * y + x.pow(4) + x.pow(5)).name() == "A4");
    CHECK_THROWS_AS(contact_type(x + y * y), NotSingular);
  }

  TEST_CASE("contact type is A2 away from special and degenerate ratios") {
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
      SurfacePair p = rand_pair();
      Rational lam = rand_nonzero();
      if (lam == 1) continue;
      Rational mu = lam / (lam - 1);
      if (is_zero(p.g20() - mu * p.f20()) || is_zero(p.g030() - mu * mu * p.f030())) continue;
      CHECK(contact_type(scaled_contact_map(p, lam, 4)).name() == "A2");
      ++checked;
    }
    CHECK(checked > 40);
  }

  TEST_CASE("surface JSON round trip") {
    std::string text = R"({"f": [[2,0,0,1],[0,3,0,"3/2"],[1,2,0,"0.25"]], "g": [[2,0,0,"-2"],[0,3,0,1],[0,1,1,"1e-2"]]})";
    SurfacePair p = parse_pair(text);
    CHECK(p.m(0, 3) == Rational(3, 2));
    CHECK(p.m(1, 2) == Rational(1, 4));
    CHECK(p.g011() == Rational(1, 100));
    SurfacePair q = parse_pair(pair_to_json(p));
    CHECK(q.m.coeffs == p.m.coeffs);
    CHECK(q.n.coeffs == p.n.coeffs);
    CHECK_THROWS_AS(parse_pair("{"), InputError);
    CHECK_THROWS_AS(parse_pair(R"({"f": [[1,2]], "g": []})"), InputError);
    CHECK_THROWS_AS(parse_pair(R"({"f": [[2,0,0,"x"]], "g": []})"), std::invalid_argument);
  }
}
