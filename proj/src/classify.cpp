#include "equidist/classify.hpp"

#include <cmath>
#include <sstream>

#include "equidist/coordinate_change.hpp"
#include "equidist/tangent.hpp"

namespace equidist {

std::string subcase_name(Subcase s) {
  switch (s) {
    case Subcase::PosDef: return "PosDef";
    case Subcase::NegDef: return "NegDef";
    default: return "Indef";
  }
}

std::string subcase_symbol(Subcase s) {
  switch (s) {
    case Subcase::PosDef: return "++";
    case Subcase::NegDef: return "--";
    default: return "+-";
  }
}

std::string region_name(Region r) {
  switch (r) {
    case Region::ac: return "ac";
    case Region::b: return "b";
    default: return "d";
  }
}

int Surd::sign() const {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  int cmp = ::cmp(a * a, b * b * radicand);
  if (cmp == 0) return 0;
  return cmp > 0 ? sa : sb;
}

double Surd::value() const { return to_double(a) + to_double(b) * std::sqrt(to_double(radicand)); }

std::string Surd::to_string() const {
  Rational root;
  if (is_zero(b)) return equidist::to_string(a);
  if (exact_sqrt(radicand, root)) return equidist::to_string(a + b * root);
  std::ostringstream os;
  os << equidist::to_string(a) << (sgn(b) < 0 ? " - " : " + ") << equidist::to_string(rabs(b)) << "*sqrt("
     << equidist::to_string(radicand) << ")";
  return os.str();
}

Rational SpecialValue::rational_approx(int bits) const {
  if (exact) return *exact;
  CertifiedRoot r(minpoly, interval);
  return r.approx(bits);
}

Rational q_invariant(const SurfacePair& p, const Rational& lambda) {
  Rational oml = 1 - lambda;
  return p.f030() * lambda * lambda - p.g030() * oml * oml;
}

UniPoly q_polynomial(const SurfacePair& p) {
  // f030 l^2 - g030 (1 - 2 l + l^2)
  return UniPoly({-p.g030(), 2 * p.g030(), p.f030() - p.g030()});
}

Rational r_invariant(const SurfacePair& p) {
  const SurfaceJet &f = p.m, &g = p.n;
  Rational f20 = p.f20(), g20 = p.g20(), f030 = p.f030(), g030 = p.g030();
  return f20 * f20 * f030 * (g(1, 2) * g(1, 2) - 3 * g(2, 1) * g030) - g20 * g20 * g030 * (f(1, 2) * f(1, 2) - 3 * f(2, 1) * f030);
}

std::pair<Rational, Rational> gauss_tangency(const SurfacePair& p) {
  auto coeff = [](const SurfaceJet& j) -> Rational {
    Rational c20 = j(2, 0), c030 = j(0, 3);
    return (3 * c030 * j(2, 1) - j(1, 2) * j(1, 2)) / (12 * c20 * c20 * c030);
  };
  return {coeff(p.m), coeff(p.n)};
}

LambdaLandscape lambda_landscape(const SurfacePair& p) {
  LambdaLandscape out;
  Rational f030 = p.f030(), g030 = p.g030();
  if (p.f20() != p.g20()) out.degenerate = p.g20() / (p.g20() - p.f20());
  if (sgn(f030 * g030) <= 0) return out;

  if (f030 == g030) {
    SpecialValue v;
    v.which = 1;
    v.exact = Rational(1, 2);
    v.minpoly = UniPoly({Rational(-1, 2), 1});
    v.interval = {*v.exact, *v.exact, 1, 0.5};
    v.approx = 0.5;
    out.special.push_back(v);
    out.warnings.push_back("f3 = g3: the second special value is at infinity");
    return out;
  }
  Rational prod = f030 * g030, root;
  if (exact_sqrt(prod, root)) {
    // g3/(g3 +- f3) = (g030 -+ f3 g3)/(g030 - f030)
    for (int which : {1, -1}) {
      SpecialValue v;
      v.which = which;
      v.exact = (g030 - which * root) / (g030 - f030);
      v.minpoly = UniPoly({-*v.exact, 1});
      v.interval = {*v.exact, *v.exact, 1, to_double(*v.exact)};
      v.approx = v.interval.approx;
      out.special.push_back(v);
    }
  } else {
    UniPoly q = q_polynomial(p).monic();
    for (const auto& r : certified_roots(q)) {
      SpecialValue v;
      // exactly one root lies in (0, 1) since Q(0) Q(1) = -f030 g030 < 0
      v.which = (r.sign_of(UniPoly::x()) > 0 && r.sign_of(UniPoly({-1, 1})) < 0) ? 1 : -1;
      v.minpoly = q;
      v.interval = r.interval();
      v.approx = r.value();
      out.special.push_back(v);
    }
  }
  std::sort(out.special.begin(), out.special.end(), [](const SpecialValue& a, const SpecialValue& b) { return a.which > b.which; });
  return out;
}

std::string CaseLabel::case_name() const {
  switch (kind) {
    case Case::Generic11: return "Generic11";
    case Case::Special12: return "Special12";
    default: return "Degenerate2";
  }
}

CaseLabel classify_lambda(const SurfacePair& p, const Rational& lambda) {
  require_admissible(lambda);
  CaseLabel out;
  out.q = q_invariant(p, lambda);
  out.r = r_invariant(p);
  out.versal = !is_zero(p.g011());
  if (!out.versal) out.warnings.push_back("g011 = 0: unfolding not versal");
  int fg = sgn(p.f030() * p.g030());
  if (is_zero(lambda * p.f20() + (1 - lambda) * p.g20())) {
    out.kind = CaseLabel::Case::Degenerate2;
    return out;
  }
  if (is_zero(out.q)) {
    out.kind = CaseLabel::Case::Special12;
    out.special_sign = (sgn(lambda) > 0 && lambda < 1) ? 1 : -1;
    return out;
  }
  out.kind = CaseLabel::Case::Generic11;
  int qr = sgn(out.q * out.r);
  if (qr == 0) {
    out.more_degenerate = true;
    out.warnings.push_back("R = 0: Gauss images are not in ordinary tangency");
    return out;
  }
  // definite iff QR < 0: the direct reduction gives disc(s2 u-form) = (positive) * Q * R
  if (qr > 0)
    out.subcase = Subcase::Indef;
  else
    out.subcase = fg < 0 ? Subcase::PosDef : Subcase::NegDef;
  if (*out.subcase == Subcase::PosDef)
    out.region = Region::d;
  else if (*out.subcase == Subcase::NegDef)
    out.region = Region::ac;
  else
    out.region = fg > 0 ? Region::ac : Region::b;
  return out;
}

Surd a3_condition(const SurfacePair& p, int which) {
  Rational f030 = p.f030(), g030 = p.g030();
  if (sgn(g030) < 0 || sgn(f030) < 0) throw NoSpecialValues();
  const SurfaceJet &f = p.m, &g = p.n;
  Rational f20 = p.f20(), g20 = p.g20();
  Rational f040 = f(0, 4), g040 = g(0, 4), f120 = f(1, 2), g120 = g(1, 2);
  // f3^4 = f030^2, f3^2 g3^2 = f030 g030, f3^3 g3 = f030 (f3 g3), f3 g3^3 = g030 (f3 g3)
  Surd s;
  s.a = (4 * g040 * g20 - g120 * g120) * f030 * f030 + 2 * f120 * g120 * f030 * g030 + (4 * f040 * f20 - f120 * f120) * g030 * g030;
  s.b = which * (4 * g040 * f20 * f030 + 4 * f040 * g20 * g030);
  s.radicand = f030 * g030;
  Rational root;
  if (exact_sqrt(s.radicand, root)) {
    s.a += s.b * root;
    s.b = 0;
    s.radicand = 1;
  }
  return s;
}

namespace {
Monomial fam(std::initializer_list<int> e) { return Monomial(e); }
}  // namespace

GenericReduction reduce_generic(const SurfacePair& p, const Rational& lambda) {
  Poly h = build_family(p, lambda, 3).h.filter([](Monomial m) { return m[5] == 0; });
  GenericReduction out;
  auto [q, rec] = complete_square(h, "s1");
  q = drop_free_of(q, {"s1", "s2"});
  out.s1sq = q.coeff(fam({2}));
  out.c0300 = q.coeff(fam({0, 3}));
  out.eps_s2 = q.coeff(fam({0, 1, 0, 0, 1}));
  if (is_zero(out.c0300)) return out;
  Poly lin = q.coefficient_of("s2", 2).homogeneous(1);
  Poly s2 = Poly::variable(q.vars(), 3, "s2");
  q = drop_free_of(substitute(q, {{"s2", s2 - Rational(1) / (3 * out.c0300) * lin}}), {"s1", "s2"});
  out.qa = q.coeff(fam({0, 1, 2, 0}));
  out.qb = q.coeff(fam({0, 1, 1, 1}));
  out.qc = q.coeff(fam({0, 1, 0, 2}));
  Rational disc = out.qb * out.qb - 4 * out.qa * out.qc;
  if (sgn(disc) < 0)
    out.subcase = sgn(out.qa * out.c0300) > 0 ? Subcase::PosDef : Subcase::NegDef;
  else if (sgn(disc) > 0)
    out.subcase = Subcase::Indef;
  return out;
}

std::optional<SpecialJet> special_jet(const SurfacePair& p, const Rational& lambda) {
  if (!is_zero(q_invariant(p, lambda))) return std::nullopt;
  if (is_zero(lambda * p.f20() + (1 - lambda) * p.g20())) return std::nullopt;
  const VarList& vs = germ_vars();
  Poly h = build_family(p, lambda, 4).base();
  auto [q, rec] = complete_square(h, "s1");
  q = drop_free_of(q, {"s1", "s2"});
  Poly lin = q.coefficient_of("s2", 2).homogeneous(1);
  Rational l1 = lin.coeff({0, 0, 1, 0}), l2 = lin.coeff({0, 0, 0, 1});
  Poly u1 = Poly::variable(vs, 4, "u1"), u2 = Poly::variable(vs, 4, "u2"), s2 = Poly::variable(vs, 4, "s2");
  // make the s2^2 u-coefficient equal to u2
  if (!is_zero(l2))
    q = substitute(q, {{"u2", Rational(1) / l2 * (u2 - l1 * u1)}});
  else if (!is_zero(l1))
    q = substitute(q, {{"u1", Rational(1) / l1 * u2}, {"u2", u1}});
  else
    return std::nullopt;
  Rational b = q.coeff({0, 1, 1, 1}), c = q.coeff({0, 1, 0, 2});
  q = drop_free_of(substitute(q, {{"s2", s2 - Rational(1, 2) * (b * u1 + c * u2)}}), {"s1", "s2"});
  SpecialJet out;
  out.lambda = lambda;
  out.c = q.coeff({2, 0, 0, 0});
  out.a = q.coeff({0, 1, 2, 0});
  if (is_zero(out.a)) return std::nullopt;
  Poly h3 = q.truncated(3);
  Poly expect = Poly::monomial(vs, 3, Monomial{2, 0, 0, 0}, out.c) + Poly::monomial(vs, 3, Monomial{0, 2, 0, 1}, 1) +
                Poly::monomial(vs, 3, Monomial{0, 1, 2, 0}, out.a);
  if (!(h3 == expect)) throw std::logic_error("special 3-jet not in normal form: " + h3.to_string());
  TangentSpace4 ts(h3);
  auto coords = ts.project(q.homogeneous(4), {Monomial{0, 4, 0, 0}, Monomial{0, 3, 1, 0}});
  if (!coords) throw std::logic_error("special 4-jet quotient is not spanned by s2^4, s2^3 u1");
  out.c0400 = (*coords)[0];
  out.c0310 = (*coords)[1];
  return out;
}

}  // namespace equidist
