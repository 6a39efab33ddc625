#include "equidist/degen2.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <sstream>

#include "equidist/coordinate_change.hpp"
#include "equidist/resultant.hpp"
#include "equidist/tangent.hpp"

namespace equidist {

namespace {

const VarList kHVars{"s1", "s2", "u1", "u2", "p", "q"};
const VarList kLFullVars{"y1", "k", "p", "q"};
constexpr int kChainOrder = 60;

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) out += (out.empty() ? "" : ", ") + s;
  return out;
}

Poly normal_form_h(const DegenNormalForm& nf, int order) {
  auto v = [&](const char* n) { return Poly::variable(kHVars, order, n); };
  Poly s1 = v("s1"), s2 = v("s2"), u1 = v("u1"), u2 = v("u2");
  return s1 * u1 + s1.pow(3) + s2 * s2 * u2 + s2 * u2 * u2 + nf.b * s1 * s1 * s2 + nf.c * s1 * s1 * u2 + nf.d * s1 * s2 * s2 +
         nf.e * s2.pow(3) + s1.pow(4) + v("p") * s2 + v("q") * s1 * s1;
}

// P(v) with v -> num/den, multiplied by den^deg_v(P).
Poly clear_denominator(const Poly& p, std::string_view var, const Poly& num, const Poly& den) {
  int n = p.degree_in(var);
  Poly out(p.vars(), p.order());
  for (int i = 0; i <= n; ++i) out += p.coefficient_of(var, i) * num.pow(i) * den.pow(n - i);
  return out;
}

Poly divide_monomial(const Poly& p, Monomial m, const Rational& c) {
  Poly out(p.vars(), p.order());
  Rational inv = 1 / c;
  for (const auto& [t, v] : p.terms()) {
    if (!t.divisible_by(m)) throw std::logic_error("inexact monomial division");
    out.add_term(t / m, v * inv);
  }
  return out;
}

Monomial lead(const Poly& p) { return p.terms().rbegin()->first; }

}  // namespace

Poly normal_form_poly(const DegenNormalForm& nf, int order) { return normal_form_h(nf, order); }

// ---------------------------------------------------------------- normal form

DegenNormalForm DegenNormalForm::from_coefficients(const Rational& b, const Rational& c, const Rational& d, const Rational& e) {
  DegenNormalForm nf;
  nf.b = b;
  nf.c = c;
  nf.d = d;
  nf.e = e;
  nf.s1fourth = 1;
  nf.refresh_flags();
  return nf;
}

void DegenNormalForm::refresh_flags() {
  T_nondegenerate = !is_zero(d * d - b * (3 * e - 1));
  e_admissible = !is_zero(e) && e != Rational(1, 3);
  s1fourth_nonzero = !is_zero(s1fourth);
}

bool DegenNormalForm::classifiable() const { return failed_flags().empty(); }

std::vector<std::string> DegenNormalForm::failed_flags() const {
  std::vector<std::string> out;
  if (!s1cubed_nonzero) out.push_back("s1cubed_nonzero");
  if (!s1fourth_nonzero) out.push_back("s1fourth_nonzero");
  if (!T_nondegenerate) out.push_back("T_nondegenerate");
  if (!e_admissible) out.push_back("e_admissible");
  return out;
}

Rational degenerate_lambda(const SurfacePair& p) {
  if (p.f20() == p.g20()) throw MoreDegenerate("f20 = g20: no degenerate ratio");
  return p.g20() / (p.g20() - p.f20());
}

DegenNormalForm reduce_degenerate_raw(const SurfacePair& p, int precision) {
  Rational lam = degenerate_lambda(p);
  if (classify_lambda(p, lam).kind != CaseLabel::Case::Degenerate2) throw std::logic_error("degenerate ratio not classified as Degenerate2");
  const VarList& vs = germ_vars();
  constexpr int O = 4;
  auto var = [&](const char* n) { return Poly::variable(vs, O, n); };
  Poly s1 = var("s1"), s2 = var("s2"), u1 = var("u1"), u2 = var("u2");
  const std::vector<std::string> keep{"s1", "s2"};

  Poly h = drop_free_of(build_family(p, lam, O).base(), keep);
  Rational a0 = h.coeff({1, 0, 1, 0});
  if (is_zero(a0)) throw std::logic_error("s1u1 coefficient vanishes");

  // (1) u1 only through s1 u1: new s1 = (u1-cofactor)/a0
  for (int it = 0;; ++it) {
    Poly phi(vs, O);
    for (const auto& [m, c] : h.terms())
      if (m[2] > 0) phi.add_term(m.with(2, m[2] - 1), c);
    Poly delta = (phi - a0 * s1) * (1 / a0);
    if (delta.is_zero()) break;
    if (it > 8) throw std::logic_error("u1 confinement did not settle");
    h = drop_free_of(substitute(h, {{"s1", s1 - delta}}), keep);
  }

  Rational f20 = p.f20(), g20 = p.g20(), g030 = p.g030();
  Rational want_c = 3 * g030 * f20 * f20 / (g20 * g20), want_e = 3 * f20 * g030 * (g20 - f20) / (g20 * g20);
  if (h.coeff({0, 2, 0, 1}) != want_c || h.coeff({0, 1, 0, 2}) != want_e)
    throw std::logic_error("s2^2u2 / s2u2^2 coefficients differ from the surface formulas");

  // (2) kill s1 s2 u2
  Rational al = h.coeff({1, 1, 0, 1}), de = h.coeff({1, 2, 0, 0});
  if (!is_zero(al)) {
    if (!is_zero(de))
      h = substitute(h, {{"s2", s2 - al / (2 * de) * u2}});
    else
      h = substitute(h, {{"s2", s2 - al / (2 * h.coeff({0, 2, 0, 1})) * s1}});
    h = drop_free_of(h, keep);
  }
  // s1 * phi(u2) goes into u1
  Poly psi(vs, O);
  for (const auto& [m, c] : h.terms())
    if (m[0] == 1 && m[1] == 0 && m[2] == 0) psi.add_term(m.with(0, 0), c);
  if (!psi.is_zero()) h = drop_free_of(substitute(h, {{"u1", u1 - psi * (1 / a0)}}), keep);

  Poly h3 = h.truncated(3);
  const std::vector<Monomial> allowed{{1, 0, 1, 0}, {3, 0, 0, 0}, {0, 2, 0, 1}, {0, 1, 0, 2},
                                      {2, 1, 0, 0}, {2, 0, 0, 1}, {1, 2, 0, 0}, {0, 3, 0, 0}};
  for (const auto& [m, c] : h3.terms())
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end())
      throw std::logic_error("degenerate 3-jet not reduced: " + h3.to_string());

  DegenNormalForm nf;
  nf.lambda = lam;
  Rational B3 = h.coeff({3, 0, 0, 0}), C = h.coeff({0, 2, 0, 1}), E = h.coeff({0, 1, 0, 2});
  Rational bp = h.coeff({2, 1, 0, 0}), cp = h.coeff({2, 0, 0, 1}), dp = h.coeff({1, 2, 0, 0}), ep = h.coeff({0, 3, 0, 0});
  if (is_zero(C) || is_zero(E)) throw MoreDegenerate("s2^2u2 or s2u2^2 coefficient vanishes");

  TangentSpace4 ts(h3);
  auto coords = ts.project(h.homogeneous(4), {Monomial{4, 0, 0, 0}, Monomial{0, 4, 0, 0}});
  if (!coords) throw std::logic_error("degenerate 4-jet quotient not spanned by s1^4, s2^4");
  nf.s1fourth = (*coords)[0];
  nf.s2fourth = (*coords)[1];

  nf.s1cubed_nonzero = !is_zero(B3);
  if (nf.s1cubed_nonzero) {
    // s1 -> s1 beta/tau, s2 -> beta s2, u2 -> C beta/E u2, h -> E/(C^2 beta^3) h
    Rational r = E * B3 / (C * C), tau;
    nf.exact = exact_cbrt(r, tau);
    if (!nf.exact) {
      tau = cbrt_approx(r, precision);
      nf.precision = precision;
    }
    nf.b = bp * tau / B3;
    nf.c = cp * C * tau / (E * B3);
    nf.d = dp * tau * tau / B3;
    nf.e = ep * E / (C * C);
  }
  bool s1c = nf.s1cubed_nonzero;
  nf.refresh_flags();
  nf.s1cubed_nonzero = s1c;
  return nf;
}

DegenNormalForm reduce_degenerate(const SurfacePair& p, int precision) {
  DegenNormalForm nf = reduce_degenerate_raw(p, precision);
  if (!nf.classifiable()) throw MoreDegenerate("degenerate normal form fails: " + join(nf.failed_flags()));
  return nf;
}

// ---------------------------------------------------------------- cone

std::string regime_name(ConeRegime r) {
  switch (r) {
    case ConeRegime::PointOnly: return "PointOnly";
    case ConeRegime::ParamX1X2: return "ParamX1X2";
    case ConeRegime::ParamX1S2: return "ParamX1S2";
    case ConeRegime::ParamX2S2: return "ParamX2S2";
    default: return "RealCone";
  }
}

std::string shape_name(QuadricShape s) {
  switch (s) {
    case QuadricShape::OneSheet: return "OneSheet";
    case QuadricShape::TwoSheets: return "TwoSheets";
    case QuadricShape::Ellipsoid: return "Ellipsoid";
    default: return "Empty";
  }
}

ConeInfo cone_regime(const DegenNormalForm& nf) {
  if (!nf.T_nondegenerate) throw MoreDegenerate("T is degenerate");
  if (is_zero(nf.b)) return {ConeRegime::RealCone, std::nullopt};  // T = -2d s1 s2 - (3e-1) s2^2 is indefinite
  Rational k = (3 * nf.b * nf.e - nf.b - nf.d * nf.d) / nf.b;
  if (sgn(nf.b) > 0) return {sgn(k) > 0 ? ConeRegime::PointOnly : ConeRegime::ParamX1X2, k};
  return {sgn(k) > 0 ? ConeRegime::ParamX1S2 : ConeRegime::ParamX2S2, k};
}

RatMatrix cone_matrix(const DegenNormalForm& nf) {
  return {{nf.b, nf.d, 0}, {nf.d, 3 * nf.e, 1}, {0, 1, 1}};
}

RatMatrix cusp_conic_matrix(const DegenNormalForm& nf) {
  const Rational &b = nf.b, &c = nf.c, &d = nf.d, &e = nf.e;
  Rational xy = (b * d - 9 * e) / 2, xz = -(c * d + 3) / 2, yz = -(3 * c * e + b) / 2;
  return {{b * b - 3 * d, xy, xz}, {xy, d * d - 3 * b * e, yz}, {xz, yz, -c}};
}

QuadricShape unfolded_quadric(const DegenNormalForm& nf, const Rational& p) {
  if (!nf.T_nondegenerate) throw MoreDegenerate("T is degenerate");
  if (is_zero(p)) throw std::invalid_argument("p = 0 gives the cone itself");
  // gamma = -p; leading minors in the order (u2, s2, s1) are 1, 3e - 1, det
  Rational det = determinant(cone_matrix(nf));
  bool posdef = sgn(3 * nf.e - 1) > 0 && sgn(det) > 0;
  if (posdef) return sgn(p) < 0 ? QuadricShape::Ellipsoid : QuadricShape::Empty;
  // det < 0: signature (2,1); det > 0: (1,2)
  int rhs = sgn(det) < 0 ? -sgn(p) : sgn(p);
  return rhs > 0 ? QuadricShape::OneSheet : QuadricShape::TwoSheets;
}

// ---------------------------------------------------------------- cusp edges

namespace {
const VarList kMN{"m", "n"};

Poly dehomogenize(const RatMatrix& a) {
  Poly m = Poly::variable(kMN, 2, "m"), n = Poly::variable(kMN, 2, "n");
  return a[0][0] * m * m + 2 * a[0][1] * m * n + a[1][1] * n * n + 2 * a[0][2] * m + 2 * a[1][2] * n +
         Poly::constant(kMN, 2, a[2][2]);
}

RatMatrix congruent(const RatMatrix& a, const RatMatrix& t) {
  RatMatrix out(3, std::vector<Rational>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += t[k][i] * a[k][l] * t[l][j];
      out[i][j] = s;
    }
  return out;
}
}  // namespace

CuspCount cusp_edge_count(const DegenNormalForm& nf) {
  if (!nf.T_nondegenerate) throw MoreDegenerate("T is degenerate");
  return conic_intersections(cone_matrix(nf), cusp_conic_matrix(nf));
}

CuspCount conic_intersections(const RatMatrix& g, const RatMatrix& c2) {
  if (is_zero(determinant(g))) throw MoreDegenerate("cone conic is singular");
  bool c2zero = true;
  for (const auto& row : c2)
    for (const auto& v : row) c2zero = c2zero && is_zero(v);
  if (c2zero) throw MoreDegenerate("cusp conic vanishes identically");

  // chart (s1, s2) at u2 = 1 after a projective change; retried so that no
  // intersection lies at infinity and distinct points have distinct m
  const std::vector<std::array<int, 4>> shifts{{0, 0, 0, 0}, {3, 1, 2, 1}, {-2, 5, 1, 3}, {7, -3, -4, 2}, {1, 1, 1, -5}, {-6, 2, 9, 4}};
  std::optional<UniPoly> fallback;
  for (const auto& sh : shifts) {
    Rational al = ratio(sh[0], 7), be = ratio(sh[1], 5), ga = ratio(sh[2], 9), dl = ratio(sh[3], 3);
    RatMatrix t{{1, be, al}, {0, 1, ga}, {dl, 0, 1}};
    if (is_zero(determinant(t))) continue;
    RatMatrix gt = congruent(g, t), ct = congruent(c2, t);
    if (is_zero(gt[1][1]) || is_zero(ct[1][1])) continue;
    UniPoly res = resultant(dehomogenize(gt), dehomogenize(ct), "n");
    if (res.is_zero()) throw MoreDegenerate("cusp conic shares a component with the cone");
    if (res.degree() != 4) continue;
    if (gcd(res, res.derivative()).degree() == 0) return {count_real_roots(res).count, false};
    if (!fallback) fallback = res;
  }
  if (!fallback) throw MoreDegenerate("cusp conic intersection could not be resolved");
  return {count_real_roots(*fallback).count, true};
}

// ---------------------------------------------------------------- sheets

UniPoly sheet_cubic(const DegenNormalForm& nf) { return UniPoly({1, nf.b, nf.d, nf.e}); }

Rational sheet_discriminant(const DegenNormalForm& nf) {
  const Rational &b = nf.b, &d = nf.d, &e = nf.e;
  return 27 * e * e + 2 * b * (2 * b * b - 9 * d) * e + d * d * (4 * d - b * b);
}

SheetInfo sheet_count(const DegenNormalForm& nf) {
  if (is_zero(nf.e)) throw MoreDegenerate("e = 0");
  SheetInfo out;
  out.discriminant = sheet_discriminant(nf);
  if (is_zero(out.discriminant)) throw MoreDegenerate("sheet discriminant vanishes");
  out.count = sgn(out.discriminant) > 0 ? 1 : 3;
  out.roots = certified_roots(sheet_cubic(nf));
  if (static_cast<int>(out.roots.size()) != out.count) throw std::logic_error("sheet count disagrees with the real roots of the cubic");
  return out;
}

// ---------------------------------------------------------------- self-intersections

const VarList& chain_vars() {
  static const VarList v{"x1", "y1", "x2", "y2", "u2", "p", "q", "k"};
  return v;
}

const VarList& l_vars() {
  static const VarList v{"y1", "z", "p", "q"};
  return v;
}

SIChain si_chain(const DegenNormalForm& nf) {
  const VarList& cv = chain_vars();
  const int O = kChainOrder;
  auto v = [&](const char* n) { return Poly::variable(cv, O, n); };
  Poly x1 = v("x1"), y1 = v("y1"), x2 = v("x2"), y2 = v("y2"), k = v("k");
  Poly h = normal_form_h(nf, O);
  Poly hs2 = h.derivative("s2");
  auto [a, r] = split_linear(h.derivative("s1"), "u1");
  if (!(a == Poly::constant(kHVars, O, 1))) throw std::logic_error("h_s1 is not u1 + ...");
  Poly u1 = -r;

  using Bind = std::map<std::string, Poly>;
  Bind at_s{{"s1", x1 + y1}, {"s2", x2 + y2}}, at_t{{"s1", x1 - y1}, {"s2", x2 - y2}};
  Poly si3 = substitute(hs2, at_s), si4 = substitute(hs2, at_t);

  SIChain ch;
  auto [a2, r2] = split_linear(si3 - si4, "u2");
  ch.u2_num = -r2;
  ch.u2_den = a2;
  ch.u1 = substitute(u1, at_s);
  Poly si1 = ch.u1 - substitute(u1, at_t);
  Poly si1c = clear_denominator(si1, "u2", ch.u2_num, ch.u2_den);
  auto [ax, rx] = split_linear(si1c, "x2");
  ch.x2_num = -rx;
  ch.x2_den = ax;

  Bind s_full = at_s, t_full = at_t;
  s_full["u1"] = ch.u1;
  t_full["u1"] = ch.u1;
  Poly si2 = substitute(h, s_full) - substitute(h, t_full);
  Poly resid = clear_denominator(si2 - y2 * (si3 + si4), "u2", ch.u2_num, ch.u2_den);
  ch.si5_residual = clear_denominator(resid, "x2", ch.x2_num, ch.x2_den);
  ch.si5 = nf.b * y1 * y1 * y2 + nf.d * y1 * y2 * y2 + nf.e * y2.pow(3) + 4 * x1 * y1.pow(3) + y1.pow(3);
  ch.param_x1 = Rational(-1, 4) * (nf.e * k.pow(3) + nf.d * k * k + nf.b * k + Poly::constant(cv, O, 1));

  // (SI3' + SI4')/2 on the sheet; L = 64 D(k)^2 times it
  Poly half = clear_denominator(si3 + si4, "u2", ch.u2_num, ch.u2_den);
  int nx = half.degree_in("x2");
  if (nx != 2 || (si3 + si4).degree_in("u2") != 2) throw std::logic_error("unexpected degrees in the self-intersection chain");
  Poly g = clear_denominator(half, "x2", ch.x2_num, ch.x2_den);
  Bind sheet{{"x1", ch.param_x1}, {"y2", k * y1}};
  SubstituteOptions shift{.allow_constant = true};
  Poly gp = substitute(g, sheet, shift);
  Poly ud = substitute(ch.u2_den, sheet, shift), xd = substitute(ch.x2_den, sheet, shift);
  if (ud.size() != 1) throw std::logic_error("u2 denominator is not a monomial on the sheet");
  Poly dk = nf.d * k * k + (nf.b - 3 * nf.c * nf.e) * k + Poly::constant(cv, O, -nf.c * nf.d);
  if (dk.is_zero() || xd.is_zero()) throw DenominatorDegenerate("x2 denominator vanishes identically");
  Monomial dm = lead(dk), xm = lead(xd);
  if (!xm.divisible_by(dm)) throw std::logic_error("x2 denominator is not a multiple of D(k)");
  Monomial extra = xm / dm;
  Rational kappa = xd.coeff(xm) / dk.coeff(dm);
  if (!(xd == kappa * dk * Poly::monomial(cv, O, extra, 1))) throw std::logic_error("x2 denominator is not a multiple of D(k)");
  Monomial um = lead(ud);
  Rational uc = ud.coeff(um);
  // G = 2 Lt ud^2 xd^2 and xd = kappa * extra * D
  Poly l = divide_monomial(gp, um * um * extra * extra, uc * uc * kappa * kappa / 32);
  ch.l_full = l.embed(kLFullVars, O);
  return ch;
}

namespace {
std::shared_ptr<const UniPoly> root_modulus(const DegenNormalForm& nf, const CertifiedRoot& k0) {
  if (!(sheet_cubic(nf) % k0.poly()).is_zero()) throw std::invalid_argument("k0 is not a root of e k^3 + d k^2 + b k + 1");
  return std::make_shared<const UniPoly>(k0.poly());
}
}  // namespace

LPoly compute_L(const SIChain& chain, const DegenNormalForm& nf, const CertifiedRoot& k0, int order) {
  auto mod = root_modulus(nf, k0);
  UniPoly dpoly({-nf.c * nf.d, nf.b - 3 * nf.c * nf.e, nf.d});
  if (k0.sign_of(dpoly % *mod) == 0) throw DenominatorDegenerate("D(k0) = 0");

  // group by (y1, p, q), Taylor-expand in k about k0
  std::map<Monomial, std::vector<Rational>> groups;
  for (const auto& [m, c] : chain.l_full.terms()) {
    auto& coeffs = groups[m.with(1, 0)];
    if (static_cast<int>(coeffs.size()) <= m[1]) coeffs.resize(m[1] + 1);
    coeffs[m[1]] = c;
  }
  LPoly out(l_vars(), order);
  for (auto& [m, coeffs] : groups) {
    UniPoly a(coeffs);
    Rational fact = 1;
    for (int j = 0; !a.is_zero(); ++j) {
      if (j > 0) fact *= j;
      Monomial t{m[0], j, m[2], m[3]};
      if (t.degree() <= order) out.add_term(t, FieldElem(a * (1 / fact), mod));
      a = a.derivative();
    }
  }
  return out;
}

LPoly compute_L(const DegenNormalForm& nf, const CertifiedRoot& k0, int order) { return compute_L(si_chain(nf), nf, k0, order); }

BranchInfo branch_count(const DegenNormalForm& nf) {
  SheetInfo sheets = sheet_count(nf);
  SIChain chain = si_chain(nf);
  BranchInfo out;
  for (const auto& r : sheets.roots) {
    LPoly l = compute_L(chain, nf, r, 2);
    BranchRoot br;
    br.k0 = r.value();
    br.c0 = l.coeff({2, 0, 0, 0});
    br.c2 = l.coeff({0, 2, 0, 0});
    br.sign_c0 = br.c0.sign_at(r);
    br.sign_c2 = br.c2.sign_at(r);
    if (br.sign_c0 == 0 || br.sign_c2 == 0) throw MoreDegenerate("c0 c2 = 0 at a sheet");
    out.count += br.branch();
    out.roots.push_back(br);
  }
  return out;
}

// ---------------------------------------------------------------- classes

Subcase nearby_subcase(const DegenNormalForm& nf) {
  if (!nf.e_admissible) throw MoreDegenerate("e is 0 or 1/3");
  Rational t = nf.t_value();
  if (is_zero(t)) throw MoreDegenerate("d^2 + b - 3be = 0");
  if (sgn(nf.e * t) > 0) return Subcase::Indef;
  return nf.e > Rational(1, 3) ? Subcase::PosDef : Subcase::NegDef;
}

std::string e_interval(const Rational& e) {
  if (sgn(e) < 0) return "e<0";
  if (is_zero(e)) return "e=0";
  if (e < Rational(1, 3)) return "0<e<1/3";
  if (e == Rational(1, 3)) return "e=1/3";
  return "e>1/3";
}

const std::vector<Table1Row>& table1_rows() {
  static const std::vector<Table1Row> rows{
      {"I", 8, 4, -3, 1, 0, 0, Subcase::PosDef},
      {"II", 8, -4, -3, ratio(1, 6), 0, 1, Subcase::Indef},
      {"III", 8, -4, -3, -1, 0, 2, Subcase::NegDef},
      {"IV", -13, 6, -3, -5, 2, 0, Subcase::Indef},
      {"V", 1, 2, 3, -1, 2, 1, Subcase::NegDef},
      {"VI", 8, 4, -3, ratio(1, 6), 2, 2, Subcase::Indef},
      {"VII", -13, -6, 1, ratio(1, 6), 2, 3, Subcase::NegDef},
      {"VIII", -8, 4, 1, ratio(1, 6), 2, 3, Subcase::Indef},
      {"IX", -8, 4, -3, -1, 4, 1, Subcase::Indef},
      {"X", -8, 6, -3, 10, 4, 3, Subcase::Indef},
  };
  return rows;
}

std::string table_class_of(int cusp_edges, int branches, Subcase s) {
  for (const auto& r : table1_rows())
    if (r.cusp_edges == cusp_edges && r.self_int == branches && r.subcase == s) return r.name;
  return "Unlisted";
}

DegenInvariants classify_class(const DegenNormalForm& nf) {
  if (!nf.classifiable()) throw MoreDegenerate("degenerate normal form fails: " + join(nf.failed_flags()));
  DegenInvariants inv;
  CuspCount cc = cusp_edge_count(nf);
  inv.cusp_edges = cc.count;
  inv.cusp_tangential = cc.tangential;
  BranchInfo br = branch_count(nf);
  inv.sheets = static_cast<int>(br.roots.size());
  inv.branches = br.count;
  inv.nearby = nearby_subcase(nf);
  inv.table_class = table_class_of(inv.cusp_edges, inv.branches, inv.nearby);
  inv.cone = cone_regime(nf);
  inv.e_range = e_interval(nf.e);
  return inv;
}

DegenResult degenerate_invariants(const SurfacePair& p, int start_bits) {
  if (start_bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
  std::optional<DegenInvariants> prev;
  for (int bits = start_bits; bits <= kPrecisionCapBits; bits *= 2) {
    DegenNormalForm nf = reduce_degenerate(p, bits);
    DegenInvariants inv = classify_class(nf);
    if (nf.exact || (prev && *prev == inv)) return {nf, inv};
    prev = inv;
  }
  throw NeedsPrecision("degenerate invariants did not stabilise below the precision cap");
}

std::vector<Table1Result> table1() { return table1(table1_rows()); }

std::vector<Table1Result> table1(const std::vector<Table1Row>& rows) {
  std::vector<Table1Result> out;
  for (const auto& row : rows) {
    Table1Result r{row, classify_class(DegenNormalForm::from_coefficients(row.b, row.c, row.d, row.e)), false, false, false};
    r.cusp_ok = r.computed.cusp_edges == row.cusp_edges;
    r.self_int_ok = r.computed.branches == row.self_int;
    r.subcase_ok = r.computed.nearby == row.subcase;
    out.push_back(r);
  }
  return out;
}

}  // namespace equidist
