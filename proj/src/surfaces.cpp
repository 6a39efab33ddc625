#include "equidist/surfaces.hpp"

#include <fstream>
#include <sstream>

#include "equidist/coordinate_change.hpp"
#include "json.hpp"

namespace equidist {

using nlohmann::json;

namespace {
const VarList kSurfaceVars{"x", "y", "eps"};
const VarList kContactVars{"x", "y"};

Rational read_coeff(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InputError("coefficient must be an integer or a \"p/q\" string");
}

SurfaceJet read_jet(const json& arr, int order, int eps_order, const char* side) {
  if (!arr.is_array()) throw InputError(std::string("missing array \"") + side + "\"");
  SurfaceJet jet;
  jet.order = order;
  jet.eps_order = eps_order;
  for (const auto& entry : arr) {
    if (!entry.is_array() || entry.size() != 4) throw InputError(std::string(side) + ": entries are [i,j,k,coeff]");
    int i = entry[0].get<int>(), j = entry[1].get<int>(), k = entry[2].get<int>();
    if (i < 0 || j < 0 || k < 0) throw InputError(std::string(side) + ": negative exponent");
    jet.set(i, j, k, read_coeff(entry[3]));
  }
  return jet;
}

json write_jet(const SurfaceJet& jet) {
  json arr = json::array();
  for (const auto& [key, c] : jet.coeffs) arr.push_back({key[0], key[1], key[2], to_string(c)});
  return arr;
}
}  // namespace

Rational SurfaceJet::operator()(int i, int j, int k) const {
  auto it = coeffs.find({i, j, k});
  return it == coeffs.end() ? Rational(0) : it->second;
}

void SurfaceJet::set(int i, int j, int k, const Rational& c) {
  if (i + j > order || k > eps_order) return;
  if (is_zero(c))
    coeffs.erase({i, j, k});
  else
    coeffs[{i, j, k}] = c;
}

Poly SurfaceJet::poly() const {
  Poly p(kSurfaceVars, order + eps_order);
  for (const auto& [key, c] : coeffs) p.add_term(Monomial{key[0], key[1], key[2]}, c);
  return p;
}

Poly SurfaceJet::slice(int order_cap) const {
  Poly p(kContactVars, order_cap);
  for (const auto& [key, c] : coeffs)
    if (key[2] == 0) p.add_term(Monomial{key[0], key[1]}, c);
  return p;
}

SurfacePair parse_pair(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("surface file must be a JSON object");
  try {
    int order = doc.value("order", 4);
    int eps_order = doc.value("eps_order", 1);
    if (order < 2 || eps_order < 0 || order + eps_order > 40) throw InputError("order out of range");
    // entries beyond the requested orders would be silently dropped; widen instead
    for (const char* side : {"f", "g"})
      if (doc.contains(side) && doc[side].is_array())
        for (const auto& e : doc[side])
          if (e.is_array() && e.size() == 4) {
            order = std::max(order, e[0].get<int>() + e[1].get<int>());
            eps_order = std::max(eps_order, e[2].get<int>());
          }
    SurfacePair p;
    p.m = read_jet(doc.value("f", json()), order, eps_order, "f");
    p.n = read_jet(doc.value("g", json()), order, eps_order, "g");
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed surface file: ") + e.what());
  }
}

SurfacePair load_pair(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pair(ss.str());
}

std::string pair_to_json(const SurfacePair& p) {
  json doc;
  doc["order"] = p.m.order;
  doc["eps_order"] = p.m.eps_order;
  doc["f"] = write_jet(p.m);
  doc["g"] = write_jet(p.n);
  return doc.dump();
}

SurfacePair flip_y(const SurfacePair& p) {
  SurfacePair r = p;
  for (SurfaceJet* jet : {&r.m, &r.n})
    for (auto& [key, c] : jet->coeffs)
      if (key[1] % 2 == 1) c = -c;
  return r;
}

bool ValidationReport::geometric_ok() const {
  for (const auto& c : checks)
    if (!c.passed && c.name != "versality") return false;
  return true;
}

bool ValidationReport::versal() const {
  for (const auto& c : checks)
    if (c.name == "versality") return c.passed;
  return false;
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name + ": " + c.detail);
  return out;
}

ValidationReport validate_pair(const SurfacePair& p) {
  ValidationReport r;
  auto add = [&](std::string name, bool ok, std::string detail) { r.checks.push_back({std::move(name), ok, std::move(detail)}); };

  bool shape_m = true;
  for (const auto& [key, c] : p.m.coeffs)
    if (key[0] + key[1] < 2) shape_m = false;
  add("shape M", shape_m, "f has a term of (x,y)-degree below 2");
  bool shape_n = true;
  for (const auto& [key, c] : p.n.coeffs)
    if ((key[0] + key[1] < 2 && key[2] == 0) || (key[0] + key[1] == 0)) shape_n = false;
  add("shape N", shape_n, "g has a constant term or an eps-free linear term");
  bool parabolic = is_zero(p.m(1, 1)) && is_zero(p.m(0, 2)) && is_zero(p.n(1, 1)) && is_zero(p.n(0, 2));
  add("parabolic basepoint", parabolic, "xy or y^2 term at eps = 0");

  add("umbilic M", !is_zero(p.f20()), "f20 = 0");
  add("umbilic N", !is_zero(p.g20()), "g20 = 0");
  if (is_zero(p.f030()))
    add("cusp of Gauss M", false, "f030 = 0");
  else
    add("f030 > 0", sgn(p.f030()) > 0, "f030 < 0; flip y on both surfaces");
  add("cusp of Gauss N", !is_zero(p.g030()), "g030 = 0");

  // second row of J at the origin, tested at three ratios (entries lie in span{1, lambda, 1/lambda})
  bool super = true;
  if (shape_m && shape_n) {
    for (const Rational& lam : {Rational(-1), Rational(1, 3), Rational(3)}) {
      Poly h = build_family(p, lam, 2).base();
      for (const char* v : {"s1", "s2", "u1", "u2"})
        if (!is_zero(h.derivative("s2").derivative(v).constant_term())) super = false;
    }
  } else {
    super = false;
  }
  add("supercaustic", super, "second row of J does not vanish at the origin");
  add("versality", !is_zero(p.g011()), "g011 = 0");
  return r;
}

Poly FamilyJet::base() const {
  Poly r(VarList{"s1", "s2", "u1", "u2"}, h.order());
  for (const auto& [m, c] : h.terms())
    if (m[4] == 0 && m[5] == 0) r.add_term(m, c);
  return r;
}

void require_admissible(const Rational& lambda) {
  if (is_zero(lambda) || lambda == 1) throw ExcludedRatio();
}

FamilyJet build_family(const SurfacePair& p, const Rational& lambda0, int order) {
  require_admissible(lambda0);
  const VarList& vs = family_vars();
  auto var = [&](const char* n) { return Poly::variable(vs, order, n); };
  auto cst = [&](const Rational& c) { return Poly::constant(vs, order, c); };

  Poly alpha = var("alpha");
  Poly lam = cst(lambda0) + alpha;
  Poly oml = cst(1) - lam;
  // 1 / (lambda0 + alpha) = sum (-alpha)^n / lambda0^(n+1)
  Poly inv(vs, order);
  for (int n = 0; n <= order; ++n) {
    Rational c = rpow(Rational(-1), n) / rpow(lambda0, n + 1);
    inv += c * alpha.pow(n);
  }
  Poly t1 = (var("u1") - oml * var("s1")) * inv;
  Poly t2 = (var("u2") - oml * var("s2")) * inv;

  Poly f = substitute(p.m.poly().with_order(order), {{"x", var("s1")}, {"y", var("s2")}, {"eps", var("eps")}});
  Poly g = substitute(p.n.poly().with_order(order), {{"x", t1}, {"y", t2}, {"eps", var("eps")}});
  FamilyJet fam;
  fam.lambda0 = lambda0;
  fam.h = (oml * f + lam * g).truncated(order);
  return fam;
}

Poly scaled_contact_map(const SurfacePair& p, const Rational& lambda, int order) {
  require_admissible(lambda);
  Rational mu = lambda / (lambda - 1);
  Poly x = Poly::variable(kContactVars, order, "x"), y = Poly::variable(kContactVars, order, "y");
  Poly g = p.n.slice(order);
  Poly f = substitute(p.m.slice(order), {{"x", mu * x}, {"y", mu * y}});
  return mu * g - f;
}

std::string ContactType::name() const {
  switch (kind) {
    case Kind::A: return "A" + std::to_string(k);
    case Kind::D4plus: return "D4+";
    case Kind::D4minus: return "D4-";
    default: return "MoreDegenerate";
  }
}

ContactType contact_type(const Poly& kp) {
  if (kp.vars().size() != 2) throw std::invalid_argument("contact_type expects two variables");
  if (!kp.homogeneous(1).is_zero() || !is_zero(kp.constant_term())) throw NotSingular("contact map has a nonzero 1-jet");
  Poly k = kp.filter([](Monomial m) { return m.degree() >= 2; });
  Rational a = k.coeff({2, 0}), b = k.coeff({1, 1}), c = k.coeff({0, 2});
  if (!is_zero(a) || !is_zero(b) || !is_zero(c)) {
    if (!is_zero(b * b - 4 * a * c)) return {ContactType::Kind::A, 1};
    // corank 1: square in whichever variable carries it
    int sq = is_zero(a) ? 1 : 0;
    auto [q, rec] = complete_square(k, k.vars()[sq]);
    int other = 1 - sq;
    for (int e = 3; e <= q.order(); ++e) {
      Monomial m = Monomial::unit(other, e);
      if (!is_zero(q.coeff(m))) return {ContactType::Kind::A, e - 1};
    }
    return {ContactType::Kind::MoreDegenerate, 0};
  }
  Rational c3 = k.coeff({3, 0}), c2 = k.coeff({2, 1}), c1 = k.coeff({1, 2}), c0 = k.coeff({0, 3});
  Rational disc = c2 * c2 * c1 * c1 - 4 * c3 * c1 * c1 * c1 - 4 * c2 * c2 * c2 * c0 - 27 * c3 * c3 * c0 * c0 + 18 * c3 * c2 * c1 * c0;
  if (sgn(disc) > 0) return {ContactType::Kind::D4minus, 0};
  if (sgn(disc) < 0) return {ContactType::Kind::D4plus, 0};
  return {ContactType::Kind::MoreDegenerate, 0};
}

}  // namespace equidist
