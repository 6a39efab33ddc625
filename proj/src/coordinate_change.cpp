#include "equidist/coordinate_change.hpp"

namespace equidist {

Poly SubstitutionRecord::apply(const Poly& p) const { return substitute(p, {{var, image}}); }

SubstitutionRecord SubstitutionRecord::inverse() const {
  const int order = image.order();
  Poly v = Poly::variable(image.vars(), order, var);
  Poly delta = image - v;
  Poly psi = v;
  for (int i = 0; i <= order; ++i) psi = v - substitute(delta, {{var, psi}});
  return {var, psi};
}

SubstitutionRecord SubstitutionRecord::then(const SubstitutionRecord& next) const {
  if (next.var != var) throw std::invalid_argument("records act on different variables");
  return {var, substitute(image, {{var, next.image}})};
}

SubstitutionRecord identity_record(const VarList& vars, int order, const std::string& var) {
  return {var, Poly::variable(vars, order, var)};
}

std::pair<Poly, SubstitutionRecord> complete_square(const Poly& p, std::string_view vname) {
  const int v = p.index(vname);
  const Monomial sq = Monomial::unit(v, 2);
  const Rational c = p.coeff(sq);
  if (sgn(c) == 0) throw DegenerateSquare("complete_square: zero coefficient of " + std::string(vname) + "^2");
  SubstitutionRecord rec = identity_record(p.vars(), p.order(), std::string(vname));
  Poly q = p;
  const Poly vpoly = Poly::variable(p.vars(), p.order(), vname);
  while (true) {
    int low = -1;
    for (const auto& [m, coef] : q.terms()) {
      if (m[v] == 0 || m == sq) continue;
      if (m == Monomial::unit(v)) throw std::invalid_argument("complete_square: linear term in " + std::string(vname));
      if (low < 0 || m.degree() < low) low = m.degree();
    }
    if (low < 0) break;
    // kill every offending term of degree `low` at once: v -> v + delta
    Poly delta(p.vars(), p.order());
    for (const auto& [m, coef] : q.terms()) {
      if (m[v] == 0 || m == sq || m.degree() != low) continue;
      delta.add_term(m / Monomial::unit(v), -coef / (2 * c));
    }
    Poly step = vpoly + delta;
    q = substitute(q, {{std::string(vname), step}});
    rec.image = substitute(rec.image, {{std::string(vname), step}});
  }
  return {q, rec};
}

std::pair<Poly, Poly> split_linear(const Poly& p, std::string_view vname) {
  const int v = p.index(vname);
  if (p.degree_in(v) > 1) throw std::invalid_argument("split_linear: not linear in " + std::string(vname));
  return {p.coefficient_of(v, 1), p.coefficient_of(v, 0)};
}

Poly drop_free_of(const Poly& p, const std::vector<std::string>& keep_vars) {
  std::vector<int> idx;
  for (const auto& name : keep_vars) idx.push_back(p.index(name));
  return p.filter([&](Monomial m) {
    for (int i : idx)
      if (m[i] > 0) return true;
    return false;
  });
}

}  // namespace equidist
