#include "equidist/tangent.hpp"

#include "equidist/linalg.hpp"

namespace equidist {

namespace {
std::vector<Monomial> monomials(int lo, int hi) {
  std::vector<Monomial> out;
  for (int a = 0; a <= hi; ++a)
    for (int b = 0; a + b <= hi; ++b)
      for (int c = 0; a + b + c <= hi; ++c)
        for (int d = 0; a + b + c + d <= hi; ++d)
          if (a + b + c + d >= lo) out.push_back(Monomial{a, b, c, d});
  return out;
}
}  // namespace

TangentSpace4::TangentSpace4(const Poly& h3_in) : monos_(monomials(1, 4)) {
  const VarList& vs = germ_vars();
  Poly h = h3_in.embed(vs, 4).truncated(3).with_order(4);
  Poly hs1 = h.derivative("s1"), hs2 = h.derivative("s2"), hu1 = h.derivative("u1"), hu2 = h.derivative("u2");
  auto add = [&](const Poly& p) { gens_.push_back(vec(p)); };
  for (Monomial m : monomials(1, 3)) {
    Poly mp = Poly::monomial(vs, 4, m, 1);
    add(hs1 * mp);
    add(hs2 * mp);
  }
  Poly u1 = Poly::variable(vs, 4, "u1"), u2 = Poly::variable(vs, 4, "u2");
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int j = 0; j <= 2; ++j) {
        if (a + b + j < 2 || a + b + 2 * j > 4) continue;
        Poly t = u1.pow(a) * u2.pow(b) * h.pow(j);
        add(hu1 * t);
        add(hu2 * t);
        add(t);
      }
  add(hu1 * h);
  add(hu2 * h);

  // dim T4 = rank(all) - rank(degree <= 3 rows)
  RatMatrix all(monos_.size(), std::vector<Rational>(gens_.size())), low;
  for (std::size_t j = 0; j < gens_.size(); ++j)
    for (std::size_t i = 0; i < monos_.size(); ++i) all[i][j] = gens_[j][i];
  int top = 0;
  for (std::size_t i = 0; i < monos_.size(); ++i) {
    if (monos_[i].degree() <= 3)
      low.push_back(all[i]);
    else
      ++top;
  }
  quotient_dim_ = top - (rank(all) - rank(low));
}

std::vector<Rational> TangentSpace4::vec(const Poly& p) const {
  std::vector<Rational> v(monos_.size());
  for (std::size_t i = 0; i < monos_.size(); ++i) v[i] = p.coeff(monos_[i]);
  return v;
}

bool TangentSpace4::in_span(const std::vector<Rational>& target, const std::vector<Monomial>& extra) const {
  RatMatrix a(monos_.size(), std::vector<Rational>(gens_.size() + extra.size()));
  for (std::size_t j = 0; j < gens_.size(); ++j)
    for (std::size_t i = 0; i < monos_.size(); ++i) a[i][j] = gens_[j][i];
  for (std::size_t j = 0; j < extra.size(); ++j)
    for (std::size_t i = 0; i < monos_.size(); ++i)
      if (monos_[i] == extra[j]) a[i][gens_.size() + j] = 1;
  return solve(a, target).has_value();
}

std::optional<std::vector<Rational>> TangentSpace4::project(const Poly& h4_in, const std::vector<Monomial>& complement) const {
  Poly h4 = h4_in.embed(germ_vars(), 4).homogeneous(4);
  std::size_t n = gens_.size(), k = complement.size();
  RatMatrix a(monos_.size(), std::vector<Rational>(n + k));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < monos_.size(); ++i) a[i][j] = gens_[j][i];
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < monos_.size(); ++i)
      if (monos_[i] == complement[j]) a[i][n + j] = 1;
  if (static_cast<int>(k) != quotient_dim_) return std::nullopt;
  // the complement coordinates are determined only if no tangent combination hits them
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Monomial> others;
    for (std::size_t l = 0; l < k; ++l)
      if (l != j) others.push_back(complement[l]);
    if (in_span(vec(Poly::monomial(germ_vars(), 4, complement[j], 1)), others)) return std::nullopt;
  }
  auto sol = solve(a, vec(h4));
  if (!sol) return std::nullopt;
  return std::vector<Rational>(sol->begin() + static_cast<long>(n), sol->end());
}

std::vector<Monomial> TangentSpace4::complement(const std::vector<Monomial>& preferred) const {
  std::vector<Monomial> order = preferred;
  for (Monomial m : monomials(4, 4))
    if (std::find(order.begin(), order.end(), m) == order.end()) order.push_back(m);
  std::vector<Monomial> chosen;
  for (Monomial m : order)
    if (!in_span(vec(Poly::monomial(germ_vars(), 4, m, 1)), chosen)) chosen.push_back(m);
  return chosen;
}

}  // namespace equidist
