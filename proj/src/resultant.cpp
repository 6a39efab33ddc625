#include "equidist/resultant.hpp"

#include <stdexcept>

#include "equidist/linalg.hpp"

namespace equidist {

namespace {

Rational sylvester_det(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  // p, q low-to-high with formal degrees p.size()-1, q.size()-1
  const int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
  const int size = m + n;
  if (size == 0) return 1;
  RatMatrix s(size, std::vector<Rational>(size, Rational(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = p[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = q[n - i];
  return determinant(std::move(s));
}

}  // namespace

Rational resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("resultant: both inputs zero");
  if (p.is_zero() || q.is_zero()) return 0;
  return sylvester_det(p.coeffs(), q.coeffs());
}

std::vector<UniPoly> coefficients_in(const Poly& p, int v, int w) {
  int dv = std::max(p.degree_in(v), 0);
  std::vector<std::vector<Rational>> raw(dv + 1);
  for (const auto& [m, c] : p.terms()) {
    for (int i = 0; i < static_cast<int>(p.vars().size()); ++i)
      if (i != v && i != w && m[i] != 0) throw std::invalid_argument("resultant: more than two variables present");
    auto& row = raw[m[v]];
    int e = w >= 0 ? m[w] : 0;
    if (static_cast<int>(row.size()) <= e) row.resize(e + 1, Rational(0));
    row[e] += c;
  }
  std::vector<UniPoly> out;
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

UniPoly resultant(const Poly& p, const Poly& q, std::string_view vname) {
  if (p.vars() != q.vars()) throw std::invalid_argument("resultant: variable lists differ");
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("resultant: both inputs zero");
  if (p.is_zero() || q.is_zero()) return {};
  const int v = p.index(vname);
  int w = -1;
  for (int i = 0; i < static_cast<int>(p.vars().size()); ++i) {
    if (i == v) continue;
    if (p.degree_in(i) > 0 || q.degree_in(i) > 0) {
      if (w >= 0) throw std::invalid_argument("resultant: more than two variables present");
      w = i;
    }
  }
  auto pc = coefficients_in(p, v, w);
  auto qc = coefficients_in(q, v, w);
  const int m = static_cast<int>(pc.size()) - 1, n = static_cast<int>(qc.size()) - 1;
  if (m > 4 || n > 4) throw std::invalid_argument("resultant: degree in eliminated variable exceeds 4");
  int dp = 0, dq = 0;
  for (auto& c : pc) dp = std::max(dp, c.degree());
  for (auto& c : qc) dq = std::max(dq, c.degree());
  const int bound = n * dp + m * dq;
  // evaluate and interpolate (Newton divided differences on 0..bound)
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= bound; ++i) {
    Rational x = i;
    std::vector<Rational> pe, qe;
    for (auto& c : pc) pe.push_back(c.eval(x));
    for (auto& c : qc) qe.push_back(c.eval(x));
    xs.push_back(x);
    ys.push_back(sylvester_det(pe, qe));
  }
  std::vector<Rational> dd = ys;
  for (int j = 1; j <= bound; ++j)
    for (int i = bound; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rational> acc{dd[bound]};
  for (int i = bound - 1; i >= 0; --i) {
    // acc = acc * (x - xs[i]) + dd[i]
    std::vector<Rational> next(acc.size() + 1, Rational(0));
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] -= acc[k] * xs[i];
    }
    next[0] += dd[i];
    acc = std::move(next);
  }
  return UniPoly(std::move(acc));
}

}  // namespace equidist
