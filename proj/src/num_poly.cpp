#include "equidist/num_poly.hpp"

#include <algorithm>

namespace equidist {

NumPoly::NumPoly(const Poly& p) : vars_(p.vars()), nvars_(static_cast<int>(p.vars().size())) {
  for (const auto& [m, c] : p.terms()) {
    terms_.emplace_back(m, c.get_d());
    for (int i = 0; i < nvars_; ++i) maxdeg_ = std::max(maxdeg_, m[i]);
  }
}

NumPoly::NumPoly(const VarList& vars, std::vector<std::pair<Monomial, double>> terms)
    : vars_(vars), nvars_(static_cast<int>(vars.size())), terms_(std::move(terms)) {
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < nvars_; ++i) maxdeg_ = std::max(maxdeg_, m[i]);
}

double NumPoly::operator()(const double* x) const {
  // power table per variable
  double pw[Monomial::kMaxVars][64];
  const int top = std::min(maxdeg_, 63);
  for (int i = 0; i < nvars_; ++i) {
    pw[i][0] = 1;
    for (int e = 1; e <= top; ++e) pw[i][e] = pw[i][e - 1] * x[i];
  }
  double s = 0;
  for (const auto& [m, c] : terms_) {
    double t = c;
    for (int i = 0; i < nvars_; ++i) t *= pw[i][m[i]];
    s += t;
  }
  return s;
}

NumPoly NumPoly::derivative(int var) const {
  std::vector<std::pair<Monomial, double>> d;
  for (const auto& [m, c] : terms_) {
    int e = m[var];
    if (e == 0) continue;
    d.emplace_back(m.with(var, e - 1), c * e);
  }
  return NumPoly(vars_, std::move(d));
}

}  // namespace equidist
