#include "equidist/roots.hpp"

#include <algorithm>

namespace equidist {

namespace {

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_at(const std::vector<UniPoly>& seq, const Rational& x) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& p : seq) s.push_back(p.sign_at(x));
  return variations(s);
}

// Strict bound: every root has |x| < bound.
Rational cauchy_bound(const UniPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, rabs(p[i] / p.lead()));
  Rational b = 1 + m;
  Rational two = 1;
  while (two <= b) two *= 2;
  return two;
}

}  // namespace

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UniPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

int sturm_count(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b) {
  return variations_at(seq, a) - variations_at(seq, b);
}

int sturm_count_all(const std::vector<UniPoly>& seq) {
  std::vector<int> lo, hi;
  for (const auto& p : seq) {
    int lc = sgn(p.lead());
    hi.push_back(lc);
    lo.push_back(p.degree() % 2 == 0 ? lc : -lc);
  }
  return variations(lo) - variations(hi);
}

void refine_interval(const UniPoly& sqf, RootInterval& iv, const Rational& w) {
  if (iv.exact()) return;
  int slo = sqf.sign_at(iv.lo);
  while (iv.hi - iv.lo > w) {
    Rational m = iv.mid();
    int sm = sqf.sign_at(m);
    if (sm == 0) {
      iv.lo = iv.hi = m;
      break;
    }
    if (sm == slo)
      iv.lo = m;
    else
      iv.hi = m;
  }
  iv.approx = iv.mid().get_d();
}

RootSet::RootSet(UniPoly squarefree, std::vector<RootInterval> roots)
    : sqf_(std::move(squarefree)), roots_(std::move(roots)) {}

Rational RootSet::width() const {
  Rational w = 0;
  for (const auto& r : roots_) w = std::max(w, r.width());
  return w;
}

void RootSet::refine(const Rational& w) {
  for (auto& r : roots_) refine_interval(sqf_, r, w);
}

RootCount count_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("count_real_roots: zero polynomial");
  RootCount out;
  if (p.degree() == 0) {
    out.roots = RootSet(p, {});
    return out;
  }
  UniPoly sqf = squarefree_part(p);
  auto seq = sturm_sequence(sqf);
  Rational bound = cauchy_bound(sqf);

  struct Job {
    Rational a, b;
    int n;
  };
  std::vector<RootInterval> found;
  std::vector<Job> stack{{-bound, bound, sturm_count(seq, -bound, bound)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.n == 0) continue;
    if (j.n == 1) {
      RootInterval iv;
      if (sqf.sign_at(j.b) == 0) {
        iv.lo = iv.hi = j.b;
      } else {
        iv.lo = j.a;
        iv.hi = j.b;
      }
      found.push_back(iv);
      continue;
    }
    Rational m = (j.a + j.b) / 2;
    // keep split points off the roots so open intervals stay isolating
    Rational step = (j.b - j.a) / 8;
    int tries = 0;
    while (sqf.sign_at(m) == 0 && tries < 6) {
      m += step / (tries + 2);
      ++tries;
    }
    int left = sturm_count(seq, j.a, m);
    stack.push_back({j.a, m, left});
    stack.push_back({m, j.b, j.n - left});
  }
  for (const auto& iv : found)
    if (!iv.exact() && (sqf.sign_at(iv.lo) == 0 || sqf.sign_at(iv.hi) == 0))
      throw std::logic_error("root isolation: endpoint landed on a root");
  std::sort(found.begin(), found.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });

  auto factors = squarefree_decomposition(p);
  for (auto& iv : found) {
    iv.multiplicity = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const UniPoly& f = factors[i];
      if (f.degree() <= 0) continue;
      bool has;
      if (iv.exact())
        has = f.sign_at(iv.lo) == 0;
      else
        has = sturm_count(sturm_sequence(f), iv.lo, iv.hi) > 0;
      if (has) {
        iv.multiplicity = static_cast<int>(i) + 1;
        break;
      }
    }
    iv.approx = iv.mid().get_d();
  }
  out.count = static_cast<int>(found.size());
  out.roots = RootSet(sqf, std::move(found));
  out.roots.refine(Rational(1, 1u << 20));
  return out;
}

CertifiedRoot::CertifiedRoot(UniPoly squarefree, RootInterval iv) : poly_(std::move(squarefree)), iv_(std::move(iv)) {}

int CertifiedRoot::sign_of(const UniPoly& r) const {
  if (r.is_zero()) return 0;
  if (r.degree() == 0) return sgn(r.lead());
  if (iv_.exact()) return r.sign_at(iv_.lo);
  UniPoly g = gcd(r, poly_);
  if (g.degree() > 0) {
    // poly_ is squarefree and g | poly_, so g changes sign at each of its roots
    if (g.sign_at(iv_.lo) * g.sign_at(iv_.hi) < 0) return 0;
  }
  UniPoly rs = squarefree_part(r);
  auto seq = sturm_sequence(rs);
  Rational cap = rpow(Rational(2), -kPrecisionCapBits);
  while (true) {
    if (iv_.exact()) return r.sign_at(iv_.lo);
    int slo = r.sign_at(iv_.lo), shi = r.sign_at(iv_.hi);
    if (slo != 0 && slo == shi && sturm_count(seq, iv_.lo, iv_.hi) == 0) return slo;
    if (iv_.width() < cap) throw NeedsPrecision("sign certification exceeded 2048 bits");
    refine_interval(poly_, iv_, iv_.width() / 2);
  }
}

Rational CertifiedRoot::approx(int bits) const {
  refine_interval(poly_, iv_, rpow(Rational(2), -bits));
  return iv_.mid();
}

double CertifiedRoot::value() const { return approx(64).get_d(); }

std::vector<CertifiedRoot> certified_roots(const UniPoly& p) {
  auto rc = count_real_roots(p);
  std::vector<CertifiedRoot> out;
  for (const auto& iv : rc.roots) out.emplace_back(rc.roots.squarefree(), iv);
  return out;
}

}  // namespace equidist
