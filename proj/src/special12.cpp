#include "equidist/special12.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "equidist/resultant.hpp"
#include "equidist/roots.hpp"

namespace equidist {

double SpecialFamily::h(double s1, double s2, double u1, double u2) const {
  return sign_s1 * s1 * s1 + s2 * s2 * u2 + s2 * u1 * u1 + std::pow(s2, 4) + std::pow(s2, 3) * u1 + p * s2 + q * std::pow(s2, 3);
}

double SpecialFamily::h_s2(double s2, double u1, double u2) const {
  return 2 * s2 * u2 + u1 * u1 + 4 * std::pow(s2, 3) + 3 * s2 * s2 * u1 + p + 3 * q * s2 * s2;
}

double SpecialFamily::h_s2s2(double s2, double u1, double u2) const { return 2 * u2 + 12 * s2 * s2 + 6 * s2 * u1 + 6 * q * s2; }

double SpecialFamily::u2_of(double s2, double u1) const {
  return -(u1 * u1 + 4 * std::pow(s2, 3) + 3 * s2 * s2 * u1 + p + 3 * q * s2 * s2) / (2 * s2);
}

// ---------------------------------------------------------------- loci

UniPoly cusp_quartic(const Rational& p, const Rational& q) { return UniPoly({-4 * p, 0, 12 * q, 32, 9}); }

UniPoly cusp_eliminant(const Rational& q) {
  const VarList vs{"s", "p"};
  auto s = Poly::variable(vs, 8, "s"), p = Poly::variable(vs, 8, "p");
  Poly phi = 9 * s.pow(4) + 32 * s.pow(3) + 12 * q * s * s - 4 * p;
  Poly dphi = phi.derivative("s");
  return resultant(phi, dphi, "s");
}

double cusp_locus_p(const Rational& q, int bits) {
  if (is_zero(q)) return 0;
  UniPoly e = cusp_eliminant(q);
  std::optional<CertifiedRoot> best;
  double bv = 0;
  for (const auto& r : certified_roots(e)) {
    if (r.sign_of(UniPoly::x()) == 0) continue;
    double v = std::abs(r.value());
    if (!best || v < bv) {
      best = r;
      bv = v;
    }
  }
  if (!best) return 0;
  return to_double(best->approx(bits));
}

std::vector<LocusPoint> cusp_locus(double qlo, double qhi, int n) {
  if (n < 2) throw std::invalid_argument("cusp_locus needs n >= 2");
  std::vector<LocusPoint> out;
  for (int i = 0; i < n; ++i) {
    double q = i == n - 1 ? qhi : qlo + (qhi - qlo) * i / (n - 1);
    if (std::abs(q) > kSpecialQLimit) continue;
    out.push_back({q, cusp_locus_p(from_double(q))});
  }
  return out;
}

std::vector<LocusPoint> selfint_locus(double qlo, double qhi, int n) {
  std::vector<LocusPoint> out;
  double lo = std::max(qlo, 0.0), hi = std::min(qhi, kSpecialQLimit);
  if (lo > hi) return out;
  if (lo == hi || n < 2) return {{lo, -lo * lo}};
  for (int i = 0; i < n; ++i) {
    double q = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    out.push_back({q, -q * q});
  }
  return out;
}

PlaneLoci plane_loci(double qlo, double qhi, int n) {
  PlaneLoci out;
  out.cusp_branch = cusp_locus(qlo, qhi, n);
  for (int i = 0; i < n; ++i) {
    double q = i == n - 1 ? qhi : qlo + (qhi - qlo) * i / (n - 1);
    if (std::abs(q) <= kSpecialQLimit) out.cusp_axis.push_back({q, 0});
  }
  out.selfint_branch = selfint_locus(qlo, qhi, n);
  return out;
}

SeriesFit fit_cusp_series(double qlo, double qhi, int n) {
  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double q = qlo * std::pow(qhi / qlo, static_cast<double>(i) / (n - 1));
    double p = cusp_locus_p(from_double(q));
    double t = q / qhi;
    for (int j = 0; j < 4; ++j) A(i, j) = std::pow(t, j);
    y[i] = p / (q * q * q);
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  SeriesFit out;
  out.samples = n;
  out.c3 = c[0];
  out.c4 = c[1] / qhi;
  out.rel_err3 = std::abs(out.c3 - 1.0 / 16) / (1.0 / 16);
  out.rel_err4 = std::abs(out.c4 - 9.0 / 1024) / (9.0 / 1024);
  return out;
}

namespace {

// sorted real roots as doubles
std::vector<double> real_roots(const UniPoly& u) {
  std::vector<double> out;
  for (const auto& r : certified_roots(u)) out.push_back(to_double(r.approx(80)));
  std::sort(out.begin(), out.end());
  return out;
}

// maximal subintervals of [-w, w] on which u >= 0
std::vector<std::pair<double, double>> nonneg_intervals(const UniPoly& u, double w) {
  std::vector<double> cuts{-w};
  for (double r : real_roots(u))
    if (r > -w && r < w) cuts.push_back(r);
  cuts.push_back(w);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double m = (cuts[i] + cuts[i + 1]) / 2;
    if (u.eval(m) < 0) continue;
    if (!out.empty() && out.back().second == cuts[i])
      out.back().second = cuts[i + 1];
    else
      out.emplace_back(cuts[i], cuts[i + 1]);
  }
  return out;
}

}  // namespace

int cusp_interval_count(const SpecialFamily& f, double w) {
  auto iv = nonneg_intervals(cusp_quartic(from_double(f.p), from_double(f.q)), w);
  int n = 0;
  for (const auto& [a, b] : iv) n += (a == -w && b == w) ? 2 : 1;
  return n;
}

std::vector<std::pair<double, double>> selfint_intervals(const SpecialFamily& f, double w) {
  Rational p = from_double(f.p), q = from_double(f.q);
  UniPoly u({0, p + q * q, 8 * q, 16, 4});
  return nonneg_intervals(u, w);
}

std::optional<SelfIntPair> selfint_pair(const SpecialFamily& f, double v1, int sign_v2) {
  double c = f.p + f.q * f.q, w2;
  double rest = (8 * f.q + 16 * v1 + 4 * v1 * v1) / 4;
  if (c == 0)
    w2 = rest;
  else if (v1 == 0)
    return std::nullopt;
  else
    w2 = rest + c / (4 * v1);
  if (w2 < 0) return std::nullopt;
  SelfIntPair out;
  out.v1 = v1;
  out.v2 = sign_v2 * std::sqrt(w2);
  double a = v1 + out.v2, b = v1 - out.v2;
  out.s21 = a;
  out.s22 = b;
  out.u1 = -f.q - 4 * v1;
  out.u2 = -2 * a * a - 2 * a * b - 2 * b * b - 1.5 * (a + b) * (f.q + out.u1);
  out.image = {out.u1, out.u2, f.h(0, a, out.u1, out.u2)};
  return out;
}

// ---------------------------------------------------------------- mesh

GridSpec special_default_grid() {
  GridSpec g;
  g.lo1 = -1;
  g.hi1 = 1;
  g.lo2 = -6;
  g.hi2 = 6;
  g.n1 = 81;
  g.n2 = 61;
  return g;
}

Mesh evaluate_special(const SpecialFamily& f, const GridSpec& grid) {
  grid.validate();
  Mesh m;
  double ds = (grid.hi1 - grid.lo1) / (grid.n1 - 1), du = (grid.hi2 - grid.lo2) / (grid.n2 - 1);
  auto S = [&](int i) { return i == grid.n1 - 1 ? grid.hi1 : grid.lo1 + ds * i; };
  auto U = [&](int j) { return j == grid.n2 - 1 ? grid.hi2 : grid.lo2 + du * j; };
  std::vector<int> id(static_cast<std::size_t>(grid.n1) * grid.n2, -1);
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) {
      double s2 = S(i), u1 = U(j);
      if (std::abs(s2) < 0.5 * ds) continue;
      double u2 = f.u2_of(s2, u1);
      id[static_cast<std::size_t>(i) * grid.n2 + j] = static_cast<int>(m.vertices.size());
      m.vertices.push_back({u1, u2, f.h(0, s2, u1, u2)});
      m.vertex_source.push_back({0, s2, u1, u2});
    }
  m.component_names = {"s2<0", "s2>0"};
  for (int i = 0; i + 1 < grid.n1; ++i)
    for (int j = 0; j + 1 < grid.n2; ++j) {
      if ((S(i) > 0) != (S(i + 1) > 0)) continue;
      int a = id[static_cast<std::size_t>(i) * grid.n2 + j], b = id[static_cast<std::size_t>(i + 1) * grid.n2 + j];
      int c = id[static_cast<std::size_t>(i + 1) * grid.n2 + j + 1], d = id[static_cast<std::size_t>(i) * grid.n2 + j + 1];
      if (a < 0 || b < 0 || c < 0 || d < 0) continue;
      int comp = S(i) > 0 ? 1 : 0;
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
      m.face_component.push_back(comp);
      m.face_component.push_back(comp);
    }

  // cuspidal edges: s2 h_s2s2 with u2 eliminated, as a curve in (s2, u1)
  auto psi = [&](double s2, double u1) { return u1 * u1 - 3 * s2 * s2 * u1 + f.p - 3 * f.q * s2 * s2 - 8 * s2 * s2 * s2; };
  auto grad = [&](double s2, double u1) {
    return Eigen::Vector2d(-6 * s2 * u1 - 6 * f.q * s2 - 24 * s2 * s2, 2 * u1 - 3 * s2 * s2);
  };
  Box2 box{grid.lo1, grid.hi1, grid.lo2, grid.hi2};
  double step = 0.5 * std::min(ds, du);
  for (auto& c : trace_planar(psi, grad, box, grid.n1, grid.n2)) {
    Feature ft;
    ft.kind = FeatureKind::CuspEdge;
    ft.closed = c.closed;
    ft.closure_residual = c.closure_residual;
    auto end = [&](const Eigen::VectorXd& x, const std::string& r) {
      if (r == "closed" || r == "singular" || r == "limit") return r;
      return std::string(std::min({x[0] - box.x0, box.x1 - x[0], x[1] - box.y0, box.y1 - x[1]}) < 1.5 * step ? "window" : "domain");
    };
    ft.end_first = end(c.points.front(), c.end_first);
    ft.end_last = end(c.points.back(), c.end_last);
    for (const auto& x : c.points) {
      double s2 = x[0], u1 = x[1];
      if (std::abs(s2) < 1e-9) continue;
      double u2 = f.u2_of(s2, u1);
      ft.points.push_back({u1, u2, f.h(0, s2, u1, u2)});
      ft.source.push_back({0, s2, u1, u2});
    }
    if (ft.points.size() >= 2) m.features.push_back(std::move(ft));
  }

  // self-intersections along the v1-intervals
  double w = std::max(std::abs(grid.lo1), std::abs(grid.hi1));
  for (const auto& [a, b] : selfint_intervals(f, w)) {
    const int n = 200;
    Feature ft;
    ft.kind = FeatureKind::SelfIntersection;
    ft.label = "v2>0";
    auto flush = [&] {
      if (ft.points.size() >= 2) m.features.push_back(ft);
      ft.points.clear();
      ft.source.clear();
    };
    for (int i = 0; i <= n; ++i) {
      double v1 = a + (b - a) * i / n;
      auto pr = selfint_pair(f, v1);
      if (!pr || std::abs(pr->s21) > w || std::abs(pr->s22) > w || std::abs(pr->v2) < 1e-12) {
        flush();
        continue;
      }
      ft.points.push_back(pr->image);
      ft.source.push_back({pr->v1, pr->v2, pr->s21, pr->s22, pr->u1, pr->u2});
    }
    flush();
  }
  return m;
}

// ---------------------------------------------------------------- output

std::string loci_csv(const PlaneLoci& loci) {
  std::ostringstream os;
  os << "locus,q,p\n";
  for (const auto& pt : loci.cusp_axis) os << "cusp_axis," << fmt17(pt.q) << ',' << fmt17(pt.p) << '\n';
  for (const auto& pt : loci.cusp_branch) os << "cusp," << fmt17(pt.q) << ',' << fmt17(pt.p) << '\n';
  for (const auto& pt : loci.selfint_branch) os << "selfint," << fmt17(pt.q) << ',' << fmt17(pt.p) << '\n';
  return os.str();
}

std::string loci_svg(const PlaneLoci& loci) {
  // p horizontal, q vertical
  double pmin = 0, pmax = 0, qmin = 0, qmax = 0;
  auto extend = [&](const std::vector<LocusPoint>& v) {
    for (const auto& pt : v) {
      pmin = std::min(pmin, pt.p);
      pmax = std::max(pmax, pt.p);
      qmin = std::min(qmin, pt.q);
      qmax = std::max(qmax, pt.q);
    }
  };
  extend(loci.cusp_branch);
  extend(loci.cusp_axis);
  extend(loci.selfint_branch);
  double pspan = std::max(pmax - pmin, 1e-12), qspan = std::max(qmax - qmin, 1e-12);
  pmin -= 0.1 * pspan;
  pmax += 0.1 * pspan;
  qmin -= 0.1 * qspan;
  qmax += 0.1 * qspan;
  const double W = 480, H = 480;
  auto X = [&](double p) { return (p - pmin) / (pmax - pmin) * W; };
  auto Y = [&](double q) { return H - (q - qmin) / (qmax - qmin) * H; };
  auto path = [&](const std::vector<LocusPoint>& v) {
    std::ostringstream d;
    for (std::size_t i = 0; i < v.size(); ++i) d << (i ? " L " : "M ") << fmt17(X(v[i].p)) << ' ' << fmt17(Y(v[i].q));
    return d.str();
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
     << "\">\n";
  os << "  <g id=\"axes\" stroke=\"#999\" stroke-width=\"0.5\">\n";
  os << "    <line x1=\"0\" y1=\"" << fmt17(Y(0)) << "\" x2=\"" << W << "\" y2=\"" << fmt17(Y(0)) << "\"/>\n";
  os << "    <line x1=\"" << fmt17(X(0)) << "\" y1=\"0\" x2=\"" << fmt17(X(0)) << "\" y2=\"" << H << "\"/>\n";
  os << "  </g>\n";
  os << "  <text x=\"" << W - 12 << "\" y=\"" << fmt17(Y(0) - 4) << "\">p</text>\n";
  os << "  <text x=\"" << fmt17(X(0) + 4) << "\" y=\"12\">q</text>\n";
  os << "  <path id=\"cusp-axis\" class=\"cusp\" d=\"" << path(loci.cusp_axis) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  os << "  <path id=\"cusp-locus\" class=\"cusp\" d=\"" << path(loci.cusp_branch)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"><title>cuspidal edge set changes</title></path>\n";
  os << "  <path id=\"selfint-locus\" class=\"selfint\" d=\"" << path(loci.selfint_branch)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"><title>self-intersection set changes</title></path>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace equidist
