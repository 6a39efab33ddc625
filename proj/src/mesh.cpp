#include "equidist/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace equidist {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string feature_kind_name(FeatureKind k) { return k == FeatureKind::CuspEdge ? "CuspEdge" : "SelfIntersection"; }

int Mesh::count(FeatureKind k) const {
  return static_cast<int>(std::count_if(features.begin(), features.end(), [&](const Feature& f) { return f.kind == k; }));
}

int Mesh::window_crossings(FeatureKind k) const {
  int n = 0;
  for (const auto& f : features)
    if (f.kind == k) n += (f.end_first == "window") + (f.end_last == "window");
  return n;
}

void GridSpec::validate() const {
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("grid resolution must be >= 2");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(hi1 > lo1) || !(hi2 > lo2)) throw std::invalid_argument("empty parameter range");
  if (seeds < 1) throw std::invalid_argument("seed count must be >= 1");
  if (!(s_box > 0) || !(si_window > 0)) throw std::invalid_argument("search windows must be positive");
}

GridSpec GridSpec::refined() const {
  GridSpec g = *this;
  g.n1 = 2 * n1 - 1;
  g.n2 = 2 * n2 - 1;
  return g;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------- generic sources

GenericSource generic_normal_form(Subcase s, double eps) {
  double a = s == Subcase::NegDef ? -1 : 1, c = s == Subcase::PosDef ? 1 : -1;
  VarList vs{"s1", "s2", "u1", "u2"};
  GenericSource src;
  src.h = NumPoly(vs, {{Monomial{2, 0, 0, 0}, 1.0},
                       {Monomial{0, 3, 0, 0}, 1.0},
                       {Monomial{0, 1, 2, 0}, a},
                       {Monomial{0, 1, 0, 2}, c},
                       {Monomial{0, 1, 0, 0}, eps}});
  src.label = subcase_symbol(s) + " eps=" + fmt17(eps);
  return src;
}

GenericSource family_source(const FamilyJet& f, double eps, double alpha) {
  GenericSource src;
  src.h = NumPoly(f.h);
  src.extra = {eps, alpha};
  src.label = "family eps=" + fmt17(eps) + " alpha=" + fmt17(alpha);
  return src;
}

GenericSource degenerate_source(const DegenNormalForm& nf, double p, double q) {
  GenericSource src;
  src.h = NumPoly(normal_form_poly(nf, 6));
  src.extra = {p, q};
  src.label = "degenerate p=" + fmt17(p) + " q=" + fmt17(q);
  return src;
}

namespace {

struct Derivs {
  NumPoly h, h1, h2, h11, h12, h22;
  std::array<NumPoly, 4> d11, d12, d22, d1, d2;
  std::vector<double> extra;
  mutable std::vector<double> buf;

  explicit Derivs(const GenericSource& src) : h(src.h), extra(src.extra) {
    const VarList& vs = h.vars();
    if (vs.size() < 4 || vs[0] != "s1" || vs[1] != "s2" || vs[2] != "u1" || vs[3] != "u2")
      throw std::invalid_argument("generic source must be in (s1, s2, u1, u2, ...)");
    if (vs.size() != 4 + extra.size()) throw std::invalid_argument("generic source: wrong number of fixed parameters");
    h1 = h.derivative(0);
    h2 = h.derivative(1);
    h11 = h1.derivative(0);
    h12 = h1.derivative(1);
    h22 = h2.derivative(1);
    for (int i = 0; i < 4; ++i) {
      d1[i] = h1.derivative(i);
      d2[i] = h2.derivative(i);
      d11[i] = h11.derivative(i);
      d12[i] = h12.derivative(i);
      d22[i] = h22.derivative(i);
    }
    buf.assign(vs.size(), 0.0);
    std::copy(extra.begin(), extra.end(), buf.begin() + 4);
  }
  double operator()(const NumPoly& f, const double* x) const {
    std::copy(x, x + 4, buf.begin());
    return f(buf.data());
  }
  double det(const double* x) const {
    double a = (*this)(h11, x), b = (*this)(h12, x), c = (*this)(h22, x);
    return a * c - b * b;
  }
};

using Vec2 = std::array<double, 2>;

std::optional<Vec2> newton2(const Derivs& D, double u1, double u2, Vec2 s, double box) {
  double x[4] = {s[0], s[1], u1, u2};
  for (int it = 0; it < 80; ++it) {
    double f1 = D(D.h1, x), f2 = D(D.h2, x);
    if (!std::isfinite(f1) || !std::isfinite(f2)) return std::nullopt;
    double r = std::hypot(f1, f2);
    if (r < 1e-14) break;
    double a = D(D.h11, x), b = D(D.h12, x), c = D(D.h22, x);
    double det = a * c - b * b;
    if (std::abs(det) < 1e-300) return std::nullopt;
    double dx = (c * f1 - b * f2) / det, dy = (a * f2 - b * f1) / det;
    double n = std::hypot(dx, dy);
    if (n > box / 2) {
      dx *= box / 2 / n;
      dy *= box / 2 / n;
    }
    x[0] -= dx;
    x[1] -= dy;
    if (std::abs(x[0]) > 2 * box || std::abs(x[1]) > 2 * box) return std::nullopt;
    if (n < 1e-15 * std::max(1.0, std::hypot(x[0], x[1]))) break;
  }
  double r = std::hypot(D(D.h1, x), D(D.h2, x));
  if (!(r < 1e-11) || std::abs(x[0]) > box || std::abs(x[1]) > box) return std::nullopt;
  return Vec2{x[0], x[1]};
}

// all critical points over (u1, u2) inside the s-box
std::vector<Vec2> critical_points(const Derivs& D, double u1, double u2, const GridSpec& g, const std::vector<Vec2>& hints) {
  std::vector<Vec2> out;
  auto add = [&](const std::optional<Vec2>& r) {
    if (!r) return;
    for (const auto& o : out)
      if (std::hypot(o[0] - (*r)[0], o[1] - (*r)[1]) < 1e-7) return;
    out.push_back(*r);
  };
  for (const auto& s : hints) add(newton2(D, u1, u2, s, g.s_box));
  int m = g.seeds;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double a = m == 1 ? 0 : -g.s_box + 2 * g.s_box * i / (m - 1);
      double b = m == 1 ? 0 : -g.s_box + 2 * g.s_box * j / (m - 1);
      add(newton2(D, u1, u2, {a, b}, g.s_box));
    }
  std::sort(out.begin(), out.end());
  return out;
}

double grid_val(double lo, double hi, int n, int i) { return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1); }

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Faces are assigned components by connectivity.
void label_components(Mesh& m, const std::string& prefix) {
  UnionFind uf(static_cast<int>(m.vertices.size()));
  for (const auto& f : m.faces) {
    uf.unite(f[0], f[1]);
    uf.unite(f[0], f[2]);
  }
  std::map<int, int> ids;
  m.face_component.clear();
  for (const auto& f : m.faces) {
    int r = uf.find(f[0]);
    auto it = ids.find(r);
    if (it == ids.end()) it = ids.emplace(r, static_cast<int>(ids.size())).first;
    m.face_component.push_back(it->second);
  }
  m.component_names.clear();
  for (std::size_t i = 0; i < ids.size(); ++i) m.component_names.push_back(prefix + std::to_string(i));
}

struct GenericGrid {
  int n1, n2;
  std::vector<std::vector<Vec2>> roots;  // per grid point
  std::vector<std::vector<int>> vid;     // vertex ids
  const std::vector<Vec2>& at(int i, int j) const { return roots[static_cast<std::size_t>(i) * n2 + j]; }
  const std::vector<int>& ids(int i, int j) const { return vid[static_cast<std::size_t>(i) * n2 + j]; }
};

// index of the nearest root within `radius`, requiring the match to be mutual
int match(const std::vector<Vec2>& from, int idx, const std::vector<Vec2>& to, double radius) {
  auto nearest = [](const Vec2& x, const std::vector<Vec2>& set) {
    int best = -1;
    double bd = 1e300;
    for (std::size_t k = 0; k < set.size(); ++k) {
      double d = std::hypot(set[k][0] - x[0], set[k][1] - x[1]);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(k);
      }
    }
    return std::pair{best, bd};
  };
  auto [j, d] = nearest(from[idx], to);
  if (j < 0 || d > radius) return -1;
  if (nearest(to[j], from).first != idx) return -1;
  return j;
}

}  // namespace

std::array<double, 3> critical_residuals(const GenericSource& src, const std::vector<double>& s) {
  Derivs D(src);
  return {D(D.h1, s.data()), D(D.h2, s.data()), D.det(s.data())};
}

namespace {

GenericGrid sample_generic(const Derivs& D, const GridSpec& g, Mesh& m) {
  GenericGrid G{g.n1, g.n2, {}, {}};
  G.roots.resize(static_cast<std::size_t>(g.n1) * g.n2);
  G.vid.resize(G.roots.size());
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      double u1 = grid_val(g.lo1, g.hi1, g.n1, i), u2 = grid_val(g.lo2, g.hi2, g.n2, j);
      std::vector<Vec2> hints;
      if (i > 0) hints = G.at(i - 1, j);
      if (j > 0) hints.insert(hints.end(), G.at(i, j - 1).begin(), G.at(i, j - 1).end());
      auto rs = critical_points(D, u1, u2, g, hints);
      auto& ids = G.vid[static_cast<std::size_t>(i) * g.n2 + j];
      std::vector<Vec2> kept;
      for (const auto& r : rs) {
        double x[4] = {r[0], r[1], u1, u2};
        if (std::abs(D(D.h1, x)) >= g.tol || std::abs(D(D.h2, x)) >= g.tol) continue;
        kept.push_back(r);
        ids.push_back(static_cast<int>(m.vertices.size()));
        m.vertices.push_back({u1, u2, D(D.h, x)});
        m.vertex_source.push_back({r[0], r[1], u1, u2});
      }
      G.roots[static_cast<std::size_t>(i) * g.n2 + j] = kept;
    }
  return G;
}

struct Quad {
  std::array<int, 4> r;  // root index at (i,j), (i+1,j), (i+1,j+1), (i,j+1)
};

std::vector<Quad> cell_quads(const GenericGrid& G, int i, int j, double radius) {
  std::vector<Quad> out;
  const auto &A = G.at(i, j), &B = G.at(i + 1, j), &C = G.at(i + 1, j + 1), &Dd = G.at(i, j + 1);
  for (int a = 0; a < static_cast<int>(A.size()); ++a) {
    int b = match(A, a, B, radius), d = match(A, a, Dd, radius);
    if (b < 0 || d < 0) continue;
    int c = match(B, b, C, radius);
    if (c < 0 || match(Dd, d, C, radius) != c) continue;
    out.push_back({{a, b, c, d}});
  }
  return out;
}

std::vector<Feature> generic_cusp_edges(const Derivs& D, const GenericGrid& G, const GridSpec& g, double radius) {
  CurveSystem sys;
  sys.n = 4;
  sys.g = [&](const VectorXd& x) {
    VectorXd r(3);
    r << D(D.h1, x.data()), D(D.h2, x.data()), D.det(x.data());
    return r;
  };
  sys.jac = [&](const VectorXd& x) {
    MatrixXd J(3, 4);
    double a = D(D.h11, x.data()), b = D(D.h12, x.data()), c = D(D.h22, x.data());
    for (int k = 0; k < 4; ++k) {
      J(0, k) = D(D.d1[k], x.data());
      J(1, k) = D(D.d2[k], x.data());
      J(2, k) = D(D.d11[k], x.data()) * c + a * D(D.d22[k], x.data()) - 2 * b * D(D.d12[k], x.data());
    }
    return J;
  };
  sys.inside = [&](const VectorXd& x) {
    return std::abs(x[0]) <= g.s_box && std::abs(x[1]) <= g.s_box && x[2] >= g.lo1 && x[2] <= g.hi1 && x[3] >= g.lo2 && x[3] <= g.hi2;
  };

  std::vector<VectorXd> seeds;
  auto seed = [&](const Vec2& s, double u1, double u2) {
    VectorXd x(4);
    x << s[0], s[1], u1, u2;
    seeds.push_back(x);
  };
  auto detv = [&](const Vec2& s, double u1, double u2) {
    double x[4] = {s[0], s[1], u1, u2};
    return D.det(x);
  };
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      double u1 = grid_val(g.lo1, g.hi1, g.n1, i), u2 = grid_val(g.lo2, g.hi2, g.n2, j);
      const auto& R = G.at(i, j);
      // two nearby roots with opposite determinant: a fold in between
      for (std::size_t a = 0; a < R.size(); ++a)
        for (std::size_t b = a + 1; b < R.size(); ++b)
          if (std::hypot(R[a][0] - R[b][0], R[a][1] - R[b][1]) < radius && detv(R[a], u1, u2) * detv(R[b], u1, u2) <= 0)
            seed({(R[a][0] + R[b][0]) / 2, (R[a][1] + R[b][1]) / 2}, u1, u2);
      // along edges: determinant sign change on a matched root, or a root losing its partner
      for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
        if (i + di >= g.n1 || j + dj >= g.n2) continue;
        double v1 = grid_val(g.lo1, g.hi1, g.n1, i + di), v2 = grid_val(g.lo2, g.hi2, g.n2, j + dj);
        const auto& S = G.at(i + di, j + dj);
        for (int a = 0; a < static_cast<int>(R.size()); ++a) {
          int b = match(R, a, S, radius);
          if (b < 0) {
            seed(R[a], u1, u2);
            continue;
          }
          if (detv(R[a], u1, u2) * detv(S[b], v1, v2) <= 0)
            seed({(R[a][0] + S[b][0]) / 2, (R[a][1] + S[b][1]) / 2}, (u1 + v1) / 2, (u2 + v2) / 2);
        }
      }
    }

  TraceOptions opt;
  opt.step = 0.5 * std::min((g.hi1 - g.lo1) / (g.n1 - 1), (g.hi2 - g.lo2) / (g.n2 - 1));
  std::vector<Feature> out;
  for (auto& c : trace_all(sys, seeds, opt)) {
    Feature f;
    f.kind = FeatureKind::CuspEdge;
    f.closed = c.closed;
    f.closure_residual = c.closure_residual;
    f.end_first = c.end_first;
    f.end_last = c.end_last;
    for (const auto& x : c.points) {
      f.points.push_back({x[2], x[3], D(D.h, x.data())});
      f.source.push_back({x[0], x[1], x[2], x[3]});
    }
    out.push_back(std::move(f));
  }
  return out;
}

// polylines from unordered segments whose shared endpoints are bitwise equal
std::vector<std::vector<std::pair<Vec3, std::vector<double>>>> link_segments(
    const std::vector<std::array<std::pair<Vec3, std::vector<double>>, 2>>& segs) {
  using Node = std::pair<Vec3, std::vector<double>>;
  std::map<Vec3, std::vector<int>> at;
  for (int s = 0; s < static_cast<int>(segs.size()); ++s)
    for (int e = 0; e < 2; ++e) at[segs[s][e].first].push_back(s);
  std::vector<char> used(segs.size(), 0);
  std::vector<std::vector<Node>> out;
  for (int s0 = 0; s0 < static_cast<int>(segs.size()); ++s0) {
    if (used[s0]) continue;
    used[s0] = 1;
    std::vector<Node> line{segs[s0][0], segs[s0][1]};
    for (int dir = 0; dir < 2; ++dir) {
      while (true) {
        const Vec3& end = line.back().first;
        int next = -1;
        for (int s : at[end])
          if (!used[s]) {
            next = s;
            break;
          }
        if (next < 0) break;
        used[next] = 1;
        line.push_back(segs[next][0].first == end ? segs[next][1] : segs[next][0]);
      }
      std::reverse(line.begin(), line.end());
    }
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<Feature> generic_self_intersections(const Derivs& D, const GenericGrid& G, const GridSpec& g, double radius) {
  using Node = std::pair<Vec3, std::vector<double>>;
  std::vector<std::array<Node, 2>> segs;
  auto hval = [&](const Vec2& s, double u1, double u2) {
    double x[4] = {s[0], s[1], u1, u2};
    return D(D.h, x);
  };
  for (int i = 0; i + 1 < g.n1; ++i)
    for (int j = 0; j + 1 < g.n2; ++j) {
      auto quads = cell_quads(G, i, j, radius);
      std::array<std::pair<int, int>, 4> corner{{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
      for (std::size_t a = 0; a < quads.size(); ++a)
        for (std::size_t b = a + 1; b < quads.size(); ++b) {
          std::array<double, 4> diff, hv;
          bool distinct = true;
          for (int k = 0; k < 4; ++k) {
            auto [ci, cj] = corner[k];
            const auto& R = G.at(ci, cj);
            const Vec2 &ra = R[quads[a].r[k]], &rb = R[quads[b].r[k]];
            if (std::hypot(ra[0] - rb[0], ra[1] - rb[1]) < radius / 2) distinct = false;
            double u1 = grid_val(g.lo1, g.hi1, g.n1, ci), u2 = grid_val(g.lo2, g.hi2, g.n2, cj);
            hv[k] = hval(ra, u1, u2);
            diff[k] = hv[k] - hval(rb, u1, u2);
          }
          if (!distinct) continue;
          std::vector<Node> cross;
          for (int k = 0; k < 4; ++k) {
            int l = (k + 1) % 4;
            if ((diff[k] >= 0) == (diff[l] >= 0)) continue;
            // canonical orientation so both neighbouring cells produce identical points
            int lo = k, hi = l;
            if (corner[hi] < corner[lo]) std::swap(lo, hi);
            double t = diff[lo] / (diff[lo] - diff[hi]);
            double u1 = grid_val(g.lo1, g.hi1, g.n1, corner[lo].first) * (1 - t) + grid_val(g.lo1, g.hi1, g.n1, corner[hi].first) * t;
            double u2 = grid_val(g.lo2, g.hi2, g.n2, corner[lo].second) * (1 - t) + grid_val(g.lo2, g.hi2, g.n2, corner[hi].second) * t;
            double h = hv[lo] * (1 - t) + hv[hi] * t;
            cross.push_back({Vec3{u1, u2, h}, {u1, u2}});
          }
          if (cross.size() == 2) segs.push_back({cross[0], cross[1]});
          if (cross.size() == 4) {
            segs.push_back({cross[0], cross[1]});
            segs.push_back({cross[2], cross[3]});
          }
        }
    }
  std::vector<Feature> out;
  for (auto& line : link_segments(segs)) {
    Feature f;
    f.kind = FeatureKind::SelfIntersection;
    for (auto& [p, s] : line) {
      f.points.push_back(p);
      f.source.push_back(s);
    }
    f.closed = line.size() > 2 && line.front().first == line.back().first;
    out.push_back(std::move(f));
  }
  return out;
}

double match_radius(const GridSpec& g) { return g.s_box / 8; }

}  // namespace

Mesh extract_generic(const GenericSource& src, const GridSpec& grid) {
  grid.validate();
  Derivs D(src);
  Mesh m;
  GenericGrid G = sample_generic(D, grid, m);
  double radius = match_radius(grid);
  for (int i = 0; i + 1 < grid.n1; ++i)
    for (int j = 0; j + 1 < grid.n2; ++j)
      for (const auto& q : cell_quads(G, i, j, radius)) {
        int a = G.ids(i, j)[q.r[0]], b = G.ids(i + 1, j)[q.r[1]], c = G.ids(i + 1, j + 1)[q.r[2]], d = G.ids(i, j + 1)[q.r[3]];
        m.faces.push_back({a, b, c});
        m.faces.push_back({a, c, d});
      }
  label_components(m, "sheet ");
  auto ce = generic_cusp_edges(D, G, grid, radius);
  auto si = generic_self_intersections(D, G, grid, radius);
  m.features.insert(m.features.end(), ce.begin(), ce.end());
  m.features.insert(m.features.end(), si.begin(), si.end());
  return m;
}

std::vector<Feature> generic_features(const GenericSource& src, const GridSpec& grid, FeatureKind kind) {
  grid.validate();
  Derivs D(src);
  Mesh scratch;
  GenericGrid G = sample_generic(D, grid, scratch);
  double radius = match_radius(grid);
  return kind == FeatureKind::CuspEdge ? generic_cusp_edges(D, G, grid, radius) : generic_self_intersections(D, G, grid, radius);
}

// ---------------------------------------------------------------- degenerate chart

DegenChart::DegenChart(const DegenNormalForm& nf, double p, double q)
    : b_(to_double(nf.b)), c_(to_double(nf.c)), d_(to_double(nf.d)), e_(to_double(nf.e)), p_(p), q_(q) {
  ConeInfo ci = cone_regime(nf);
  regime_ = ci.regime;
  if (ci.k) k_ = to_double(*ci.k);
}

std::string DegenChart::param_names() const {
  switch (regime_) {
    case ConeRegime::ParamX1S2: return "x1,s2";
    case ConeRegime::ParamX2S2: return "x2,s2";
    case ConeRegime::RealCone: return "x1,s1";
    default: return "x1,x2";
  }
}

std::optional<std::array<double, 3>> DegenChart::point(double a, double b, int branch) const {
  double sg = branch == 0 ? 1 : -1;
  double x1 = 0, x2 = 0, s1 = 0, s2 = 0;
  switch (regime_) {
    case ConeRegime::PointOnly:
    case ConeRegime::ParamX1X2: {
      x1 = a;
      x2 = b;
      double r = (-p_ - x1 * x1 - b_ * x2 * x2) / k_;
      if (r < 0) return std::nullopt;
      if (r == 0 && branch == 1) return std::nullopt;
      s2 = sg * std::sqrt(r);
      break;
    }
    case ConeRegime::ParamX1S2: {
      x1 = a;
      s2 = b;
      double r = (-p_ - x1 * x1 - k_ * s2 * s2) / b_;
      if (r < 0 || (r == 0 && branch == 1)) return std::nullopt;
      x2 = sg * std::sqrt(r);
      break;
    }
    case ConeRegime::ParamX2S2: {
      x2 = a;
      s2 = b;
      double r = -p_ - b_ * x2 * x2 - k_ * s2 * s2;
      if (r < 0 || (r == 0 && branch == 1)) return std::nullopt;
      x1 = sg * std::sqrt(r);
      break;
    }
    case ConeRegime::RealCone: {
      x1 = a;
      s1 = b;
      double A = 3 * e_ - 1, disc = d_ * d_ * s1 * s1 - A * (x1 * x1 + p_);
      if (disc < 0 || (disc == 0 && branch == 1)) return std::nullopt;
      s2 = (-d_ * s1 + sg * std::sqrt(disc)) / A;
      return std::array<double, 3>{s1, s2, x1 - s2};
    }
  }
  s1 = x2 - d_ / b_ * s2;
  return std::array<double, 3>{s1, s2, x1 - s2};
}

std::pair<std::array<double, 2>, int> DegenChart::params_of(const std::array<double, 3>& s) const {
  double s1 = s[0], s2 = s[1], u2 = s[2];
  double x1 = s2 + u2;
  if (regime_ == ConeRegime::RealCone) return {{x1, s1}, (3 * e_ - 1) * s2 + d_ * s1 >= 0 ? 0 : 1};
  double x2 = s1 + d_ / b_ * s2;
  switch (regime_) {
    case ConeRegime::ParamX1S2: return {{x1, s2}, x2 >= 0 ? 0 : 1};
    case ConeRegime::ParamX2S2: return {{x2, s2}, x1 >= 0 ? 0 : 1};
    default: return {{x1, x2}, s2 >= 0 ? 0 : 1};
  }
}

double DegenChart::u1(double s1, double s2, double u2) const {
  return -2 * b_ * s1 * s2 - 2 * c_ * s1 * u2 - d_ * s2 * s2 - 3 * s1 * s1 - 4 * s1 * s1 * s1 - 2 * q_ * s1;
}

double DegenChart::h(double s1, double s2, double u1, double u2) const {
  return s1 * u1 + s1 * s1 * s1 + s2 * s2 * u2 + s2 * u2 * u2 + b_ * s1 * s1 * s2 + c_ * s1 * s1 * u2 + d_ * s1 * s2 * s2 +
         e_ * s2 * s2 * s2 + s1 * s1 * s1 * s1 + p_ * s2 + q_ * s1 * s1;
}

Vec3 DegenChart::image(const std::array<double, 3>& s) const {
  double v = u1(s[0], s[1], s[2]);
  return {v, s[2], h(s[0], s[1], v, s[2])};
}

double DegenChart::hessian_det(const std::array<double, 3>& s) const {
  double s1 = s[0], s2 = s[1], u2 = s[2];
  double a = 6 * s1 + 2 * b_ * s2 + 2 * c_ * u2 + 12 * s1 * s1 + 2 * q_;
  double c = 2 * u2 + 6 * e_ * s2 + 2 * d_ * s1;
  double b = 2 * b_ * s1 + 2 * d_ * s2;
  return a * c - b * b;
}

double DegenChart::cone_residual(const std::array<double, 3>& s) const {
  double s1 = s[0], s2 = s[1], u2 = s[2];
  return 2 * s2 * u2 + u2 * u2 + b_ * s1 * s1 + 2 * d_ * s1 * s2 + 3 * e_ * s2 * s2 + p_;
}

namespace {

double dist_to_box(const Box2& b, double x, double y) { return std::min({x - b.x0, b.x1 - x, y - b.y0, b.y1 - y}); }

std::string classify_end(const Box2& box, const VectorXd& x, const std::string& reason, double step, bool axis_edge) {
  if (reason == "closed" || reason == "singular" || reason == "limit") return reason;
  if (axis_edge && x[0] - box.x0 < 1.5 * step) return "axis";
  if (dist_to_box(box, x[0], x[1]) < 1.5 * step) return "window";
  return "domain";
}

// numeric L(k0) with p, q fixed: terms in (y1, z)
struct PlanarPoly {
  std::vector<std::tuple<int, int, double>> terms;
  double scale = 1;
  double operator()(double y, double z) const {
    double s = 0;
    for (const auto& [i, j, c] : terms) s += c * std::pow(y, i) * std::pow(z, j);
    return s / scale;
  }
  Eigen::Vector2d grad(double y, double z) const {
    Eigen::Vector2d g(0, 0);
    for (const auto& [i, j, c] : terms) {
      if (i > 0) g[0] += c * i * std::pow(y, i - 1) * std::pow(z, j);
      if (j > 0) g[1] += c * j * std::pow(y, i) * std::pow(z, j - 1);
    }
    return g / scale;
  }
};

PlanarPoly numeric_L(const LPoly& L, const CertifiedRoot& k0, double p, double q) {
  std::map<std::pair<int, int>, double> acc;
  for (const auto& [m, c] : L.terms()) {
    double v = c.value_at(k0) * std::pow(p, m[2]) * std::pow(q, m[3]);
    acc[{m[0], m[1]}] += v;
  }
  PlanarPoly out;
  double mx = 0;
  for (const auto& [e, c] : acc)
    if (c != 0) {
      out.terms.emplace_back(e.first, e.second, c);
      mx = std::max(mx, std::abs(c));
    }
  out.scale = mx > 0 ? mx : 1;
  return out;
}

constexpr int kLOrder = 64;

}  // namespace

std::vector<Feature> degen_features(const DegenNormalForm& nf, double p, double q, const GridSpec& grid, FeatureKind kind) {
  grid.validate();
  DegenChart chart(nf, p, q);
  std::vector<Feature> out;
  // unfoldings whose own length scale is below the tracing step are treated like the vertex
  auto unresolved = [&](double step) { return std::max(std::sqrt(std::abs(p)), std::abs(q)) < step; };
  if (kind == FeatureKind::CuspEdge) {
    Box2 box{grid.lo1, grid.hi1, grid.lo2, grid.hi2};
    double step = 0.5 * std::min((grid.hi1 - grid.lo1) / (grid.n1 - 1), (grid.hi2 - grid.lo2) / (grid.n2 - 1));
    const bool at_vertex = p == 0 || unresolved(step);
    double r0 = 3 * step;
    for (int br = 0; br < 2; ++br) {
      auto f = [&](double a, double b) {
        auto s = chart.point(a, b, br);
        return s ? chart.hessian_det(*s) : std::nan("");
      };
      auto domain = [&](double a, double b) { return chart.point(a, b, br).has_value() && !(at_vertex && std::hypot(a, b) < r0); };
      for (auto& c : trace_planar(f, {}, box, grid.n1, grid.n2, domain)) {
        Feature ft;
        ft.kind = kind;
        ft.branch = br;
        ft.closed = c.closed;
        ft.closure_residual = c.closure_residual;
        ft.end_first = classify_end(box, c.points.front(), c.end_first, step, false);
        ft.end_last = classify_end(box, c.points.back(), c.end_last, step, false);
        if (at_vertex && std::hypot(c.points.front()[0], c.points.front()[1]) < r0 + 2 * step) ft.end_first = "origin";
        if (at_vertex && std::hypot(c.points.back()[0], c.points.back()[1]) < r0 + 2 * step) ft.end_last = "origin";
        for (const auto& x : c.points) {
          auto s = chart.point(x[0], x[1], br);
          if (!s) continue;
          Vec3 img = chart.image(*s);
          ft.points.push_back(img);
          ft.source.push_back({x[0], x[1], (*s)[0], (*s)[1], img[0], (*s)[2]});
        }
        if (ft.points.size() >= 2) out.push_back(std::move(ft));
      }
    }
    // pieces meeting where the two branches join
    bool merged = true;
    while (merged) {
      merged = false;
      for (std::size_t i = 0; i < out.size() && !merged; ++i)
        for (std::size_t j = i + 1; j < out.size() && !merged; ++j) {
          Feature &A = out[i], &B = out[j];
          if (A.closed || B.closed || A.branch == B.branch) continue;
          auto pa = [&](const Feature& f, bool last) {
            const auto& s = last ? f.source.back() : f.source.front();
            return std::array<double, 2>{s[0], s[1]};
          };
          for (int ea = 0; ea < 2 && !merged; ++ea)
            for (int eb = 0; eb < 2 && !merged; ++eb) {
              const std::string& ra = ea ? A.end_last : A.end_first;
              const std::string& rb = eb ? B.end_last : B.end_first;
              if (ra != "domain" || rb != "domain") continue;
              auto x = pa(A, ea), y = pa(B, eb);
              if (std::hypot(x[0] - y[0], x[1] - y[1]) > 3 * step) continue;
              Feature a = A, b = B;
              if (!ea) {
                std::reverse(a.points.begin(), a.points.end());
                std::reverse(a.source.begin(), a.source.end());
                std::swap(a.end_first, a.end_last);
              }
              if (eb) {
                std::reverse(b.points.begin(), b.points.end());
                std::reverse(b.source.begin(), b.source.end());
                std::swap(b.end_first, b.end_last);
              }
              a.points.insert(a.points.end(), b.points.begin(), b.points.end());
              a.source.insert(a.source.end(), b.source.begin(), b.source.end());
              a.end_last = b.end_last;
              a.branch = -1;
              out[i] = std::move(a);
              out.erase(out.begin() + static_cast<long>(j));
              merged = true;
            }
        }
    }
    for (auto& f : out)
      if (f.branch == -1 && f.end_first == "domain" && f.end_last == "domain" &&
          std::hypot(f.source.front()[0] - f.source.back()[0], f.source.front()[1] - f.source.back()[1]) < 3 * step) {
        f.closed = true;
        f.end_first = f.end_last = "closed";
      }
    return out;
  }

  // self-intersections: zero set of L(k0) in the half-plane y1 >= 0
  SheetInfo sheets = sheet_count(nf);
  SIChain chain = si_chain(nf);
  NumPoly x2n(chain.x2_num), x2d(chain.x2_den), u2n(chain.u2_num), u2d(chain.u2_den);
  double w = grid.si_window;
  Box2 box{0, w, -w, w};
  int n = std::max(grid.n1, grid.n2);
  double step = 0.5 * w / (n - 1);
  double r0 = 3 * step;
  const bool at_vertex = (p == 0 && q == 0) || unresolved(step);
  double bb = to_double(nf.b), dd = to_double(nf.d), ee = to_double(nf.e);
  for (std::size_t ri = 0; ri < sheets.roots.size(); ++ri) {
    const CertifiedRoot& k0 = sheets.roots[ri];
    LPoly L = compute_L(chain, nf, k0, kLOrder);
    PlanarPoly f = numeric_L(L, k0, p, q);
    double kv = k0.value();
    auto domain = [&](double y, double z) { return !(at_vertex && std::hypot(y, z) < r0); };
    auto curves = trace_planar([&](double y, double z) { return f(y, z); }, [&](double y, double z) { return f.grad(y, z); }, box, n,
                               2 * n - 1, domain);
    for (auto& c : curves) {
      Feature ft;
      ft.kind = kind;
      ft.branch = static_cast<int>(ri);
      ft.label = "k0=" + fmt17(kv);
      ft.closed = c.closed;
      ft.closure_residual = c.closure_residual;
      ft.end_first = classify_end(box, c.points.front(), c.end_first, step, true);
      ft.end_last = classify_end(box, c.points.back(), c.end_last, step, true);
      if (at_vertex) {
        if (std::hypot(c.points.front()[0], c.points.front()[1]) < r0 + 2 * step) ft.end_first = "origin";
        if (std::hypot(c.points.back()[0], c.points.back()[1]) < r0 + 2 * step) ft.end_last = "origin";
      }
      for (const auto& x : c.points) {
        double y1 = x[0], z = x[1];
        if (std::abs(y1) < 1e-12) continue;
        double k = kv + z, y2 = k * y1;
        double x1 = -(ee * k * k * k + dd * k * k + bb * k + 1) / 4;
        std::vector<double> v{x1, y1, 0, y2, 0, p, q, k};
        double den = x2d(v);
        if (den == 0) continue;
        double x2 = x2n(v) / den;
        v[2] = x2;
        double uden = u2d(v);
        if (uden == 0) continue;
        double u2 = u2n(v) / uden;
        std::array<double, 3> s{x1 + y1, x2 + y2, u2}, t{x1 - y1, x2 - y2, u2};
        Vec3 img = chart.image(s);
        ft.points.push_back(img);
        ft.source.push_back({y1, z, s[0], s[1], t[0], t[1], img[0], u2});
        (void)t;
      }
      if (ft.points.size() >= 2) out.push_back(std::move(ft));
    }
  }
  return out;
}

Mesh extract_degen(const DegenNormalForm& nf, double p, double q, const GridSpec& grid) {
  grid.validate();
  DegenChart chart(nf, p, q);
  Mesh m;
  for (int br = 0; br < 2; ++br) {
    std::vector<int> id(static_cast<std::size_t>(grid.n1) * grid.n2, -1);
    for (int i = 0; i < grid.n1; ++i)
      for (int j = 0; j < grid.n2; ++j) {
        double a = grid_val(grid.lo1, grid.hi1, grid.n1, i), b = grid_val(grid.lo2, grid.hi2, grid.n2, j);
        auto s = chart.point(a, b, br);
        if (!s) continue;
        Vec3 img = chart.image(*s);
        id[static_cast<std::size_t>(i) * grid.n2 + j] = static_cast<int>(m.vertices.size());
        m.vertices.push_back(img);
        m.vertex_source.push_back({(*s)[0], (*s)[1], img[0], (*s)[2]});
      }
    std::size_t before = m.faces.size();
    for (int i = 0; i + 1 < grid.n1; ++i)
      for (int j = 0; j + 1 < grid.n2; ++j) {
        int a = id[static_cast<std::size_t>(i) * grid.n2 + j], b = id[static_cast<std::size_t>(i + 1) * grid.n2 + j];
        int c = id[static_cast<std::size_t>(i + 1) * grid.n2 + j + 1], d = id[static_cast<std::size_t>(i) * grid.n2 + j + 1];
        if (a < 0 || b < 0 || c < 0 || d < 0) continue;
        m.faces.push_back({a, b, c});
        m.faces.push_back({a, c, d});
      }
    m.face_component.resize(m.faces.size(), static_cast<int>(m.component_names.size()));
    if (m.faces.size() > before || br == 0) m.component_names.push_back("branch " + std::to_string(br));
  }
  auto ce = degen_features(nf, p, q, grid, FeatureKind::CuspEdge);
  m.features.insert(m.features.end(), ce.begin(), ce.end());
  if (sgn(nf.e) != 0 && !is_zero(sheet_discriminant(nf))) {
    auto si = degen_features(nf, p, q, grid, FeatureKind::SelfIntersection);
    m.features.insert(m.features.end(), si.begin(), si.end());
  }
  return m;
}

OriginCounts origin_feature_counts(const DegenNormalForm& nf, double radius, int samples, double angle_tol) {
  OriginCounts out;
  out.radius = radius;
  DegenChart chart(nf, 0, 0);
  for (int br = 0; br < 2; ++br) {
    auto f = [&](double a, double b) {
      auto s = chart.point(a, b, br);
      return s ? chart.hessian_det(*s) : std::nan("");
    };
    out.cusp_rays += static_cast<int>(circle_crossings(f, 0, 0, radius, samples, angle_tol).size());
  }
  out.cusp_edges = out.cusp_rays / 2;
  SheetInfo sheets = sheet_count(nf);
  SIChain chain = si_chain(nf);
  for (const auto& k0 : sheets.roots) {
    LPoly L = compute_L(chain, nf, k0, kLOrder);
    PlanarPoly l0 = numeric_L(L, k0, 0, 0);
    int rays = static_cast<int>(circle_crossings([&](double y, double z) { return l0(y, z); }, 0, 0, radius, samples, angle_tol).size());
    out.si_rays += rays;
    out.self_intersections += rays / 4;
  }
  return out;
}

// ---------------------------------------------------------------- export

void write_obj(std::ostream& os, const Mesh& m) {
  os << "# equidist mesh: " << m.vertices.size() << " vertices, " << m.faces.size() << " faces\n";
  for (const auto& v : m.vertices) os << "v " << fmt17(v[0]) << ' ' << fmt17(v[1]) << ' ' << fmt17(v[2]) << '\n';
  for (std::size_t c = 0; c < m.component_names.size(); ++c) {
    std::string name = m.component_names[c];
    std::replace(name.begin(), name.end(), ' ', '_');
    os << "o " << name << '\n';
    for (std::size_t f = 0; f < m.faces.size(); ++f)
      if (m.face_component[f] == static_cast<int>(c))
        os << "f " << m.faces[f][0] + 1 << ' ' << m.faces[f][1] + 1 << ' ' << m.faces[f][2] + 1 << '\n';
  }
}

void write_feature_csv(std::ostream& os, const Mesh& m, FeatureKind kind) {
  os << "# feature=" << feature_kind_name(kind) << "\n";
  os << "x,y,z\n";
  bool first = true;
  for (const auto& f : m.features) {
    if (f.kind != kind) continue;
    if (!first) os << '\n';
    first = false;
    for (const auto& p : f.points) os << fmt17(p[0]) << ',' << fmt17(p[1]) << ',' << fmt17(p[2]) << '\n';
  }
}

}  // namespace equidist
