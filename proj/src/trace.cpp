#include "equidist/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace equidist {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd CurveSystem::jacobian(const VectorXd& x) const {
  if (jac) return jac(x);
  MatrixXd J(n - 1, n);
  for (int i = 0; i < n; ++i) {
    double h = 1e-7 * std::max(1.0, std::abs(x[i]));
    VectorXd a = x, b = x;
    a[i] += h;
    b[i] -= h;
    J.col(i) = (g(a) - g(b)) / (2 * h);
  }
  return J;
}

namespace {

bool finite(const VectorXd& v) { return v.allFinite(); }

// Newton on [G(y); t.(y - anchor)] = 0.
std::optional<VectorXd> newton_plane(const CurveSystem& sys, VectorXd y, const VectorXd& t, const VectorXd& anchor, double tol,
                                     int iters = 30) {
  const int n = sys.n;
  for (int it = 0; it < iters; ++it) {
    VectorXd r(n);
    r.head(n - 1) = sys.g(y);
    r[n - 1] = t.dot(y - anchor);
    if (!finite(r)) return std::nullopt;
    if (r.norm() < tol) return y;
    MatrixXd A(n, n);
    A.topRows(n - 1) = sys.jacobian(y);
    A.row(n - 1) = t.transpose();
    Eigen::FullPivLU<MatrixXd> lu(A);
    if (!lu.isInvertible()) return std::nullopt;
    VectorXd dy = lu.solve(r);
    y -= dy;
    if (dy.norm() < 1e-13 * std::max(1.0, y.norm())) {
      VectorXd r2(n);
      r2.head(n - 1) = sys.g(y);
      r2[n - 1] = t.dot(y - anchor);
      if (r2.norm() < std::sqrt(tol)) return y;
    }
  }
  return std::nullopt;
}

struct Pass {
  std::vector<VectorXd> pts;
  bool closed = false;
  double residual = 0;
  std::string reason = "limit";
};

Pass march(const CurveSystem& sys, const VectorXd& x0, VectorXd t, const TraceOptions& opt, bool allow_close) {
  Pass out;
  VectorXd x = x0;
  const VectorXd t0 = t;
  double h = opt.step, traveled = 0;
  while (static_cast<int>(out.pts.size()) < opt.max_points) {
    if (allow_close && out.pts.size() >= 4 && traveled > 3 * opt.step && (x - x0).norm() < 1.2 * opt.step) {
      VectorXd guess = x + (x0 - x).dot(t0) * t0;
      auto y = newton_plane(sys, guess, t0, x0, opt.tol);
      // the other arm of a hairpin can pass this close; require the same direction too
      if (y && (*y - x0).norm() < 0.1 * opt.step && t.dot(t0) > 0.5) {
        out.closed = true;
        out.residual = (*y - x0).norm();
        out.pts.push_back(*y);
        out.reason = "closed";
        return out;
      }
    }
    bool ok = false;
    double ht = h;
    VectorXd y, tn;
    for (int k = 0; k <= opt.max_halvings; ++k, ht /= 2) {
      VectorXd xp = x + ht * t;
      auto c = newton_plane(sys, xp, t, xp, opt.tol);
      if (!c || (*c - x).norm() > 2 * ht || (*c - x).norm() < 0.25 * ht) continue;
      tn = tangent(sys, *c);
      if (tn.dot(t) < 0) tn = -tn;
      if (tn.dot(t) < opt.max_turn_cos) continue;
      y = *c;
      ok = true;
      break;
    }
    if (!ok) {
      out.reason = "singular";
      return out;
    }
    if (sys.inside && !sys.inside(y)) {
      out.reason = "window";
      return out;
    }
    traveled += (y - x).norm();
    out.pts.push_back(y);
    x = y;
    t = tn;
    h = std::min(opt.step, 2 * ht);
  }
  return out;
}

}  // namespace

std::optional<VectorXd> correct(const CurveSystem& sys, const VectorXd& x0, double tol, int iters) {
  VectorXd x = x0;
  for (int it = 0; it < iters; ++it) {
    VectorXd r = sys.g(x);
    if (!finite(r)) return std::nullopt;
    if (r.norm() < tol) return x;
    MatrixXd J = sys.jacobian(x);
    VectorXd dx = J.completeOrthogonalDecomposition().solve(r);
    if (!finite(dx)) return std::nullopt;
    // damp wild steps
    double s = 1;
    while (s > 1e-3 && sys.g(x - s * dx).norm() > r.norm()) s /= 2;
    x -= s * dx;
    if (s * dx.norm() < 1e-13 * std::max(1.0, x.norm()) && sys.g(x).norm() < std::sqrt(tol)) return x;
  }
  if (sys.g(x).norm() < std::sqrt(tol)) return x;
  return std::nullopt;
}

VectorXd tangent(const CurveSystem& sys, const VectorXd& x) {
  MatrixXd J = sys.jacobian(x);
  Eigen::JacobiSVD<MatrixXd> svd(J, Eigen::ComputeFullV);
  VectorXd t = svd.matrixV().col(sys.n - 1);
  return t / t.norm();
}

TracedCurve trace_from(const CurveSystem& sys, const VectorXd& seed, const TraceOptions& opt) {
  TracedCurve out;
  auto x = correct(sys, seed, opt.tol);
  if (!x) return out;
  if (sys.inside && !sys.inside(*x)) return out;
  VectorXd t = tangent(sys, *x);
  Pass fwd = march(sys, *x, t, opt, true);
  if (fwd.closed) {
    out.points.push_back(*x);
    out.points.insert(out.points.end(), fwd.pts.begin(), fwd.pts.end());
    out.closed = true;
    out.closure_residual = fwd.residual;
    out.end_first = out.end_last = "closed";
    return out;
  }
  Pass back = march(sys, *x, -t, opt, false);
  out.points.assign(back.pts.rbegin(), back.pts.rend());
  out.points.push_back(*x);
  out.points.insert(out.points.end(), fwd.pts.begin(), fwd.pts.end());
  out.end_first = back.reason;
  out.end_last = fwd.reason;
  return out;
}

std::vector<TracedCurve> trace_all(const CurveSystem& sys, const std::vector<VectorXd>& seeds, const TraceOptions& opt) {
  std::vector<TracedCurve> out;
  auto near_traced = [&](const VectorXd& y) {
    for (const auto& c : out)
      for (const auto& p : c.points)
        if ((p - y).norm() < opt.step) return true;
    return false;
  };
  for (const auto& s : seeds) {
    auto y = correct(sys, s, opt.tol);
    if (!y || (sys.inside && !sys.inside(*y)) || near_traced(*y)) continue;
    TracedCurve c = trace_from(sys, *y, opt);
    if (c.points.size() >= 2) out.push_back(std::move(c));
  }
  // a curve cut short at a hard turn can be traced again in full from a later seed
  auto covered_by = [&](const TracedCurve& a, const TracedCurve& b) {
    for (const auto& x : a.points) {
      bool hit = false;
      for (const auto& y : b.points)
        if ((x - y).norm() < 0.6 * opt.step) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };
  std::vector<char> drop(out.size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size() && !drop[i]; ++j)
      if (i != j && !drop[j] && out[j].points.size() > out[i].points.size() && covered_by(out[i], out[j])) drop[i] = 1;
  std::vector<TracedCurve> kept;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(out[i]));
  return kept;
}

std::vector<TracedCurve> trace_planar(const Planar& f, const PlanarGrad& grad, const Box2& box, int nx, int ny,
                                      const std::function<bool(double, double)>& domain, std::optional<TraceOptions> opt) {
  double dx = (box.x1 - box.x0) / (nx - 1), dy = (box.y1 - box.y0) / (ny - 1);
  TraceOptions o = opt.value_or(TraceOptions{});
  if (!opt) o.step = 0.5 * std::min(dx, dy);

  CurveSystem sys;
  sys.n = 2;
  sys.g = [&](const VectorXd& x) {
    VectorXd r(1);
    r[0] = f(x[0], x[1]);
    return r;
  };
  if (grad)
    sys.jac = [&](const VectorXd& x) {
      MatrixXd J(1, 2);
      Eigen::Vector2d gr = grad(x[0], x[1]);
      J << gr[0], gr[1];
      return J;
    };
  sys.inside = [&](const VectorXd& x) { return box.contains(x[0], x[1]) && (!domain || domain(x[0], x[1])); };

  auto X = [&](int i) { return i == nx - 1 ? box.x1 : box.x0 + i * dx; };
  auto Y = [&](int j) { return j == ny - 1 ? box.y1 : box.y0 + j * dy; };
  std::vector<double> v(static_cast<std::size_t>(nx) * ny);
  std::vector<char> ok(v.size());
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      std::size_t k = static_cast<std::size_t>(i) * ny + j;
      ok[k] = !domain || domain(X(i), Y(j));
      v[k] = ok[k] ? f(X(i), Y(j)) : 0.0;
      if (!std::isfinite(v[k])) ok[k] = 0;
    }
  std::vector<VectorXd> seeds;
  auto edge = [&](int i0, int j0, int i1, int j1) {
    std::size_t a = static_cast<std::size_t>(i0) * ny + j0, b = static_cast<std::size_t>(i1) * ny + j1;
    if (!ok[a] || !ok[b] || ((v[a] >= 0) == (v[b] >= 0))) return;
    double xa = X(i0), ya = Y(j0), xb = X(i1), yb = Y(j1), fa = v[a];
    for (int it = 0; it < 50; ++it) {
      double xm = (xa + xb) / 2, ym = (ya + yb) / 2, fm = f(xm, ym);
      if ((fm >= 0) == (fa >= 0)) {
        xa = xm;
        ya = ym;
        fa = fm;
      } else {
        xb = xm;
        yb = ym;
      }
    }
    VectorXd s(2);
    s << (xa + xb) / 2, (ya + yb) / 2;
    seeds.push_back(s);
  };
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      if (i + 1 < nx) edge(i, j, i + 1, j);
      if (j + 1 < ny) edge(i, j, i, j + 1);
    }
  return trace_all(sys, seeds, o);
}

std::vector<double> circle_crossings(const Planar& f, double cx, double cy, double r, int samples, double angle_tol) {
  auto at = [&](double th) { return f(cx + r * std::cos(th), cy + r * std::sin(th)); };
  const double two_pi = 2 * std::numbers::pi;
  std::vector<double> out;
  double prev = at(0);
  for (int i = 1; i <= samples; ++i) {
    double a = two_pi * (i - 1) / samples, b = two_pi * i / samples;
    double cur = at(b);
    if (!std::isnan(prev) && !std::isnan(cur) && (prev >= 0) != (cur >= 0)) {
      double fa = prev;
      while (b - a > angle_tol) {
        double m = (a + b) / 2, fm = at(m);
        if (std::isnan(fm)) break;
        if ((fm >= 0) == (fa >= 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.push_back((a + b) / 2);
    }
    prev = cur;
  }
  return out;
}

}  // namespace equidist
