#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace equidist {

// A curve given as the zero set of G: R^n -> R^(n-1).
struct CurveSystem {
  int n = 2;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> g;
  // (n-1) x n; central differences when empty
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac;
  // window and domain; tracing stops on leaving it
  std::function<bool(const Eigen::VectorXd&)> inside;

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
};

struct TraceOptions {
  double step = 1e-2;
  double tol = 1e-12;
  int max_points = 20000;
  int max_halvings = 10;
  double max_turn_cos = 0.9;  // reject steps turning by more than ~25 degrees
};

struct TracedCurve {
  std::vector<Eigen::VectorXd> points;
  bool closed = false;
  double closure_residual = 0;  // distance between the start and the re-found start
  // end reasons for the two ends: "window", "singular", "closed", "limit"
  std::string end_first, end_last;
};

// Newton with minimum-norm steps onto G = 0.
std::optional<Eigen::VectorXd> correct(const CurveSystem& sys, const Eigen::VectorXd& x0, double tol = 1e-12, int iters = 30);
// Unit tangent (null vector of the Jacobian).
Eigen::VectorXd tangent(const CurveSystem& sys, const Eigen::VectorXd& x);

TracedCurve trace_from(const CurveSystem& sys, const Eigen::VectorXd& seed, const TraceOptions& opt);
// Seeds lying within one step of an already traced curve are skipped.
std::vector<TracedCurve> trace_all(const CurveSystem& sys, const std::vector<Eigen::VectorXd>& seeds, const TraceOptions& opt);

struct Box2 {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

using Planar = std::function<double(double, double)>;
using PlanarGrad = std::function<Eigen::Vector2d(double, double)>;

// Zero set of f inside the box (and inside `domain` when given). Seeds come from sign
// changes along the edges of an nx x ny grid.
std::vector<TracedCurve> trace_planar(const Planar& f, const PlanarGrad& grad, const Box2& box, int nx, int ny,
                                      const std::function<bool(double, double)>& domain = {},
                                      std::optional<TraceOptions> opt = std::nullopt);

// Sign changes of f on the circle of radius r about (cx, cy); each crossing is bisected
// in angle down to `angle_tol`. An exact zero is read as positive;
// NaN samples (outside a domain) break the circle into arcs.
std::vector<double> circle_crossings(const Planar& f, double cx, double cy, double r, int samples = 720, double angle_tol = 1e-6);

}  // namespace equidist
