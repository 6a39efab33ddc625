#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "equidist/classify.hpp"
#include "equidist/degen2.hpp"
#include "equidist/num_poly.hpp"
#include "equidist/surfaces.hpp"
#include "equidist/trace.hpp"

namespace equidist {

using Vec3 = std::array<double, 3>;

enum class FeatureKind { CuspEdge, SelfIntersection };
std::string feature_kind_name(FeatureKind k);

struct Feature {
  FeatureKind kind = FeatureKind::CuspEdge;
  std::vector<Vec3> points;                 // image points
  std::vector<std::vector<double>> source;  // parameters behind each point
  bool closed = false;
  double closure_residual = 0;
  int branch = -1;
  // ends on the window boundary, at a singular point, or on the y1-axis (self-intersections)
  std::string end_first, end_last;
  std::string label;
};

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<double>> vertex_source;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> face_component;
  std::vector<std::string> component_names;
  std::vector<Feature> features;

  bool empty() const { return vertices.empty() && features.empty(); }
  int count(FeatureKind k) const;
  // features of this kind ending on the window boundary (each open end counts)
  int window_crossings(FeatureKind k) const;
};

struct GridSpec {
  double lo1 = -1, hi1 = 1, lo2 = -1, hi2 = 1;  // the two surface parameters
  int n1 = 41, n2 = 41;
  int seeds = 9;          // multi-start lattice per axis for critical points
  double tol = 1e-9;      // residual bound on emitted vertices
  double s_box = 2;       // |s1|, |s2| search box for generic continuation
  double si_window = 0.5; // half-width of the (y1, z) window for self-intersections
  void validate() const;  // throws std::invalid_argument
  GridSpec refined() const;
};

// ---------------------------------------------------------------- generic continuation

// h in variables (s1, s2, u1, u2, extra...), with the extras fixed.
struct GenericSource {
  NumPoly h;
  std::vector<double> extra;
  std::string label;
};

// s1^2 + s2^3 + a s2 u1^2 + c s2 u2^2 + eps s2 with (a, c) = (+,+), (-,-), (+,-).
GenericSource generic_normal_form(Subcase s, double eps);
GenericSource family_source(const FamilyJet& f, double eps, double alpha);
GenericSource degenerate_source(const DegenNormalForm& nf, double p, double q);

Mesh extract_generic(const GenericSource& src, const GridSpec& grid);
std::vector<Feature> generic_features(const GenericSource& src, const GridSpec& grid, FeatureKind kind);

// Residuals of h_s1, h_s2 and the Hessian determinant at a source point (s1, s2, u1, u2).
std::array<double, 3> critical_residuals(const GenericSource& src, const std::vector<double>& s);

// ---------------------------------------------------------------- degenerate case

// Parametrization of {h_s1 = h_s2 = 0} by the regime's two parameters.
class DegenChart {
 public:
  DegenChart(const DegenNormalForm& nf, double p, double q);
  ConeRegime regime() const { return regime_; }
  std::string param_names() const;
  // (s1, s2, u2) on branch 0 or 1; nullopt outside the real part of the quadric
  std::optional<std::array<double, 3>> point(double a, double b, int branch) const;
  double u1(double s1, double s2, double u2) const;
  double h(double s1, double s2, double u1, double u2) const;
  Vec3 image(const std::array<double, 3>& s) const;
  // h_s1s1 h_s2s2 - h_s1s2^2
  double hessian_det(const std::array<double, 3>& s) const;
  double cone_residual(const std::array<double, 3>& s) const;  // h_s2 with u1 eliminated
  // the inverse: parameters and branch of a point on the quadric
  std::pair<std::array<double, 2>, int> params_of(const std::array<double, 3>& s) const;
  double p() const { return p_; }
  double q() const { return q_; }

 private:
  ConeRegime regime_;
  double b_, c_, d_, e_, k_ = 0, p_, q_;
};

Mesh extract_degen(const DegenNormalForm& nf, double p, double q, const GridSpec& grid);
std::vector<Feature> degen_features(const DegenNormalForm& nf, double p, double q, const GridSpec& grid, FeatureKind kind);

// Curves through the origin at p = q = 0, counted from sign changes on small circles:
// the Hessian determinant in the chart plane of each branch (two rays per cuspidal edge),
// and L0(k0) in the (y1, z) plane of each real sheet (four rays per self-intersection branch).
struct OriginCounts {
  int cusp_edges = 0, self_intersections = 0;
  int cusp_rays = 0, si_rays = 0;
  double radius = 0;
};
OriginCounts origin_feature_counts(const DegenNormalForm& nf, double radius = 1e-3, int samples = 720, double angle_tol = 1e-6);

// ---------------------------------------------------------------- export

void write_obj(std::ostream& os, const Mesh& m);
void write_feature_csv(std::ostream& os, const Mesh& m, FeatureKind kind);
std::string fmt17(double x);

}  // namespace equidist
