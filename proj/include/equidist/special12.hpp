#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equidist/mesh.hpp"
#include "equidist/rational.hpp"
#include "equidist/uni_poly.hpp"

namespace equidist {

// +-s1^2 + s2^2 u2 + s2 u1^2 + s2^4 + s2^3 u1 + p s2 + q s2^3
struct SpecialFamily {
  int sign_s1 = 1;
  double p = 0, q = 0;
  double h(double s1, double s2, double u1, double u2) const;
  double h_s2(double s2, double u1, double u2) const;
  double h_s2s2(double s2, double u1, double u2) const;
  // critical u2 for s2 != 0
  double u2_of(double s2, double u1) const;
};

struct LocusPoint {
  double q, p;
};

struct PlaneLoci {
  std::vector<LocusPoint> cusp_branch;  // the curved branch p(q)
  std::vector<LocusPoint> cusp_axis;    // p = 0
  std::vector<LocusPoint> selfint_branch;
};

// |q| <= 1 is enforced; samples outside are dropped.
constexpr double kSpecialQLimit = 1.0;

// 9 s2^4 + 32 s2^3 + 12 q s2^2 - 4 p
UniPoly cusp_quartic(const Rational& p, const Rational& q);
// Discriminant-type eliminant in p: Res_s2(quartic, d/ds2 quartic).
UniPoly cusp_eliminant(const Rational& q);
// The nonzero root of the eliminant nearest 0 (0 when q = 0), certified and rounded.
double cusp_locus_p(const Rational& q, int bits = 200);

std::vector<LocusPoint> cusp_locus(double qlo, double qhi, int n);
std::vector<LocusPoint> selfint_locus(double qlo, double qhi, int n = 101);
PlaneLoci plane_loci(double qlo, double qhi, int n);

struct SeriesFit {
  double c3 = 0, c4 = 0;
  double rel_err3 = 0, rel_err4 = 0;  // against 1/16 and 9/1024
  int samples = 0;
};
// Least squares of p/q^3 on {1, q, q^2, q^3} over log-spaced q in [qlo, qhi].
SeriesFit fit_cusp_series(double qlo = 1e-3, double qhi = 1e-2, int n = 32);

// Components of the cuspidal edge set in the (s2, u1) window |s2| <= w, read off the
// intervals where the quartic is >= 0.
int cusp_interval_count(const SpecialFamily& f, double w = 1.0);

// Self-intersection pairs: s21 = v1 + v2, s22 = v1 - v2 with
// v2^2 = (p + q^2 + 8 q v1 + 16 v1^2 + 4 v1^3) / (4 v1), u1 = -q - 4 v1.
struct SelfIntPair {
  double v1, v2, s21, s22, u1, u2;
  Vec3 image;
};
std::optional<SelfIntPair> selfint_pair(const SpecialFamily& f, double v1, int sign_v2 = 1);
// v1-intervals (within |v1| <= w) on which v1 (4 v1^3 + 16 v1^2 + 8 q v1 + p + q^2) >= 0
std::vector<std::pair<double, double>> selfint_intervals(const SpecialFamily& f, double w = 1.0);

// GridSpec ranges: (lo1, hi1) in s2, (lo2, hi2) in u1. Points with |s2| below one grid
// step are left out of the chart (u2 is solved by dividing by s2).
GridSpec special_default_grid();
Mesh evaluate_special(const SpecialFamily& f, const GridSpec& grid);

std::string loci_svg(const PlaneLoci& loci);
std::string loci_csv(const PlaneLoci& loci);

}  // namespace equidist
