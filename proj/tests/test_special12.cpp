#include <cmath>
#include <numbers>

#include "doctest.h"
#include "equidist/special12.hpp"
#include "equidist/sweep.hpp"
#include "support.hpp"

using namespace equidist;

namespace {

// tangency of 3 s^2 + 8 s + 2 q = 0 with the quartic, solved by hand
double oracle_locus(double q) {
  double s = (-4 + std::sqrt(16 - 6 * q)) / 3;
  return s * s * (9 * s * s + 32 * s + 12 * q) / 4;
}

bool arc_crosses_loci(double p0, double q0, double p1, double q1) {
  auto sgn = [](double x) { return (x > 0) - (x < 0); };
  if (sgn(p0) != sgn(p1)) return true;
  if (sgn(p0 - oracle_locus(q0)) != sgn(p1 - oracle_locus(q1))) return true;
  if ((q0 >= 0 || q1 >= 0) && sgn(p0 + q0 * q0) != sgn(p1 + q1 * q1)) return true;
  return false;
}

}  // namespace

TEST_SUITE("special12") {
  TEST_CASE("family core jet at p = q = 0") {
    SpecialFamily f;
    double s1 = 0.3, s2 = -0.7, u1 = 0.2, u2 = 1.1;
    double core = s1 * s1 + s2 * s2 * u2 + s2 * u1 * u1 + std::pow(s2, 4) + std::pow(s2, 3) * u1;
    CHECK(f.h(s1, s2, u1, u2) == doctest::Approx(core).epsilon(1e-15));
    f.sign_s1 = -1;
    CHECK(f.h(s1, s2, u1, u2) == doctest::Approx(core - 2 * s1 * s1).epsilon(1e-15));
  }

  TEST_CASE("critical u2 zeroes h_s2") {
    for (int k = 0; k < 200; ++k) {
      SpecialFamily f{1, testing_support::randint(-100, 100) / 1000.0, testing_support::randint(-100, 100) / 1000.0};
      double s2 = testing_support::randint(1, 100) / 50.0 * (k % 2 ? 1 : -1);
      double u1 = testing_support::randint(-100, 100) / 25.0;
      CHECK(std::abs(f.h_s2(s2, u1, f.u2_of(s2, u1))) < 1e-12);
    }
  }

  TEST_CASE("cusp locus examples") {
    CHECK(cusp_locus_p(0) == 0);
    for (double q : {1e-3, -1e-3, 0.05, -0.2, 0.7, 1.0})
      CHECK(cusp_locus_p(from_double(q)) == doctest::Approx(oracle_locus(q)).epsilon(1e-12));
    double q = 1e-3;
    CHECK(cusp_locus_p(from_double(q)) / (q * q * q) == doctest::Approx(1.0 / 16).epsilon(1e-3));
    CHECK_THROWS_AS(cusp_locus(0, 1, 1), std::invalid_argument);
    auto pts = cusp_locus(-2, 2, 9);
    for (const auto& pt : pts) CHECK(std::abs(pt.q) <= 1);
    CHECK(pts.size() == 5);
  }

  TEST_CASE("cusp locus series fit") {
    auto fit = fit_cusp_series(1e-3, 1e-2, 32);
    CHECK(fit.rel_err3 < 1e-6);
    CHECK(fit.rel_err4 < 1e-6);
  }

  TEST_CASE("self-intersection locus") {
    auto one = selfint_locus(1, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].p == -1);
    CHECK(selfint_locus(-1, -1).empty());
    auto zero = selfint_locus(0, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].p == 0);
    for (const auto& pt : selfint_locus(-0.5, 0.9, 40)) {
      CHECK(pt.q >= 0);
      CHECK(pt.p == -pt.q * pt.q);
    }
  }

  TEST_CASE("self-intersection pairs are double points") {
    for (int k = 0; k < 100; ++k) {
      SpecialFamily f{1, testing_support::randint(-50, 50) / 1000.0, testing_support::randint(-50, 50) / 1000.0};
      for (const auto& [a, b] : selfint_intervals(f, 1)) {
        double v1 = a + (b - a) * 0.37;
        auto pr = selfint_pair(f, v1);
        REQUIRE(pr.has_value());
        CHECK(std::abs(f.h_s2(pr->s21, pr->u1, pr->u2)) < 1e-10);
        CHECK(std::abs(f.h_s2(pr->s22, pr->u1, pr->u2)) < 1e-10);
        CHECK(f.h(0, pr->s21, pr->u1, pr->u2) == doctest::Approx(f.h(0, pr->s22, pr->u1, pr->u2)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("at p = -q^2 the pair at v1 = 0 is symmetric") {
    for (double q : {0.01, 0.2, 0.9}) {
      SpecialFamily f{1, -q * q, q};
      // p + q^2 must vanish exactly for the double root to sit at v1 = 0
      if (f.p + f.q * f.q != 0) continue;
      auto pr = selfint_pair(f, 0.0);
      REQUIRE(pr.has_value());
      CHECK(pr->s22 == doctest::Approx(-pr->s21).epsilon(1e-15));
      CHECK(pr->v2 * pr->v2 == doctest::Approx(2 * q).epsilon(1e-14));
    }
    SpecialFamily neg{1, -0.25, -0.5};
    CHECK_FALSE(selfint_pair(neg, 0.0).has_value());
  }

  TEST_CASE("mesh is nonempty for p > 0, q = 0") {
    SpecialFamily f{1, 0.01, 0};
    Mesh m = evaluate_special(f, special_default_grid());
    CHECK_FALSE(m.empty());
    CHECK(m.faces.size() > 0);
    for (std::size_t i = 0; i < m.vertices.size(); i += 37) {
      const auto& s = m.vertex_source[i];
      CHECK(std::abs(f.h_s2(s[1], s[2], s[3])) < 1e-9);
    }
  }

  TEST_CASE("cusp features satisfy the Hessian condition") {
    SpecialFamily f{1, 0.004, -0.03};
    Mesh m = evaluate_special(f, special_default_grid());
    REQUIRE(m.count(FeatureKind::CuspEdge) > 0);
    for (const auto& ft : m.features) {
      if (ft.kind != FeatureKind::CuspEdge) continue;
      for (const auto& s : ft.source) {
        if (std::abs(s[1]) < 0.05) continue;
        CHECK(std::abs(f.h_s2(s[1], s[2], s[3])) < 1e-9);
        CHECK(std::abs(f.h_s2s2(s[1], s[2], s[3])) < 1e-6);
      }
    }
  }

  TEST_CASE("traced cusp components match the interval count off the loci") {
    for (double r : {1e-2, 0.1}) {
      for (int k = 0; k < 48; ++k) {
        double th = (k + 0.5) * 2 * std::numbers::pi / 48;
        SpecialFamily f{1, r * std::cos(th), r * std::sin(th)};
        Mesh m = evaluate_special(f, special_default_grid());
        CHECK(m.count(FeatureKind::CuspEdge) == cusp_interval_count(f));
      }
    }
  }

  TEST_CASE("interval structure changes only across the loci") {
    const int n = 48;
    const double r = 1e-2;
    std::vector<std::pair<double, double>> pq;
    std::vector<int> cusp, si;
    for (int k = 0; k < n; ++k) {
      double th = (k + 0.5) * 2 * std::numbers::pi / n;
      SpecialFamily f{1, r * std::cos(th), r * std::sin(th)};
      pq.emplace_back(f.p, f.q);
      Mesh m = evaluate_special(f, special_default_grid());
      cusp.push_back(m.count(FeatureKind::CuspEdge));
      si.push_back(m.count(FeatureKind::SelfIntersection));
    }
    for (int k = 0; k < n; ++k) {
      int j = (k + 1) % n;
      if (cusp[k] != cusp[j] || si[k] != si[j]) {
        INFO("arc " << k << " -> " << j);
        CHECK(arc_crosses_loci(pq[k].first, pq[k].second, pq[j].first, pq[j].second));
      }
    }
  }

  TEST_CASE("twelve-sample clock through the sweep driver") {
    SweepConfig cfg;
    cfg.special = SpecialFamily{};
    cfg.radius = 1e-2;
    cfg.samples = 12;
    cfg.phase = std::numbers::pi / 12;
    cfg.grid = special_default_grid();
    auto res = sweep(cfg);
    REQUIRE(res.samples.size() == 12);
    for (const auto& t : res.transitions) {
      const auto &a = res.samples[t.from], &b = res.samples[t.to];
      CHECK(arc_crosses_loci(a.p, a.q, b.p, b.q));
    }
  }

  TEST_CASE("loci output") {
    auto loci = plane_loci(-1, 1, 21);
    std::string svg = loci_svg(loci);
    CHECK(svg.find("id=\"cusp-locus\"") != std::string::npos);
    CHECK(svg.find("id=\"selfint-locus\"") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    std::string csv = loci_csv(loci);
    CHECK(csv.rfind("locus,q,p\n", 0) == 0);
    CHECK(csv.find("selfint,1,-1\n") != std::string::npos);
    CHECK(csv == loci_csv(plane_loci(-1, 1, 21)));
  }
}
