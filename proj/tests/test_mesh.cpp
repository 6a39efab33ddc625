#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "doctest.h"
#include "equidist/mesh.hpp"
#include "equidist/sweep.hpp"
#include "support.hpp"

using namespace equidist;

namespace {

DegenNormalForm nf_of(Rational b, Rational c, Rational d, Rational e) { return DegenNormalForm::from_coefficients(b, c, d, e); }

const Table1Row& row(const std::string& name) {
  for (const auto& r : table1_rows())
    if (r.name == name) return r;
  throw std::runtime_error("no row " + name);
}

DegenNormalForm row_nf(const std::string& name) {
  const auto& r = row(name);
  return nf_of(r.b, r.c, r.d, r.e);
}

int closed_count(const Mesh& m) {
  int n = 0;
  for (const auto& f : m.features) n += f.kind == FeatureKind::CuspEdge && f.closed;
  return n;
}

void check_vertex_residuals(const GenericSource& src, const Mesh& m, double tol) {
  for (const auto& s : m.vertex_source) {
    auto r = critical_residuals(src, s);
    CHECK(std::abs(r[0]) < tol);
    CHECK(std::abs(r[1]) < tol);
  }
}

void check_cusp_residuals(const GenericSource& src, const Mesh& m) {
  for (const auto& f : m.features) {
    if (f.kind != FeatureKind::CuspEdge) continue;
    for (const auto& s : f.source) {
      auto r = critical_residuals(src, {s[0], s[1], s[2], s[3]});
      CHECK(std::abs(r[0]) < 1e-9);
      CHECK(std::abs(r[1]) < 1e-9);
      CHECK(std::abs(r[2]) < 1e-6);
    }
  }
}

}  // namespace

TEST_SUITE("mesh") {
  TEST_CASE("grid validation") {
    GridSpec g;
    CHECK_NOTHROW(g.validate());
    g.n1 = 1;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = GridSpec{};
    g.tol = 0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = GridSpec{};
    g.hi2 = g.lo2;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    CHECK(GridSpec{}.refined().n1 == 81);
  }

  TEST_CASE("positive definite form, eps > 0 is empty") {
    Mesh m = extract_generic(generic_normal_form(Subcase::PosDef, 0.1), GridSpec{});
    CHECK(m.empty());
    CHECK(m.faces.empty());
  }

  TEST_CASE("definite forms with a compact cuspidal edge") {
    for (auto [sc, eps] : {std::pair{Subcase::PosDef, -0.1}, std::pair{Subcase::NegDef, 0.1}}) {
      auto src = generic_normal_form(sc, eps);
      Mesh m = extract_generic(src, GridSpec{});
      REQUIRE(m.count(FeatureKind::CuspEdge) == 1);
      CHECK(closed_count(m) == 1);
      for (const auto& f : m.features)
        if (f.kind == FeatureKind::CuspEdge) {
          CHECK(f.closure_residual < 1e-6);
          // image of s2 = 0, u1^2 + u2^2 = |eps|
          for (const auto& p : f.points) CHECK(std::hypot(p[0], p[1]) == doctest::Approx(std::sqrt(std::abs(eps))).epsilon(1e-6));
        }
      check_vertex_residuals(src, m, 1e-9);
      check_cusp_residuals(src, m);
    }
  }

  TEST_CASE("indefinite form has two cuspidal edges") {
    for (double eps : {0.1, -0.1}) {
      auto src = generic_normal_form(Subcase::Indef, eps);
      Mesh m = extract_generic(src, GridSpec{});
      CHECK(m.count(FeatureKind::CuspEdge) == 2);
      CHECK(closed_count(m) == 0);
      check_vertex_residuals(src, m, 1e-9);
      check_cusp_residuals(src, m);
    }
  }

  TEST_CASE("feature counts are stable under refinement") {
    for (auto [sc, eps] : {std::pair{Subcase::PosDef, -0.1}, std::pair{Subcase::Indef, 0.1}, std::pair{Subcase::NegDef, 0.1}}) {
      auto src = generic_normal_form(sc, eps);
      CHECK(generic_features(src, GridSpec{}, FeatureKind::CuspEdge).size() ==
            generic_features(src, GridSpec{}.refined(), FeatureKind::CuspEdge).size());
    }
    for (const char* name : {"II", "III", "VI"}) {
      auto nf = row_nf(name);
      for (auto kind : {FeatureKind::CuspEdge, FeatureKind::SelfIntersection}) {
        INFO(std::string(name) << ' ' << feature_kind_name(kind));
        CHECK(degen_features(nf, 0.02, 0.01, GridSpec{}, kind).size() == degen_features(nf, 0.02, 0.01, GridSpec{}.refined(), kind).size());
      }
    }
  }

  TEST_CASE("point-only cone collapses to the origin") {
    auto nf = nf_of(8, 4, -3, 1);
    DegenChart chart(nf, 0, 0);
    CHECK(chart.regime() == ConeRegime::PointOnly);
    Mesh m = extract_degen(nf, 0, 0, GridSpec{});
    REQUIRE(m.vertices.size() == 1);
    for (double x : m.vertices[0]) CHECK(x == 0);
    CHECK(m.faces.empty());
  }

  TEST_CASE("point-only cone: ellipsoid for one sign of p, empty for the other") {
    auto nf = nf_of(8, 4, -3, 1);
    const double b = 8;
    Mesh pos = extract_degen(nf, 0.05, 0, GridSpec{});
    CHECK(pos.vertices.empty());
    double p = -0.05;
    Mesh neg = extract_degen(nf, p, 0, GridSpec{});
    REQUIRE_FALSE(neg.vertices.empty());
    CHECK(neg.faces.size() > 0);
    DegenChart chart(nf, p, 0);
    for (const auto& s : neg.vertex_source) {
      auto [ab, br] = chart.params_of({s[0], s[1], s[3]});
      CHECK(ab[0] * ab[0] + b * ab[1] * ab[1] <= -p * (1 + 1e-12));
    }
  }

  TEST_CASE("hyperboloid regime gives two branches") {
    auto nf = nf_of(8, -4, -3, -1);
    DegenChart chart(nf, 0, 0);
    CHECK(chart.param_names() == "x1,x2");
    Mesh m = extract_degen(nf, 0, 0, GridSpec{});
    CHECK(m.component_names.size() == 2);
    std::set<int> comps(m.face_component.begin(), m.face_component.end());
    CHECK(comps.size() == 2);
    // every (x1, x2) != 0 carries two s2 values
    for (auto [a, bb] : {std::pair{0.3, 0.1}, std::pair{-0.2, 0.4}, std::pair{0.05, -0.5}}) {
      auto s0 = chart.point(a, bb, 0), s1 = chart.point(a, bb, 1);
      REQUIRE(s0.has_value());
      REQUIRE(s1.has_value());
      CHECK((*s0)[1] != (*s1)[1]);
    }
  }

  TEST_CASE("chart points lie on the critical set") {
    for (const auto& r : table1_rows()) {
      auto nf = nf_of(r.b, r.c, r.d, r.e);
      for (auto [p, q] : {std::pair{0.0, 0.0}, std::pair{0.03, -0.02}, std::pair{-0.04, 0.01}}) {
        auto src = degenerate_source(nf, p, q);
        Mesh m = extract_degen(nf, p, q, GridSpec{});
        INFO(r.name << " p=" << p << " q=" << q);
        check_vertex_residuals(src, m, 1e-9);
        DegenChart chart(nf, p, q);
        for (const auto& f : degen_features(nf, p, q, GridSpec{}, FeatureKind::CuspEdge))
          for (const auto& s : f.source) CHECK(std::abs(chart.hessian_det({s[2], s[3], s[5]})) < 1e-6);
      }
    }
  }

  TEST_CASE("generic continuation agrees with the degenerate chart") {
    for (const char* name : {"II", "III", "IX"}) {
      auto nf = row_nf(name);
      double p = 0.01, q = -0.02;
      DegenChart chart(nf, p, q);
      GridSpec g;
      g.lo1 = g.lo2 = -0.3;
      g.hi1 = g.hi2 = 0.3;
      g.n1 = g.n2 = 9;
      g.s_box = 1;
      Mesh gm = extract_generic(degenerate_source(nf, p, q), g);
      REQUIRE_FALSE(gm.vertices.empty());
      for (std::size_t i = 0; i < gm.vertices.size(); ++i) {
        const auto& s = gm.vertex_source[i];
        auto [ab, br] = chart.params_of({s[0], s[1], s[3]});
        auto back = chart.point(ab[0], ab[1], br);
        INFO(std::string(name) << " vertex " << i);
        REQUIRE(back.has_value());
        CHECK(std::abs((*back)[0] - s[0]) < 1e-6);
        CHECK(std::abs((*back)[1] - s[1]) < 1e-6);
        CHECK(std::abs((*back)[2] - s[3]) < 1e-6);
        Vec3 img = chart.image(*back);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(img[k] - gm.vertices[i][k]) < 1e-6);
      }
    }
  }

  TEST_CASE("self-intersection points pair two sources with one image") {
    for (const char* name : {"II", "III", "IX"}) {
      auto nf = row_nf(name);
      for (auto [p, q] : {std::pair{0.0, 0.0}, std::pair{0.01, 0.01}}) {
        DegenChart chart(nf, p, q);
        for (const auto& f : degen_features(nf, p, q, GridSpec{}, FeatureKind::SelfIntersection)) {
          for (const auto& s : f.source) {
            double u2 = s[7];
            double ua = chart.u1(s[2], s[3], u2), ub = chart.u1(s[4], s[5], u2);
            double scale = std::max(1.0, std::abs(ua));
            INFO(std::string(name) << " y1=" << s[0] << " z=" << s[1]);
            CHECK(std::abs(ua - ub) < 1e-6 * scale);
            CHECK(std::abs(chart.h(s[2], s[3], ua, u2) - chart.h(s[4], s[5], ub, u2)) < 1e-6 * scale);
          }
        }
      }
    }
  }

  TEST_CASE("origin counts agree with the algebraic counts") {
    for (const auto& r : table1_rows()) {
      auto nf = nf_of(r.b, r.c, r.d, r.e);
      auto oc = origin_feature_counts(nf);
      INFO(r.name);
      CHECK(oc.cusp_edges == cusp_edge_count(nf).count);
      CHECK(oc.self_intersections == branch_count(nf).count);
    }
  }

  TEST_CASE("window crossings at p = q = 0 match the origin rays") {
    for (const char* name : {"II", "III", "IX"}) {
      auto nf = row_nf(name);
      GridSpec g;
      g.lo1 = g.lo2 = -0.05;
      g.hi1 = g.hi2 = 0.05;
      g.si_window = 0.05;
      Mesh m = extract_degen(nf, 0, 0, g);
      INFO(std::string(name));
      CHECK(m.window_crossings(FeatureKind::CuspEdge) == 2 * cusp_edge_count(nf).count);
      CHECK(m.window_crossings(FeatureKind::SelfIntersection) == 2 * branch_count(nf).count);
    }
  }

  TEST_CASE("sweep validation") {
    SweepConfig cfg;
    cfg.degen = row_nf("II");
    cfg.samples = 1;
    CHECK_THROWS_AS(sweep(cfg), std::invalid_argument);
    cfg.samples = 4;
    cfg.radius = 0;
    CHECK_THROWS_AS(sweep(cfg), std::invalid_argument);
    cfg.radius = 0.05;
    cfg.special = SpecialFamily{};
    CHECK_THROWS_AS(sweep(cfg), std::invalid_argument);
  }

  TEST_CASE("class II circuit logs transitions") {
    SweepConfig cfg;
    cfg.degen = row_nf("II");
    cfg.radius = 0.05;
    cfg.samples = 24;
    cfg.annotations[7] = "user note";
    auto res = sweep(cfg);
    CHECK_FALSE(res.transitions.empty());
    for (const auto& t : res.transitions) {
      CHECK(t.to == (t.from + 1) % 24);
      CHECK(t.before != t.after);
      CHECK(t.annotation == (t.to == 7 ? "user note" : ""));
    }
    // single-threaded and threaded runs agree
    cfg.threads = 1;
    auto serial = sweep(cfg);
    CHECK(transition_log(serial) == transition_log(res));
    CHECK(sweep_csv(serial) == sweep_csv(res));
  }

  TEST_CASE("small circuits agree with the counts at the vertex") {
    for (const char* name : {"II", "III", "IX"}) {
      auto nf = row_nf(name);
      GridSpec g;
      g.lo1 = g.lo2 = -0.05;
      g.hi1 = g.hi2 = 0.05;
      g.si_window = 0.05;
      Mesh m0 = extract_degen(nf, 0, 0, g);
      SweepConfig cfg;
      cfg.degen = nf;
      cfg.radius = 1e-7;
      cfg.samples = 8;
      cfg.grid = g;
      auto res = sweep(cfg);
      INFO(std::string(name));
      CHECK(res.transitions.empty());
      for (const auto& s : res.samples) {
        CHECK(s.cusp_window == m0.window_crossings(FeatureKind::CuspEdge));
        CHECK(s.si_window == m0.window_crossings(FeatureKind::SelfIntersection));
      }
    }
  }

  TEST_CASE("point-only circuit: ellipsoid images or empty") {
    SweepConfig cfg;
    cfg.degen = nf_of(8, 4, -3, 1);
    cfg.radius = 0.05;
    cfg.samples = 12;
    cfg.phase = 0.1;
    cfg.store_meshes = true;
    auto res = sweep(cfg);
    REQUIRE(res.meshes.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
      const Mesh& m = res.meshes[i];
      double p = res.samples[i].p;
      // b > 0 and k > 0 in this class: real points need p < 0
      DegenChart chart(*cfg.degen, p, res.samples[i].q);
      if (p >= 0) {
        CHECK(m.vertices.empty());
        continue;
      }
      // the grid point (0, 0) is always inside the ellipse
      CHECK_FALSE(m.vertices.empty());
      for (const auto& s : m.vertex_source) {
        auto [ab, br] = chart.params_of({s[0], s[1], s[3]});
        CHECK(ab[0] * ab[0] + 8 * ab[1] * ab[1] <= -p * (1 + 1e-12));
      }
      if (p < -0.03) {
        std::set<int> comps(m.face_component.begin(), m.face_component.end());
        CHECK(comps.size() == 2);
      }
    }
  }

  TEST_CASE("OBJ export") {
    Mesh m = extract_generic(generic_normal_form(Subcase::Indef, 0.1), GridSpec{});
    std::ostringstream os;
    write_obj(os, m);
    std::istringstream is(os.str());
    std::string line;
    std::size_t nv = 0, nf = 0, no = 0;
    while (std::getline(is, line)) {
      if (line.rfind("v ", 0) == 0) {
        ++nv;
        CHECK(nf == 0);
      }
      if (line.rfind("f ", 0) == 0) ++nf;
      if (line.rfind("o ", 0) == 0) ++no;
    }
    CHECK(nv == m.vertices.size());
    CHECK(nf == m.faces.size());
    CHECK(no == m.component_names.size());
    std::ostringstream again;
    write_obj(again, m);
    CHECK(again.str() == os.str());
  }

  TEST_CASE("CSV export") {
    Mesh m = extract_generic(generic_normal_form(Subcase::Indef, 0.1), GridSpec{});
    std::ostringstream os;
    write_feature_csv(os, m, FeatureKind::CuspEdge);
    std::string s = os.str();
    CHECK(s.rfind("# feature=CuspEdge\nx,y,z\n", 0) == 0);
    int blanks = 0;
    for (std::size_t i = 1; i < s.size(); ++i) blanks += s[i] == '\n' && s[i - 1] == '\n';
    CHECK(blanks == m.count(FeatureKind::CuspEdge) - 1);
    CHECK(fmt17(0.1) == "0.10000000000000001");
    Mesh empty;
    std::ostringstream e;
    write_feature_csv(e, empty, FeatureKind::SelfIntersection);
    CHECK(e.str() == "# feature=SelfIntersection\nx,y,z\n");
  }
}
