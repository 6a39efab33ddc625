#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "equidist/classify.hpp"
#include "equidist/degen2.hpp"
#include "equidist/mesh.hpp"
#include "equidist/roots.hpp"
#include "equidist/special12.hpp"
#include "equidist/surfaces.hpp"
#include "equidist/sweep.hpp"

using namespace equidist;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

// exit 2 with a one-line reason
struct Failure {
  std::string code, message;
};

[[noreturn]] void fail(const std::string& code, const std::string& msg) { throw Failure{code, msg}; }

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

int default_precision() {
  const char* env = std::getenv("EQUIDIST_PRECISION");
  if (!env) return 128;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 64 || v > kPrecisionCapBits)
    fail("input", "EQUIDIST_PRECISION must be an integer in [64, " + std::to_string(kPrecisionCapBits) + "]");
  return static_cast<int>(v);
}

Rational rational_arg(const std::string& s, const std::string& what) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    fail("input", "cannot read " + what + " '" + s + "' as a rational");
  }
}

DegenNormalForm bcde_arg(const std::string& s) {
  std::vector<Rational> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(rational_arg(item, "--bcde entry"));
  if (v.size() != 4) fail("input", "--bcde takes four comma-separated values b,c,d,e");
  return DegenNormalForm::from_coefficients(v[0], v[1], v[2], v[3]);
}

SurfacePair pair_arg(const std::string& path) {
  try {
    return load_pair(path);
  } catch (const std::exception& e) {
    fail("input", one_line(e.what()));
  }
}

void require_valid(const SurfacePair& p) {
  auto rep = validate_pair(p);
  if (!rep.geometric_ok()) {
    std::string names;
    for (const auto& f : rep.failures()) names += (names.empty() ? "" : ", ") + f;
    fail("validation", "assumption failed: " + names);
  }
}

fs::path out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) fail("io", "cannot create output directory " + dir);
  fs::path probe = p / ".equidist_probe";
  {
    std::ofstream t(probe);
    if (!t) fail("io", "output directory not writable: " + dir);
  }
  fs::remove(probe, ec);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) fail("io", "cannot write " + p.string());
  f << text;
}

json surd_json(const Surd& s) { return {{"a", to_string(s.a)}, {"b", to_string(s.b)}, {"radicand", to_string(s.radicand)}}; }

json special_json(const SpecialValue& v) {
  if (v.exact) return to_string(*v.exact);
  return {{"approx", v.approx}, {"minpoly", v.minpoly.to_string("lambda")}};
}

json invariants_json(const DegenNormalForm& nf, const DegenInvariants& inv) {
  json j;
  j["b"] = to_string(nf.b);
  j["c"] = to_string(nf.c);
  j["d"] = to_string(nf.d);
  j["e"] = to_string(nf.e);
  j["exact"] = nf.exact;
  if (!nf.exact) j["precision"] = nf.precision;
  j["cusp_edges"] = inv.cusp_edges;
  j["cusp_tangential"] = inv.cusp_tangential;
  j["sheets"] = inv.sheets;
  j["self_int"] = inv.branches;
  j["nearby_subcase"] = subcase_name(inv.nearby);
  j["class"] = inv.table_class;
  j["cone_regime"] = regime_name(inv.cone.regime);
  j["k"] = inv.cone.k ? json(to_string(*inv.cone.k)) : json(nullptr);
  j["e_range"] = inv.e_range;
  return j;
}

// ---------------------------------------------------------------- grid flags

struct GridFlags {
  std::optional<int> n1, n2, seeds;
  std::optional<std::vector<double>> range1, range2;
  std::optional<double> tol, s_box, si_window;

  void add(CLI::App* c) {
    c->add_option("--n1", n1, "grid resolution in the first parameter");
    c->add_option("--n2", n2, "grid resolution in the second parameter");
    c->add_option("--range1", range1, "lo hi of the first parameter")->expected(2);
    c->add_option("--range2", range2, "lo hi of the second parameter")->expected(2);
    c->add_option("--seeds", seeds, "multistart lattice per axis");
    c->add_option("--tol", tol, "residual bound on emitted vertices");
    c->add_option("--s-box", s_box, "search box for critical points");
    c->add_option("--si-window", si_window, "half-width of the self-intersection window");
  }
  GridSpec apply(GridSpec g) const {
    if (n1) g.n1 = *n1;
    if (n2) g.n2 = *n2;
    if (seeds) g.seeds = *seeds;
    if (range1) std::tie(g.lo1, g.hi1) = std::pair{(*range1)[0], (*range1)[1]};
    if (range2) std::tie(g.lo2, g.hi2) = std::pair{(*range2)[0], (*range2)[1]};
    if (tol) g.tol = *tol;
    if (s_box) g.s_box = *s_box;
    if (si_window) g.si_window = *si_window;
    try {
      g.validate();
    } catch (const std::invalid_argument& e) {
      fail("input", e.what());
    }
    return g;
  }
};

std::optional<Subcase> case_arg(const std::string& s) {
  if (s == "++" || s == "PosDef") return Subcase::PosDef;
  if (s == "--" || s == "NegDef") return Subcase::NegDef;
  if (s == "+-" || s == "Indef") return Subcase::Indef;
  return std::nullopt;
}

// ---------------------------------------------------------------- commands

struct Options {
  std::string pair, lambda, bcde, kase, out = ".", inject;
  bool landscape = false, degenerate = false, as_json = false;
  int order = 6, special = 0, samples = 24, n = 101;
  double eps = 0, alpha = 0, p = 0, q = 0, p0 = 0, q0 = 0, radius = 0.05, phase = 0, qmin = -1, qmax = 1;
  std::vector<std::string> annotations;
  std::optional<int> precision;
  GridFlags grid;
};

int precision_of(const Options& o) {
  if (o.precision) {
    if (*o.precision < 64 || *o.precision > kPrecisionCapBits) fail("input", "--precision must lie in [64, 2048]");
    return *o.precision;
  }
  return default_precision();
}

int cmd_classify(const Options& o) {
  SurfacePair p = pair_arg(o.pair);
  require_valid(p);
  json j;
  if (o.landscape) {
    LambdaLandscape L = lambda_landscape(p);
    j["special"] = json::array();
    for (const auto& v : L.special) j["special"].push_back(special_json(v));
    j["degenerate"] = L.degenerate ? json(to_string(*L.degenerate)) : json(nullptr);
    j["warnings"] = L.warnings;
  } else {
    Rational lam = rational_arg(o.lambda, "--lambda");
    CaseLabel c = classify_lambda(p, lam);
    j["lambda"] = to_string(lam);
    j["case"] = c.case_name();
    j["subcase"] = c.subcase ? json(subcase_name(*c.subcase)) : json(nullptr);
    if (c.special_sign) j["special_sign"] = c.special_sign;
    j["Q"] = to_string(c.q);
    j["R"] = to_string(c.r);
    j["region"] = c.region ? json(region_name(*c.region)) : json(nullptr);
    j["versal"] = c.versal;
    j["more_degenerate"] = c.more_degenerate;
    if (c.kind == CaseLabel::Case::Special12 && c.special_sign > 0 && sgn(p.f030()) > 0 && sgn(p.g030()) > 0) {
      int which = c.special_sign;
      j["a3_condition"] = surd_json(a3_condition(p, which));
    }
    j["warnings"] = c.warnings;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_contact(const Options& o) {
  SurfacePair p = pair_arg(o.pair);
  require_valid(p);
  Rational lam = o.degenerate ? degenerate_lambda(p) : rational_arg(o.lambda, "--lambda");
  require_admissible(lam);
  ContactType ct = contact_type(scaled_contact_map(p, lam, o.order));
  json j{{"lambda", to_string(lam)}, {"contact", ct.name()}};
  if (ct.kind == ContactType::Kind::A) j["k"] = ct.k;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_invariants(const Options& o) {
  json j;
  if (!o.bcde.empty()) {
    DegenNormalForm nf = bcde_arg(o.bcde);
    if (!nf.classifiable()) {
      std::string f;
      for (const auto& s : nf.failed_flags()) f += (f.empty() ? "" : ", ") + s;
      fail("more-degenerate", f);
    }
    j = invariants_json(nf, classify_class(nf));
  } else {
    SurfacePair p = pair_arg(o.pair);
    require_valid(p);
    auto r = degenerate_invariants(p, precision_of(o));
    j = invariants_json(r.nf, r.inv);
    j["lambda"] = to_string(r.nf.lambda);
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_table1(const Options& o) {
  std::vector<Table1Row> rows = table1_rows();
  if (!o.inject.empty()) {
    bool found = false;
    for (auto& r : rows)
      if (r.name == o.inject) {
        r.cusp_edges = r.cusp_edges == 4 ? 0 : r.cusp_edges + 2;
        found = true;
      }
    if (!found) fail("input", "no Table 1 row named " + o.inject);
  }
  auto res = table1(rows);
  std::vector<std::string> bad;
  int cells = 0;
  json arr = json::array();
  for (const auto& r : res) {
    cells += r.cusp_ok + r.self_int_ok + r.subcase_ok;
    std::string which;
    if (!r.cusp_ok) which += "cusp_edges";
    if (!r.self_int_ok) which += std::string(which.empty() ? "" : "+") + "self_int";
    if (!r.subcase_ok) which += std::string(which.empty() ? "" : "+") + "subcase";
    if (!which.empty()) bad.push_back(r.row.name + "(" + which + ")");
    arr.push_back({{"class", r.row.name},
                   {"bcde", {to_string(r.row.b), to_string(r.row.c), to_string(r.row.d), to_string(r.row.e)}},
                   {"expected", {{"cusp_edges", r.row.cusp_edges}, {"self_int", r.row.self_int}, {"subcase", subcase_name(r.row.subcase)}}},
                   {"computed",
                    {{"cusp_edges", r.computed.cusp_edges}, {"self_int", r.computed.branches}, {"subcase", subcase_name(r.computed.nearby)}}},
                   {"pass", r.pass()}});
  }
  if (o.as_json) {
    json j{{"rows", arr}, {"cells_matched", cells}, {"cells", 3 * static_cast<int>(res.size())}};
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& r : res)
      std::cout << r.row.name << "\t(" << to_string(r.row.b) << ',' << to_string(r.row.c) << ',' << to_string(r.row.d) << ','
                << to_string(r.row.e) << ")\tcusp " << r.computed.cusp_edges << '/' << r.row.cusp_edges << "\tself_int "
                << r.computed.branches << '/' << r.row.self_int << "\tsubcase " << subcase_name(r.computed.nearby) << '/'
                << subcase_name(r.row.subcase) << '\t' << (r.pass() ? "ok" : "MISMATCH") << '\n';
    std::cout << cells << '/' << 3 * res.size() << " cells match\n";
  }
  if (!bad.empty()) {
    std::string s;
    for (const auto& b : bad) s += (s.empty() ? "" : " ") + b;
    std::cerr << "mismatch: " << s << '\n';
    return 1;
  }
  return 0;
}

struct MeshJob {
  Mesh mesh;
  std::string label;
  std::optional<OriginCounts> vertex;
};

MeshJob build_mesh(const Options& o) {
  int sources = !o.kase.empty() + !o.bcde.empty() + (o.special != 0) + !o.pair.empty();
  if (sources != 1) fail("input", "give exactly one of --case, --bcde, --special, --pair");
  MeshJob job;
  if (!o.kase.empty()) {
    auto sc = case_arg(o.kase);
    if (!sc) fail("input", "--case must be ++, -- or +-");
    auto src = generic_normal_form(*sc, o.eps);
    job.mesh = extract_generic(src, o.grid.apply(GridSpec{}));
    job.label = src.label;
  } else if (!o.bcde.empty()) {
    DegenNormalForm nf = bcde_arg(o.bcde);
    if (!nf.classifiable()) fail("more-degenerate", "normal form fails the genericity flags");
    job.mesh = extract_degen(nf, o.p, o.q, o.grid.apply(GridSpec{}));
    job.label = "bcde " + o.bcde + " p=" + fmt17(o.p) + " q=" + fmt17(o.q);
    if (o.p == 0 && o.q == 0) job.vertex = origin_feature_counts(nf);
  } else if (o.special != 0) {
    if (o.special != 1 && o.special != -1) fail("input", "--special takes +1 or -1");
    if (std::abs(o.q) > kSpecialQLimit) fail("input", "|q| must not exceed 1");
    SpecialFamily f{o.special, o.p, o.q};
    job.mesh = evaluate_special(f, o.grid.apply(special_default_grid()));
    job.label = "special " + std::to_string(o.special) + " p=" + fmt17(o.p) + " q=" + fmt17(o.q);
  } else {
    SurfacePair p = pair_arg(o.pair);
    require_valid(p);
    Rational lam = rational_arg(o.lambda, "--lambda");
    require_admissible(lam);
    auto src = family_source(build_family(p, lam, 4), o.eps, o.alpha);
    job.mesh = extract_generic(src, o.grid.apply(GridSpec{}));
    job.label = "pair lambda=" + to_string(lam) + " " + src.label;
  }
  return job;
}

int cmd_mesh(const Options& o) {
  MeshJob job = build_mesh(o);
  fs::path dir = out_dir(o.out);
  const Mesh& m = job.mesh;
  std::ostringstream obj, ce, si;
  write_obj(obj, m);
  write_feature_csv(ce, m, FeatureKind::CuspEdge);
  write_feature_csv(si, m, FeatureKind::SelfIntersection);
  write_file(dir / "mesh.obj", obj.str());
  write_file(dir / "cusp_edges.csv", ce.str());
  write_file(dir / "self_intersections.csv", si.str());
  json j;
  j["source"] = job.label;
  j["empty"] = m.empty();
  j["vertices"] = m.vertices.size();
  j["faces"] = m.faces.size();
  j["components"] = m.component_names;
  int closed = 0;
  for (const auto& f : m.features) closed += f.kind == FeatureKind::CuspEdge && f.closed;
  if (job.vertex) {
    // at the vertex each curve through the origin is traced as rays leaving a small disk
    j["cusp_edges"] = job.vertex->cusp_edges;
    j["self_int"] = job.vertex->self_intersections;
    j["counted_at"] = "origin";
  } else {
    j["cusp_edges"] = m.count(FeatureKind::CuspEdge);
    j["self_int"] = m.count(FeatureKind::SelfIntersection);
    j["counted_at"] = "window";
  }
  j["polylines"] = {{"cusp_edges", m.count(FeatureKind::CuspEdge)}, {"self_int", m.count(FeatureKind::SelfIntersection)}};
  j["closed_cusp_edges"] = closed;
  j["window_crossings"] = {{"cusp_edges", m.window_crossings(FeatureKind::CuspEdge)},
                           {"self_int", m.window_crossings(FeatureKind::SelfIntersection)}};
  j["files"] = {"mesh.obj", "cusp_edges.csv", "self_intersections.csv"};
  write_file(dir / "manifest.json", j.dump(2) + "\n");
  std::cout << j.dump() << '\n';
  return 0;
}

std::string sweep_svg(const SweepResult& r, double p0, double q0, double radius, const std::optional<PlaneLoci>& loci) {
  const double W = 480, H = 480, pad = 1.4 * radius;
  auto X = [&](double p) { return (p - (p0 - pad)) / (2 * pad) * W; };
  auto Y = [&](double q) { return H - (q - (q0 - pad)) / (2 * pad) * H; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "  <circle cx=\"" << fmt17(X(p0)) << "\" cy=\"" << fmt17(Y(q0)) << "\" r=\"" << fmt17(radius / (2 * pad) * W)
     << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
  if (loci) {
    auto path = [&](const std::vector<LocusPoint>& v, const char* id, const char* dash) {
      os << "  <path id=\"" << id << "\" fill=\"none\" stroke=\"black\"" << dash << " d=\"";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " L " : "M ") << fmt17(X(v[i].p)) << ' ' << fmt17(Y(v[i].q));
      os << "\"/>\n";
    };
    path(loci->cusp_axis, "cusp-axis", "");
    path(loci->cusp_branch, "cusp-locus", "");
    path(loci->selfint_branch, "selfint-locus", " stroke-dasharray=\"6 4\"");
  }
  for (const auto& s : r.samples)
    os << "  <g id=\"sample-" << s.index << "\"><circle cx=\"" << fmt17(X(s.p)) << "\" cy=\"" << fmt17(Y(s.q))
       << "\" r=\"3\"/><text x=\"" << fmt17(X(s.p) + 5) << "\" y=\"" << fmt17(Y(s.q) - 5) << "\" font-size=\"10\">" << s.cusp_edges << '/'
       << s.self_int << "</text></g>\n";
  os << "</svg>\n";
  return os.str();
}

int cmd_sweep(const Options& o) {
  if (o.samples < 2) fail("input", "--samples must be at least 2");
  if (!(o.radius > 0)) fail("input", "--radius must be positive");
  if (o.bcde.empty() == (o.special == 0)) fail("input", "give exactly one of --bcde, --special");
  SweepConfig cfg;
  cfg.p0 = o.p0;
  cfg.q0 = o.q0;
  cfg.radius = o.radius;
  cfg.samples = o.samples;
  cfg.phase = o.phase;
  std::optional<PlaneLoci> loci;
  if (!o.bcde.empty()) {
    DegenNormalForm nf = bcde_arg(o.bcde);
    if (!nf.classifiable()) fail("more-degenerate", "normal form fails the genericity flags");
    cfg.degen = nf;
    cfg.grid = o.grid.apply(GridSpec{});
  } else {
    if (o.special != 1 && o.special != -1) fail("input", "--special takes +1 or -1");
    if (std::abs(o.q0) + o.radius > kSpecialQLimit) fail("input", "the circuit leaves |q| <= 1");
    cfg.special = SpecialFamily{o.special, 0, 0};
    cfg.grid = o.grid.apply(special_default_grid());
    loci = plane_loci(std::max(-1.0, o.q0 - o.radius), std::min(1.0, o.q0 + o.radius), 101);
  }
  for (const auto& a : o.annotations) {
    auto eq = a.find('=');
    if (eq == std::string::npos) fail("input", "--annotate takes INDEX=TEXT");
    int idx = 0;
    try {
      idx = std::stoi(a.substr(0, eq));
    } catch (const std::exception&) {
      fail("input", "--annotate index must be an integer");
    }
    if (idx < 0 || idx >= o.samples) fail("input", "--annotate index out of range");
    cfg.annotations[idx] = a.substr(eq + 1);
  }
  SweepResult r;
  try {
    r = sweep(cfg);
  } catch (const std::invalid_argument& e) {
    fail("input", e.what());
  }
  fs::path dir = out_dir(o.out);
  write_file(dir / "sweep.csv", sweep_csv(r));
  write_file(dir / "transitions.csv", transition_log(r));
  write_file(dir / "sweep.svg", sweep_svg(r, o.p0, o.q0, o.radius, loci));
  std::cout << json{{"samples", r.samples.size()}, {"transitions", r.transitions.size()}}.dump() << '\n';
  return 0;
}

int cmd_loci(const Options& o) {
  if (o.n < 2) fail("input", "--n must be at least 2");
  if (!(o.qmax > o.qmin)) fail("input", "--qmax must exceed --qmin");
  PlaneLoci loci = plane_loci(o.qmin, o.qmax, o.n);
  fs::path dir = out_dir(o.out);
  write_file(dir / "loci.svg", loci_svg(loci));
  write_file(dir / "loci.csv", loci_csv(loci));
  auto fit = fit_cusp_series();
  std::cout << json{{"cusp_points", loci.cusp_branch.size()},
                    {"selfint_points", loci.selfint_branch.size()},
                    {"fit", {{"c3", fit.c3}, {"c4", fit.c4}, {"rel_err3", fit.rel_err3}, {"rel_err4", fit.rel_err4}}}}
                   .dump()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine equidistants of surface pairs: classification, Table 1, meshes and sweeps"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--precision", o.precision, "starting precision in bits (overrides EQUIDIST_PRECISION)");

  auto* classify = app.add_subcommand("classify", "case label at a ratio, or the ratio landscape");
  classify->add_option("pair", o.pair, "surface pair JSON")->required();
  auto* lam = classify->add_option("--lambda", o.lambda, "ratio");
  auto* land = classify->add_flag("--landscape", o.landscape, "special and degenerate ratios");
  lam->excludes(land);
  land->excludes(lam);

  auto* contact = app.add_subcommand("contact", "contact type of the scaled surfaces at a ratio");
  contact->add_option("pair", o.pair, "surface pair JSON")->required();
  auto* clam = contact->add_option("--lambda", o.lambda, "ratio");
  auto* cdeg = contact->add_flag("--degenerate", o.degenerate, "use the degenerate ratio of the pair");
  clam->excludes(cdeg);
  cdeg->excludes(clam);
  contact->add_option("--order", o.order, "jet order")->check(CLI::Range(4, 12));

  auto* inv = app.add_subcommand("invariants", "degenerate-case invariants");
  auto* ipair = inv->add_option("--pair", o.pair, "surface pair JSON");
  auto* ibcde = inv->add_option("--bcde", o.bcde, "normal form b,c,d,e");
  ipair->excludes(ibcde);
  ibcde->excludes(ipair);

  auto* t1 = app.add_subcommand("table1", "recompute the ten classes");
  t1->add_flag("--json", o.as_json, "machine-readable rows");
  t1->add_option("--inject-wrong", o.inject, "test mode: corrupt the expected cusp count of a row")->group("");

  auto* mesh = app.add_subcommand("mesh", "surface mesh and feature curves");
  mesh->add_option("--case", o.kase, "normal form ++, -- or +-");
  mesh->add_option("--eps", o.eps, "unfolding parameter of the generic form or family");
  mesh->add_option("--alpha", o.alpha, "ratio offset of the family");
  mesh->add_option("--bcde", o.bcde, "degenerate normal form b,c,d,e");
  mesh->add_option("--special", o.special, "special family with sign +1 or -1 on s1^2")->allow_extra_args(false);
  mesh->add_option("--pair", o.pair, "surface pair JSON");
  mesh->add_option("--lambda", o.lambda, "ratio for --pair");
  mesh->add_option("--p", o.p, "unfolding parameter p");
  mesh->add_option("--q", o.q, "unfolding parameter q");
  mesh->add_option("--out", o.out, "output directory");
  o.grid.add(mesh);

  auto* sw = app.add_subcommand("sweep", "circuit of (p, q) samples and its transition log");
  sw->add_option("--bcde", o.bcde, "degenerate normal form b,c,d,e");
  sw->add_option("--special", o.special, "special family with sign +1 or -1");
  sw->add_option("--p0", o.p0, "circuit centre p");
  sw->add_option("--q0", o.q0, "circuit centre q");
  sw->add_option("--radius", o.radius, "circuit radius");
  sw->add_option("--samples", o.samples, "number of samples");
  sw->add_option("--phase", o.phase, "angle of sample 0");
  sw->add_option("--annotate", o.annotations, "INDEX=TEXT note on the transition arriving at a sample");
  sw->add_option("--out", o.out, "output directory");
  o.grid.add(sw);

  auto* lo = app.add_subcommand("loci", "transition loci of the special family in the (p, q) plane");
  lo->add_option("--qmin", o.qmin, "lower q");
  lo->add_option("--qmax", o.qmax, "upper q");
  lo->add_option("--n", o.n, "samples");
  lo->add_option("--out", o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (o.precision) precision_of(o);
    else default_precision();
    if (*classify) {
      if (!o.landscape && o.lambda.empty()) fail("input", "classify needs --lambda or --landscape");
      return cmd_classify(o);
    }
    if (*contact) {
      if (!o.degenerate && o.lambda.empty()) fail("input", "contact needs --lambda or --degenerate");
      return cmd_contact(o);
    }
    if (*inv) {
      if (o.pair.empty() && o.bcde.empty()) fail("input", "invariants needs --pair or --bcde");
      return cmd_invariants(o);
    }
    if (*t1) return cmd_table1(o);
    if (*mesh) return cmd_mesh(o);
    if (*sw) return cmd_sweep(o);
    if (*lo) return cmd_loci(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.code << ": " << one_line(f.message) << '\n';
    return 2;
  } catch (const ExcludedRatio& e) {
    std::cerr << "error: excluded-ratio: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const MoreDegenerate& e) {
    std::cerr << "error: more-degenerate: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const NeedsPrecision& e) {
    std::cerr << "error: needs-precision: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const NoSpecialValues& e) {
    std::cerr << "error: no-special-values: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: input: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << one_line(e.what()) << '\n';
    return 2;
  }
  return 2;
}
