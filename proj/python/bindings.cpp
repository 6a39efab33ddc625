#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "equidist/classify.hpp"
#include "equidist/degen2.hpp"
#include "equidist/mesh.hpp"
#include "equidist/special12.hpp"
#include "equidist/surfaces.hpp"

namespace py = pybind11;
using namespace equidist;

namespace {

Subcase subcase_of(const std::string& s) {
  if (s == "PosDef") return Subcase::PosDef;
  if (s == "NegDef") return Subcase::NegDef;
  if (s == "Indef") return Subcase::Indef;
  throw std::invalid_argument("subcase must be PosDef, NegDef or Indef");
}

DegenNormalForm nf_of(const std::string& b, const std::string& c, const std::string& d, const std::string& e) {
  return DegenNormalForm::from_coefficients(parse_rational(b), parse_rational(c), parse_rational(d), parse_rational(e));
}

py::dict counts(const Mesh& m) {
  py::dict out;
  out["vertices"] = m.vertices.size();
  out["faces"] = m.faces.size();
  out["cusp_edges"] = m.count(FeatureKind::CuspEdge);
  out["self_intersections"] = m.count(FeatureKind::SelfIntersection);
  int closed = 0;
  for (const auto& f : m.features) closed += f.closed;
  out["closed"] = closed;
  return out;
}

py::dict invariants_dict(const DegenInvariants& inv) {
  py::dict out;
  out["cusp_edges"] = inv.cusp_edges;
  out["sheets"] = inv.sheets;
  out["branches"] = inv.branches;
  out["nearby"] = subcase_name(inv.nearby);
  out["class"] = inv.table_class;
  return out;
}

}  // namespace

PYBIND11_MODULE(_equidist, m) {
  m.doc() = "Affine equidistants of surface pairs: classification, invariants and meshes";

  m.def(
      "classify",
      [](const std::string& pair_json, const std::string& lambda) {
        CaseLabel c = classify_lambda(parse_pair(pair_json), parse_rational(lambda));
        py::dict out;
        out["case"] = c.case_name();
        out["subcase"] = c.subcase ? py::cast(subcase_name(*c.subcase)) : py::none();
        out["q"] = to_string(c.q);
        out["r"] = to_string(c.r);
        out["region"] = c.region ? py::cast(region_name(*c.region)) : py::none();
        return out;
      },
      py::arg("pair_json"), py::arg("lam"));

  m.def(
      "landscape",
      [](const std::string& pair_json) {
        LambdaLandscape l = lambda_landscape(parse_pair(pair_json));
        py::dict out;
        py::list special;
        for (const auto& s : l.special) special.append(s.approx);
        out["special"] = special;
        out["degenerate"] = l.degenerate ? py::cast(to_string(*l.degenerate)) : py::none();
        return out;
      },
      py::arg("pair_json"));

  m.def("table1", [] {
    py::list rows;
    for (const auto& r : table1()) {
      py::dict d = invariants_dict(r.computed);
      d["name"] = r.row.name;
      d["printed"] = py::make_tuple(r.row.cusp_edges, r.row.self_int, subcase_name(r.row.subcase));
      d["pass"] = r.pass();
      rows.append(d);
    }
    return rows;
  });

  m.def(
      "invariants",
      [](const std::string& b, const std::string& c, const std::string& d, const std::string& e) {
        return invariants_dict(classify_class(nf_of(b, c, d, e)));
      },
      py::arg("b"), py::arg("c"), py::arg("d"), py::arg("e"));

  m.def(
      "origin_counts",
      [](const std::string& b, const std::string& c, const std::string& d, const std::string& e) {
        auto oc = origin_feature_counts(nf_of(b, c, d, e));
        return py::make_tuple(oc.cusp_edges, oc.self_intersections);
      },
      py::arg("b"), py::arg("c"), py::arg("d"), py::arg("e"));

  m.def(
      "generic_mesh",
      [](const std::string& subcase, double eps) { return counts(extract_generic(generic_normal_form(subcase_of(subcase), eps), GridSpec{})); },
      py::arg("subcase"), py::arg("eps"));

  m.def(
      "degenerate_mesh",
      [](const std::string& b, const std::string& c, const std::string& d, const std::string& e, double p, double q) {
        return counts(extract_degen(nf_of(b, c, d, e), p, q, GridSpec{}));
      },
      py::arg("b"), py::arg("c"), py::arg("d"), py::arg("e"), py::arg("p"), py::arg("q"));

  m.def(
      "cusp_series",
      [](double qlo, double qhi, int n) {
        auto f = fit_cusp_series(qlo, qhi, n);
        return py::make_tuple(f.c3, f.c4);
      },
      py::arg("qlo") = 1e-3, py::arg("qhi") = 1e-2, py::arg("n") = 32);

  m.def("cusp_locus_p", [](double q) { return cusp_locus_p(from_double(q)); }, py::arg("q"));

  m.def(
      "selfint_locus",
      [](double qlo, double qhi, int n) {
        std::vector<std::pair<double, double>> out;
        for (const auto& pt : selfint_locus(qlo, qhi, n)) out.emplace_back(pt.q, pt.p);
        return out;
      },
      py::arg("qlo"), py::arg("qhi"), py::arg("n") = 101);

  py::register_exception<MoreDegenerate>(m, "MoreDegenerate", PyExc_ValueError);
  py::register_exception<NoSpecialValues>(m, "NoSpecialValues", PyExc_ValueError);
}
