#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbiproj/devmap.hpp"
#include "orbiproj/hyperbolic.hpp"
#include "orbiproj/solver.hpp"
#include "orbiproj/surgery.hpp"

namespace py = pybind11;
using namespace orbiproj;
using nlohmann::json;

namespace {

// the python surface speaks JSON-compatible dicts; convert through nlohmann
json py_to_json(const py::handle& obj) { return json::parse(py::str(py::module_::import("json").attr("dumps")(obj)).cast<std::string>()); }

py::object json_to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<std::vector<double>> matrix_rows(const Collineation& g) {
  std::vector<std::vector<double>> rows(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) rows[i][k] = g.m(i, k);
  return rows;
}

EndSpec end_from_py(const py::handle& obj) { return endspec_from_json(py_to_json(obj)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "convex real projective structures on 2-orbifolds";

  py::register_exception<Error>(m, "OrbifoldError");

  py::class_<Structure>(m, "Structure")
      .def_property_readonly("type", [](const Structure& s) { return s.type; })
      .def_property_readonly("orders", [](const Structure& s) { return s.orders; })
      .def_property_readonly("fiber", [](const Structure& s) { return s.fiber_params; })
      .def("generator_names",
           [](const Structure& s) {
             std::vector<std::string> names;
             for (const auto& [n, g] : s.generators) names.push_back(n);
             return names;
           })
      .def("generator", [](const Structure& s, const std::string& n) { return matrix_rows(s.gen(n)); })
      .def("relation_residual", &Structure::max_relation_residual)
      .def("extract_invariants",
           [](const Structure& s) {
             py::list out;
             for (const auto& e : extract_invariants(s)) out.append(json_to_py(endspec_to_json(e)));
             return out;
           })
      .def("to_json", [](const Structure& s) { return structure_to_json(s).dump(); })
      .def("__repr__", [](const Structure& s) {
        return "<orbiproj.Structure " + s.type + ", " + std::to_string(s.generators.size()) +
               " generators>";
      });

  py::class_<Tessellation>(m, "Tessellation")
      .def_property_readonly("tile_count", [](const Tessellation& t) { return t.tiles.size(); })
      .def("to_json", [](const Tessellation& t) { return tessellation_to_json(t).dump(); });

  py::class_<ConvexityReport>(m, "ConvexityReport")
      .def_readonly("passed", &ConvexityReport::passed)
      .def_readonly("hull_defect", &ConvexityReport::hull_defect)
      .def_readonly("overlap_count", &ConvexityReport::overlap_count);

  // signature-level operations
  m.def("euler_characteristic", [](const py::dict& sig) {
    Rational chi = euler_characteristic(signature_from_json(py_to_json(sig)));
    return py::make_tuple(chi.num, chi.den);
  });
  m.def("deformation_dimension",
        [](const py::dict& sig) { return deformation_dimension(signature_from_json(py_to_json(sig))); });
  m.def("teichmuller_dimension",
        [](const py::dict& sig) { return teichmuller_dimension(signature_from_json(py_to_json(sig))); });
  m.def("classify_elementary", [](const py::dict& sig) -> py::object {
    auto res = classify_elementary(signature_from_json(py_to_json(sig)));
    if (!res) return py::none();
    return py::make_tuple(elementary_type_name(res->type), res->orders);
  });
  m.def("classify_zero_euler", [](const py::dict& sig) -> py::object {
    auto res = classify_zero_euler(signature_from_json(py_to_json(sig)));
    if (!res) return py::none();
    return py::int_((int)*res);
  });

  // projective helpers
  m.def("corner_cross_ratio", &corner_cross_ratio);
  m.def("classify_matrix", [](const std::vector<std::vector<double>>& rows) {
    Mat3 mm;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) mm(i, k) = rows.at(i).at(k);
    CollineationClass c = classify(Collineation(mm));
    py::dict out;
    out["kind"] = kind_name(c.kind);
    out["lambda"] = c.lambda;
    out["tau"] = c.tau;
    out["order"] = c.elliptic_order;
    out["purely_hyperbolic"] = c.purely_hyperbolic;
    return out;
  });

  // solvers
  m.def("solve_pants", [](const py::list& ends, py::object fiber) {
    std::vector<EndSpec> es;
    for (const auto& e : ends) es.push_back(end_from_py(e));
    std::optional<Fiber2> f;
    if (!fiber.is_none()) {
      auto t = fiber.cast<std::pair<double, double>>();
      f = Fiber2{t.first, t.second};
    }
    return solve_pants_family(es, f);
  }, py::arg("ends"), py::arg("fiber") = py::none());
  m.def("solve_crown_a1", [](const py::dict& end, double inv, double fiber) {
    return solve_crown_a1(end_from_py(end), inv, fiber);
  }, py::arg("end"), py::arg("full_inv"), py::arg("fiber") = 0.0);
  m.def("solve_crown_a2", [](const py::dict& end, int order, py::object fiber) {
    std::optional<double> f;
    if (!fiber.is_none()) f = fiber.cast<double>();
    return solve_crown_a2(end_from_py(end), order, f);
  }, py::arg("end"), py::arg("corner_order"), py::arg("fiber") = py::none());
  m.def("solve_disk_a3", [](int n, double inv, double fiber) { return solve_disk_a3(n, inv, fiber); },
        py::arg("cone_order"), py::arg("full_inv"), py::arg("fiber") = 0.0);
  m.def("solve_disk_a4", [](int mo, int no, py::object fiber) {
    std::optional<double> f;
    if (!fiber.is_none()) f = fiber.cast<double>();
    return solve_disk_a4(mo, no, f);
  }, py::arg("corner_order"), py::arg("cone_order"), py::arg("fiber") = py::none());
  m.def("solve_hexagon_d1", [](double i2, double i4, double i6, double fiber) {
    return solve_hexagon_d1(i2, i4, i6, fiber);
  }, py::arg("inv_e2"), py::arg("inv_e4"), py::arg("inv_e6"), py::arg("fiber") = 0.0);
  m.def("solve_pentagon_d2", [](int n, double i1, double i4, py::object fiber) {
    std::optional<double> f;
    if (!fiber.is_none()) f = fiber.cast<double>();
    return solve_pentagon_d2(n, i1, i4, f);
  }, py::arg("corner_order"), py::arg("inv_e1"), py::arg("inv_e4"), py::arg("fiber") = py::none());
  m.def("solve_quad_d3", [](int mo, int no, double inv, py::object fiber) {
    std::optional<double> f;
    if (!fiber.is_none()) f = fiber.cast<double>();
    return solve_quad_d3(mo, no, inv, f);
  }, py::arg("order_m"), py::arg("order_n"), py::arg("invariant"), py::arg("fiber") = py::none());
  m.def("solve_triangle_d4", [](int p, int q, int r, py::object mu) {
    std::optional<double> m_;
    if (!mu.is_none()) m_ = mu.cast<double>();
    return solve_triangle_d4(p, q, r, m_);
  }, py::arg("p"), py::arg("q"), py::arg("r"), py::arg("mu") = py::none());
  m.def("build_hyperbolic_elementary",
        [](const std::string& tag, const std::vector<int>& orders,
           const std::vector<double>& lengths) {
          return build_hyperbolic_elementary(tag, orders, lengths);
        },
        py::arg("tag"), py::arg("orders") = std::vector<int>{},
        py::arg("lengths") = std::vector<double>{});
  m.def("generalized_triangle", [](const std::string& kind, double a, double b, double g) {
    GeneralizedTriangleSpec spec;
    if (kind == "hexagon") spec.kind = GeneralizedTriangleSpec::Kind::Hexagon;
    else if (kind == "pentagon") spec.kind = GeneralizedTriangleSpec::Kind::Pentagon;
    else if (kind == "quadrilateral") spec.kind = GeneralizedTriangleSpec::Kind::Quadrilateral;
    else if (kind == "triangle") spec.kind = GeneralizedTriangleSpec::Kind::Triangle;
    else fail(ErrorCode::BadInput, "kind must be hexagon|pentagon|quadrilateral|triangle");
    spec.alpha = a;
    spec.beta = b;
    spec.gamma = g;
    auto q = generalized_triangle(spec);
    return py::make_tuple(q.is_sinh ? "sinh" : "cosh", q.value, q.measure);
  });

  // surgery
  m.def("paste", [](const Structure& s1, int b1, const Structure& s2, int b2, double u, double v) {
    PasteParams pp;
    pp.u = u;
    pp.v = v;
    return paste(s1, b1, s2, b2, pp);
  }, py::arg("s1"), py::arg("end1"), py::arg("s2"), py::arg("end2"), py::arg("u") = 0.0,
     py::arg("v") = 0.0);
  m.def("paste_self", [](const Structure& s, int b1, int b2, double u, double v) {
    PasteParams pp;
    pp.u = u;
    pp.v = v;
    return paste(s, b1, s, b2, pp);
  });
  m.def("crosscap", [](const Structure& s, int b) { return crosscap(s, b); });
  m.def("silver", [](const Structure& s, int b) { return silver(s, b); });
  m.def("fold", [](const Structure& s, int b, py::object param) {
    std::optional<double> p;
    if (!param.is_none()) p = param.cast<double>();
    return fold(s, b, p);
  }, py::arg("s"), py::arg("end"), py::arg("param") = py::none());

  // developing maps
  m.def("enumerate_tiles", [](const Structure& s, int depth) {
    return enumerate_tiles(s, depth);
  });
  m.def("convexity_check", [](const Tessellation& t) { return convexity_check(t); });
  m.def("render_svg", [](const Tessellation& t, int width) {
    SvgStyle st;
    st.width_px = width;
    return render_svg(t, st);
  }, py::arg("t"), py::arg("width") = 800);
  m.def("structure_from_json", [](const std::string& text) {
    return structure_from_json(json::parse(text));
  });
}
