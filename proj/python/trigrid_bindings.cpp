#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trigrid/analysis.hpp"
#include "trigrid/cli.hpp"
#include "trigrid/error.hpp"
#include "trigrid/grid_paths.hpp"
#include "trigrid/instances.hpp"
#include "trigrid/wrp_oracle.hpp"

namespace py = pybind11;
using namespace trigrid;

namespace {

using CornerTuple = std::pair<int, int>;
using PointTuple = std::pair<double, double>;

CornerTuple tup(Corner c) { return {c.i, c.j}; }
Corner corner(CornerTuple t) { return {t.first, t.second}; }

std::vector<PointTuple> points(const std::vector<Point2>& poly) {
  std::vector<PointTuple> out;
  out.reserve(poly.size());
  for (const Point2& p : poly) out.emplace_back(p.x, p.y);
  return out;
}

std::vector<CornerTuple> corners(const std::vector<Corner>& cs) {
  std::vector<CornerTuple> out;
  out.reserve(cs.size());
  for (const Corner& c : cs) out.push_back(tup(c));
  return out;
}

py::dict corner_path(const CornerPath& p) {
  py::dict d;
  d["cost"] = p.path.cost;
  d["corners"] = corners(p.corners);
  d["polyline"] = points(p.path.polyline);
  return d;
}

py::dict oracle(const OracleResult& r) {
  py::dict d;
  d["cost"] = r.path.cost;
  d["polyline"] = points(r.path.polyline);
  d["level"] = r.level_used.level;
  d["converged"] = r.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_trigrid, m) {
  m.doc() = "Weighted shortest paths on a triangular tessellation";

  static py::exception<Error> error(m, "TrigridError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("rows", [](const Instance& i) { return i.tessellation().rows(); })
      .def_property_readonly("cols", [](const Instance& i) { return i.tessellation().cols(); })
      .def_property("source", [](const Instance& i) { return tup(i.source); },
                    [](Instance& i, CornerTuple c) { i.source = corner(c); })
      .def_property("target", [](const Instance& i) { return tup(i.target); },
                    [](Instance& i, CornerTuple c) { i.target = corner(c); })
      .def_readwrite("label", &Instance::label)
      .def_readonly("offset_i", &Instance::offset_i)
      .def("weight", [](const Instance& i, int r, int c) { return i.weights.value(Cell{r, c}); })
      .def("set_weight",
           [](Instance& i, int r, int c, double w) {
             if (std::isinf(w)) i.weights.set(Cell{r, c}, Weight::infinite());
             else i.weights.set(Cell{r, c}, w);
           })
      .def("__repr__", [](const Instance& i) {
        std::ostringstream s;
        s << "<Instance " << i.label << " " << i.tessellation().rows() << "x" << i.tessellation().cols() << ">";
        return s.str();
      });

  m.def("gen_strip", &gen_strip, py::arg("k"));
  m.def("gen_random", &gen_random, py::arg("rows"), py::arg("cols"), py::arg("seed"), py::arg("weight_low") = 0.1,
        py::arg("weight_high") = 10.0, py::arg("inf_prob") = 0.0);
  m.def("gen_two_weight_maze", &gen_two_weight_maze, py::arg("rows"), py::arg("cols"), py::arg("seed"),
        py::arg("wall_prob") = 0.2);
  m.def("parse_instance", [](const std::string& text) { return parse_instance(text); });
  m.def("serialize_instance", &serialize_instance);
  m.def("export_svg", [](const Instance& inst) { return export_svg(inst, {}); });

  m.def("shortest_grid_path",
        [](const Instance& i) { return corner_path(shortest_grid_path(i.source, i.target, i.weights)); });
  m.def("shortest_vertex_path",
        [](const Instance& i) { return corner_path(shortest_vertex_path(i.source, i.target, i.weights)); });
  m.def("approx_shortest_path",
        [](const Instance& i, int level) {
          return oracle(approx_shortest_path(i.source, i.target, i.weights, SteinerLevel{level}));
        },
        py::arg("instance"), py::arg("level"));
  m.def("refine_until",
        [](const Instance& i, double rel_tol, int max_level) {
          return oracle(refine_until(i.source, i.target, i.weights, rel_tol, max_level));
        },
        py::arg("instance"), py::arg("rel_tol") = 1e-6, py::arg("max_level") = 7);

  m.def("crossing_path", [](const Instance& i) {
    const OracleResult sp = refine_until(i.source, i.target, i.weights);
    return corners(crossing_path(sp.path.polyline, i.tessellation()).corners);
  });

  m.def("ratio_report",
        [](const Instance& i, double rel_tol, int max_level) {
          const RatioReport r = ratio_report(i.weights, i.source, i.target, OracleConfig{rel_tol, max_level});
          py::dict d;
          d["sgp"] = r.sgp_cost;
          d["svp"] = r.svp_cost;
          d["sp"] = r.sp_cost;
          d["sgp_sp"] = r.sgp_sp;
          d["svp_sp"] = r.svp_sp;
          d["sgp_svp"] = r.sgp_svp;
          d["x_cost"] = r.x_cost;
          d["max_poly_ratio"] = r.max_poly_ratio;
          d["histogram"] = std::vector<int>(r.histogram.begin(), r.histogram.end());
          d["level"] = r.level.level;
          d["crossing_path"] = corners(r.crossing.corners);
          d["analysis_error"] = r.analysis_error;
          return d;
        },
        py::arg("instance"), py::arg("rel_tol") = 1e-6, py::arg("max_level") = 7);

  m.def("search_p2_anomaly",
        [](std::uint64_t seed, int trials) {
          const AnomalyResult r = search_p2_anomaly(seed, trials);
          py::dict d;
          d["trials"] = r.trials;
          d["samples_with_p2"] = r.samples_with_p2;
          if (r.best) {
            d["x_ratio"] = r.best->x_ratio;
            d["shortcut_ratio"] = r.best->shortcut_ratio;
          }
          return d;
        },
        py::arg("seed"), py::arg("trials"));

  m.def("law_of_cosines_dist", &law_of_cosines_dist);
  m.def("svp_lower_bound_constant", &svp_lower_bound_constant);
  m.def("svp_lower_bound_offset", &svp_lower_bound_offset);

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "trigrid");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
