#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lemniscate/bifurcation.hpp"
#include "lemniscate/cli.hpp"
#include "lemniscate/complex_structure.hpp"
#include "lemniscate/constructions.hpp"
#include "lemniscate/error.hpp"
#include "lemniscate/level_set.hpp"
#include "lemniscate/merge_tree.hpp"
#include "lemniscate/report.hpp"
#include "lemniscate/solver.hpp"
#include "lemniscate/stability.hpp"

namespace py = pybind11;
using namespace lemniscate;

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

PointConfiguration config_from_array(const RowMat& pts) {
  std::vector<Vec> v;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) v.push_back(pts.row(i).transpose());
  return PointConfiguration(std::move(v));
}

RowMat points_array(const PointConfiguration& cfg) {
  RowMat m(cfg.r(), cfg.dimension());
  for (int k = 0; k < cfg.r(); ++k) m.row(k) = cfg.point(k).transpose();
  return m;
}

py::object parse_json(const json& j) { return py::module_::import("json").attr("loads")(dump_json(j, -1)); }

}  // namespace

PYBIND11_MODULE(_lemniscate, m) {
  m.doc() = "Critical points and level-set topology of logarithmic potentials";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<PoleEvaluation>(m, "PoleEvaluation", base.ptr());
  py::register_exception<TheoremViolation>(m, "TheoremViolation", base.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed", base.ptr());

  py::class_<PointConfiguration>(m, "PointConfiguration")
      .def(py::init(&config_from_array), py::arg("points"))
      .def_property_readonly("r", &PointConfiguration::r)
      .def_property_readonly("dimension", &PointConfiguration::dimension)
      .def_property_readonly("diameter", &PointConfiguration::diameter)
      .def_property_readonly("points", &points_array)
      .def("__repr__", [](const PointConfiguration& c) {
        return "<PointConfiguration r=" + std::to_string(c.r()) + " N=" + std::to_string(c.dimension()) + ">";
      });

  m.def("potential", &potential, py::arg("config"), py::arg("x"));
  m.def("gradient", &gradient, py::arg("config"), py::arg("x"));
  m.def("hessian", &hessian, py::arg("config"), py::arg("x"));
  m.def("affine_span_dimension", &affine_span_dimension, py::arg("config"));
  m.def(
      "hull_membership",
      [](const PointConfiguration& cfg, const Vec& x) {
        const auto h = hull_membership(cfg, x);
        py::dict d;
        d["inside"] = h.inside;
        d["margin"] = h.margin;
        d["determinate"] = h.determinate;
        d["witness_weights"] = h.witness_weights ? py::cast(*h.witness_weights) : py::none();
        return d;
      },
      py::arg("config"), py::arg("x"));

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("grad_tol", &SolverOptions::grad_tol)
      .def_readwrite("dedup_radius", &SolverOptions::dedup_radius)
      .def_readwrite("eig_zero_threshold", &SolverOptions::eig_zero_threshold)
      .def_readwrite("max_newton_iters", &SolverOptions::max_newton_iters)
      .def_readwrite("grid_density", &SolverOptions::grid_density)
      .def_readwrite("random_seed_count", &SolverOptions::random_seed_count)
      .def_readwrite("fixed_point_starts", &SolverOptions::fixed_point_starts)
      .def_readwrite("rng_seed", &SolverOptions::rng_seed)
      .def_readwrite("saddle_pass", &SolverOptions::saddle_pass);

  py::class_<CriticalPoint>(m, "CriticalPoint")
      .def_readonly("location", &CriticalPoint::location)
      .def_readonly("value", &CriticalPoint::value)
      .def_readonly("spectrum", &CriticalPoint::spectrum)
      .def_readonly("negativity", &CriticalPoint::negativity)
      .def_readonly("nullity", &CriticalPoint::nullity)
      .def_readonly("positivity", &CriticalPoint::positivity)
      .def_readonly("hull_margin", &CriticalPoint::hull_margin)
      .def_property_readonly("kind", [](const CriticalPoint& p) { return to_string(p.kind); });

  py::class_<CriticalSet>(m, "CriticalSet")
      .def_readonly("points", &CriticalSet::points)
      .def_readonly("r", &CriticalSet::r)
      .def_readonly("h", &CriticalSet::h)
      .def_readonly("s", &CriticalSet::s)
      .def_readonly("degenerate", &CriticalSet::degenerate)
      .def_readonly("span_dimension", &CriticalSet::span_dimension)
      .def_readonly("local_morse", &CriticalSet::local_morse)
      .def_readonly("global_morse", &CriticalSet::global_morse)
      .def("report", [](const CriticalSet& s) { return parse_json(to_json(s)); });

  m.def("find_critical_points", &find_critical_points, py::arg("config"), py::arg("options") = SolverOptions{});
  m.def("classify", &classify, py::arg("config"), py::arg("x"), py::arg("options") = SolverOptions{});

  py::class_<Construction>(m, "Construction")
      .def_readonly("family", &Construction::family)
      .def_readonly("config", &Construction::config)
      .def_readonly("parameters", &Construction::parameters)
      .def_property_readonly("reference", [](const Construction& c) { return parse_json(to_json(c.reference)); });
  m.def("construct_family", &construct_family, py::arg("name"),
        py::arg("parameters") = std::map<std::string, std::vector<double>>{});
  m.def("family_names", &family_names);
  m.def("preassigned_minima", &preassigned_minima, py::arg("minima"), py::arg("saddles"));
  m.def(
      "aux_polynomial",
      [](const std::vector<double>& r, const std::vector<double>& s) {
        const auto a = build_aux_polynomial(r, s);
        py::dict d;
        d["coefficients"] = a.P.coefficients();
        std::vector<std::pair<double, double>> f;
        for (const auto& x : a.factors) f.emplace_back(x.a, x.b);
        d["factors"] = f;
        d["min_value"] = a.min_value;
        return d;
      },
      py::arg("minima"), py::arg("saddles"));

  m.def("fubini_levi", &fubini_levi, py::arg("z"), py::arg("w"));
  m.def(
      "levi_form", [](const PointConfiguration& cfg, const Vec& x) { return levi_form_of_potential(cfg, x).matrix; },
      py::arg("config"), py::arg("x"));
  m.def(
      "decompose_hessian",
      [](const Mat& H) {
        const auto d = decompose_hessian(H, ComplexStructure::standard(static_cast<int>(H.rows() / 2)));
        return py::make_tuple(d.Q, d.L.matrix);
      },
      py::arg("hessian"), "Q and L for the standard complex structure");

  m.def(
      "bifurcation_sweep",
      [](const std::function<RowMat(double)>& family, const std::string& range, const SolverOptions& opts) {
        const auto res = bifurcation_sweep([&](double t) { return config_from_array(family(t)); },
                                           ParameterRange::parse(range), opts);
        py::list out;
        for (const auto& b : res.bifurcations) {
          py::dict d;
          d["parameter"] = b.parameter;
          d["branch"] = b.branch;
          d["location"] = b.location;
          out.append(d);
        }
        return out;
      },
      py::arg("family"), py::arg("range"), py::arg("options") = SolverOptions{},
      "family(t) returns an (r, N) array of points; range is start:stop:step");

  m.def(
      "perturbation_stability",
      [](const PointConfiguration& cfg, double delta, int trials, std::uint64_t seed) {
        const auto r = perturbation_stability(cfg, delta, trials, {}, seed);
        py::dict d;
        d["original_h"] = r.original_h;
        d["preserved"] = r.preserved;
        d["global_morse"] = r.global_morse_count;
        d["trials"] = static_cast<int>(r.trials.size());
        d["radius_estimate"] = r.stability_radius_estimate;
        return d;
      },
      py::arg("config"), py::arg("delta"), py::arg("trials") = 20, py::arg("seed") = 1);

  m.def(
      "extract_level_set",
      [](const PointConfiguration& cfg, double c, int resolution) {
        const auto mesh = extract_level_set(cfg, c, resolution);
        RowMat V(static_cast<Eigen::Index>(mesh.vertices.size()), 3);
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) V.row(static_cast<Eigen::Index>(i)) = mesh.vertices[i].transpose();
        Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor> F(static_cast<Eigen::Index>(mesh.triangles.size()), 3);
        for (std::size_t i = 0; i < mesh.triangles.size(); ++i)
          for (int k = 0; k < 3; ++k) F(static_cast<Eigen::Index>(i), k) = mesh.triangles[i][static_cast<std::size_t>(k)];
        std::vector<int> euler;
        std::vector<bool> watertight;
        for (const auto& t : euler_characteristic(mesh)) {
          euler.push_back(t.euler);
          watertight.push_back(t.watertight);
        }
        py::dict d;
        d["vertices"] = V;
        d["triangles"] = F;
        d["component_count"] = mesh.component_count;
        d["euler"] = euler;
        d["watertight"] = watertight;
        return d;
      },
      py::arg("config"), py::arg("c"), py::arg("resolution") = 128);

  m.def(
      "merge_tree",
      [](const PointConfiguration& cfg, const CriticalSet& set) { return parse_json(to_json(merge_tree(cfg, set))); },
      py::arg("config"), py::arg("critical_set"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = kVersion;
}
