#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "losslin/bounds.hpp"
#include "losslin/cli.hpp"
#include "losslin/errors.hpp"
#include "losslin/export.hpp"
#include "losslin/gaussian.hpp"
#include "losslin/loss.hpp"
#include "losslin/partition.hpp"
#include "losslin/table1.hpp"
#include "losslin/version.hpp"

namespace py = pybind11;
using namespace losslin;

PYBIND11_MODULE(_losslin, m) {
  m.doc() = "Piecewise-linear bounds of the normal first-order loss function";
  m.attr("__version__") = kVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::enum_<Target>(m, "Target").value("loss", Target::loss).value("closs", Target::closs);
  py::enum_<BoundKind>(m, "BoundKind").value("lower", BoundKind::lower).value("upper", BoundKind::upper);

  py::class_<NormalParams>(m, "NormalParams")
      .def(py::init([](double mu, double sigma) {
             NormalParams p{mu, sigma};
             p.validate();
             return p;
           }),
           py::arg("mu") = 0.0, py::arg("sigma") = 1.0)
      .def_readonly("mu", &NormalParams::mu)
      .def_readonly("sigma", &NormalParams::sigma)
      .def("__repr__", [](const NormalParams& p) {
        std::ostringstream s;
        s << "NormalParams(mu=" << p.mu << ", sigma=" << p.sigma << ")";
        return s.str();
      });

  // gaussian
  m.def("phi", &gaussian::phi, py::arg("x"));
  m.def("cdf", &gaussian::cdf, py::arg("x"));
  m.def("inv_cdf", &gaussian::inv_cdf, py::arg("p"));

  // loss functions
  m.def("closs_std", &closs_std, py::arg("x"));
  m.def("loss_std", &loss_std, py::arg("x"));
  m.def("closs", [](double x, double mu, double sigma) { return closs(x, {mu, sigma}); }, py::arg("x"),
        py::arg("mu") = 0.0, py::arg("sigma") = 1.0);
  m.def("loss", [](double x, double mu, double sigma) { return loss(x, {mu, sigma}); }, py::arg("x"),
        py::arg("mu") = 0.0, py::arg("sigma") = 1.0);
  m.def(
      "closs_generic",
      [](double x, std::function<double(double)> cdf, double mean, double support_low, double support_high,
         double scale, double tol) {
        GenericDistribution dist{std::move(cdf), mean, support_low, support_high, scale};
        return closs_generic(x, dist, tol);
      },
      py::arg("x"), py::arg("cdf"), py::arg("mean"), py::arg("support_low") = -INFINITY,
      py::arg("support_high") = INFINITY, py::arg("scale") = 1.0, py::arg("tol") = kDefaultQuadratureTol);

  // partition
  py::class_<Partition>(m, "Partition")
      .def_readonly("upper_limits", &Partition::upper_limits)
      .def_readonly("masses", &Partition::masses)
      .def_readonly("cond_means", &Partition::cond_means)
      .def_readonly("errors", &Partition::errors)
      .def_readonly("max_error", &Partition::max_error)
      .def_property_readonly("n_regions", &Partition::n_regions)
      .def_property_readonly("n_segments", &Partition::n_segments)
      .def("error_spread", &Partition::error_spread)
      .def_static("from_boundaries",
                  [](const std::vector<double>& interior) { return Partition::from_boundaries(interior); });
  m.def("breakpoint_error", &breakpoint_error, py::arg("index"), py::arg("partition"));
  m.def(
      "solve_minimax",
      [](int n_regions, double tol) {
        SolverOptions options;
        options.tol = tol;
        return solve_minimax(n_regions, options);
      },
      py::arg("n_regions"), py::arg("tol") = SolverOptions{}.tol);
  m.def(
      "parameter_table",
      [](int max_segments, double tol) {
        SolverOptions options;
        options.tol = tol;
        return parameter_table(max_segments, options);
      },
      py::arg("max_segments"), py::arg("tol") = SolverOptions{}.tol);
  m.def("embedded_partition", &embedded_partition, py::arg("segments"));

  // bounds
  py::class_<PiecewiseLinear>(m, "PiecewiseLinear")
      .def_property_readonly("kind", &PiecewiseLinear::kind)
      .def_property_readonly("target", &PiecewiseLinear::target)
      .def_property_readonly("scale", &PiecewiseLinear::scale)
      .def_property_readonly("breakpoints", &PiecewiseLinear::breakpoints)
      .def_property_readonly("segments",
                             [](const PiecewiseLinear& pl) {
                               py::list out;
                               for (const Segment& s : pl.segments()) {
                                 out.append(py::make_tuple(s.slope, s.intercept, s.domain_low, s.domain_high));
                               }
                               return out;
                             })
      .def("__call__", &PiecewiseLinear::evaluate, py::arg("x"))
      .def("evaluate", &PiecewiseLinear::evaluate, py::arg("x"))
      .def("__len__", &PiecewiseLinear::segment_count);

  const auto scale_of = [](double mu, double sigma) {
    NormalParams p{mu, sigma};
    p.validate();
    return p;
  };
  m.def(
      "build_lower",
      [scale_of](const Partition& p, double mu, double sigma, Target target) {
        return build_lower(p, scale_of(mu, sigma), target);
      },
      py::arg("partition"), py::arg("mu") = 0.0, py::arg("sigma") = 1.0, py::arg("target") = Target::closs);
  m.def(
      "build_upper_shift",
      [scale_of](const Partition& p, double mu, double sigma, Target target) {
        return build_upper_shift(p, scale_of(mu, sigma), target);
      },
      py::arg("partition"), py::arg("mu") = 0.0, py::arg("sigma") = 1.0, py::arg("target") = Target::closs);
  m.def(
      "build_upper_chord",
      [scale_of](const std::vector<double>& bps, double mu, double sigma, Target target) {
        return build_upper_chord(bps, scale_of(mu, sigma), target);
      },
      py::arg("breakpoints"), py::arg("mu") = 0.0, py::arg("sigma") = 1.0, py::arg("target") = Target::closs);
  m.def("upper_error_location", &upper_error_location, py::arg("slope"));
  m.def(
      "max_gap",
      [](const PiecewiseLinear& pl, int n_grid) {
        const GapReport g = max_gap(pl, n_grid);
        return py::make_tuple(g.max_gap, g.argmax, g.min_signed_gap);
      },
      py::arg("bound"), py::arg("n_grid") = 100000);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("lower", &BoundReport::lower)
      .def_readonly("upper", &BoundReport::upper)
      .def_readonly("max_error", &BoundReport::max_error)
      .def_readonly("lower_error_locations", &BoundReport::lower_error_locations)
      .def_readonly("upper_error_locations", &BoundReport::upper_error_locations)
      .def_readonly("partition", &BoundReport::partition);
  m.def(
      "build_report",
      [scale_of](const Partition& p, double mu, double sigma, Target target) {
        return build_report(p, scale_of(mu, sigma), target);
      },
      py::arg("partition"), py::arg("mu") = 0.0, py::arg("sigma") = 1.0, py::arg("target") = Target::closs);

  // export
  m.def("to_json", py::overload_cast<const BoundReport&>(&to_json), py::arg("report"));
  m.def("to_csv_table", &to_csv_table, py::arg("partitions"), py::arg("significant_digits") = 17);
  m.def("to_lp_constraints", &to_lp_constraints, py::arg("report"), py::arg("var_x") = "x",
        py::arg("var_l") = "L", py::arg("kind") = BoundKind::lower);
  m.def("plot_data", &plot_data, py::arg("report"), py::arg("n_points") = 1001);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line interface in-process; returns (exit_code, stdout, stderr).");
}
