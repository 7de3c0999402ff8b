#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "woms/bessel_params.hpp"
#include "woms/boundaries.hpp"
#include "woms/errors.hpp"
#include "woms/experiment.hpp"
#include "woms/hitting_laws.hpp"
#include "woms/special_functions.hpp"
#include "woms/validation.hpp"

namespace py = pybind11;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

woms::BesselParams dim(int d) { return woms::BesselParams::from_dimension(d); }

py::dict run(const std::string& algorithm, int dimension, double level, double x0, double eps,
             double gamma, double kappa, double beta0, double beta1, double slope,
             double delta_min, double a, double b, double c, double dt, double horizon,
             const std::string& curve, double alpha, std::int64_t n, std::uint64_t seed,
             int workers, std::int64_t step_cap, const std::string& out_csv,
             const std::string& out_json) {
  woms::ExperimentConfig cfg;
  cfg.algorithm = woms::parse_algorithm(algorithm);
  cfg.dimension = dimension;
  cfg.level = level;
  cfg.x0 = x0;
  cfg.eps = eps;
  cfg.gamma = gamma;
  cfg.kappa = kappa;
  cfg.beta0 = beta0;
  cfg.beta1 = beta1;
  cfg.slope = slope;
  cfg.delta_min = delta_min;
  cfg.cir_a = a;
  cfg.cir_b = b;
  cfg.cir_c = c;
  cfg.dt = dt;
  cfg.horizon = horizon;
  cfg.curve = woms::parse_curve_kind(curve);
  cfg.alpha = alpha;
  cfg.n = n;
  cfg.seed = seed;
  cfg.workers = workers;
  cfg.step_cap = step_cap;
  cfg.out_csv = out_csv;
  cfg.out_json = out_json;

  woms::ExperimentResult result;
  {
    py::gil_scoped_release release;
    result = woms::run_experiment(cfg);
    woms::write_outputs(result);
  }
  std::vector<std::int64_t> index, steps;
  std::vector<double> time, radial;
  for (const auto& s : result.samples) {
    index.push_back(s.sample_index);
    time.push_back(s.time);
    radial.push_back(s.radial_position);
    steps.push_back(s.steps);
  }
  py::dict samples;
  samples["sample_index"] = index;
  samples["time"] = time;
  samples["radial_position"] = radial;
  samples["steps"] = steps;
  py::dict out;
  out["report"] = py::module_::import("json").attr("loads")(woms::report_to_json(result.report));
  out["samples"] = samples;
  return out;
}

}  // namespace

PYBIND11_MODULE(pywoms, m) {
  m.doc() = "Walk on moving spheres: hitting times of Bessel and CIR processes";

  py::register_exception<woms::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<woms::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<woms::StepCapExceeded>(m, "StepCapExceeded", PyExc_RuntimeError);

  m.def("ln_gamma", &woms::ln_gamma, py::arg("x"));
  m.def("bessel_i", &woms::bessel_i, py::arg("nu"), py::arg("z"));
  m.def("gamma_q", &woms::reg_upper_gamma_q, py::arg("alpha"), py::arg("x"),
        "Regularized upper incomplete gamma function");
  m.def("gamma_p", &woms::reg_lower_gamma_p, py::arg("alpha"), py::arg("x"),
        "Regularized lower incomplete gamma function");

  m.def("t_max", [](double a, int d) { return woms::t_max(a, dim(d)); }, py::arg("a"),
        py::arg("dim"));
  m.def("psi", [](double a, int d, double t) { return woms::psi(a, dim(d), t); }, py::arg("a"),
        py::arg("dim"), py::arg("t"));
  m.def("p0_density", [](int d, double t, double x) { return woms::p0_density(dim(d), t, x); },
        py::arg("dim"), py::arg("t"), py::arg("x"));
  m.def("hitting_density", [](double a, int d, double t) {
    return woms::density_family1(a, dim(d), t);
  }, py::arg("a"), py::arg("dim"), py::arg("t"), "Density of the first passage through psi_a");
  m.def("hitting_cdf", [](double a, int d, double t) { return woms::cdf_family1(a, dim(d), t); },
        py::arg("a"), py::arg("dim"), py::arg("t"));
  m.def("laplace_transform_level", [](double level, int d, double lambda) {
    return woms::laplace_transform_level(level, dim(d), lambda);
  }, py::arg("level"), py::arg("dim"), py::arg("lam") = 1.0,
     "E exp(-lam T) for the level hitting time from the origin");

  m.def("run", &run, "Run a batch experiment; returns the report and the samples",
        py::arg("algorithm") = "a2", py::arg("dim") = 2, py::arg("level") = 1.0,
        py::arg("x0") = 0.0, py::arg("eps") = 1e-3, py::arg("gamma") = woms::kDefaultGamma,
        py::arg("kappa") = woms::kDefaultKappa, py::arg("beta0") = 1.0, py::arg("beta1") = 0.5,
        py::arg("slope") = 0.1, py::arg("delta_min") = kNaN, py::arg("a") = 2.0,
        py::arg("b") = 0.5, py::arg("c") = 2.0, py::arg("dt") = woms::kDefaultEulerDt,
        py::arg("horizon") = kNaN, py::arg("curve") = "sqrt", py::arg("alpha") = kNaN,
        py::arg("n") = 1000, py::arg("seed") = 1, py::arg("workers") = 1,
        py::arg("step_cap") = 10'000'000, py::arg("out_csv") = "", py::arg("out_json") = "");

  m.def("run_criterion", [](int id, std::uint64_t seed) {
    woms::SuiteOptions options;
    options.seed = seed;
    woms::CriterionResult r;
    {
      py::gil_scoped_release release;
      r = woms::run_criterion(id, options);
    }
    py::dict out;
    out["id"] = r.id;
    out["title"] = r.title;
    out["passed"] = r.passed;
    out["detail"] = r.detail;
    return out;
  }, py::arg("id"), py::arg("seed") = woms::SuiteOptions{}.seed);
}
