#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <sstream>
#include <vector>

#include "nugap/errors.hpp"
#include "nugap/hinf_norm.hpp"
#include "nugap/io.hpp"
#include "nugap/ncf.hpp"
#include "nugap/nu_metric.hpp"
#include "nugap/version.hpp"

namespace py = pybind11;

namespace {

nugap::MetricOptions make_options(double delta, double r_max, int stabilize, double omega_max) {
  nugap::MetricOptions options;
  options.delta = delta;
  options.r_max = r_max;
  options.stabilization_count = stabilize;
  options.omega_max = omega_max;
  return options;
}

py::dict scan_to_dict(const nugap::CircleScan& scan) {
  py::dict out;
  out["r"] = scan.r;
  out["min_modulus"] = scan.min_modulus;
  out["winding"] = scan.winding ? py::cast(*scan.winding) : py::none();
  out["samples_used"] = scan.samples_used;
  out["converged"] = scan.converged;
  return out;
}

py::dict result_to_dict(const nugap::NuResult& result) {
  py::dict out;
  out["value"] = result.value;
  out["branch"] = result.branch == nugap::Branch::norm_branch ? "norm" : "unity";
  out["route"] = result.route == nugap::Route::limit_route ? "limit" : "fixed_rho";
  out["rho"] = result.rho ? py::cast(*result.rho) : py::none();
  out["invertible"] = result.invertible;
  out["winding"] = result.winding ? py::cast(*result.winding) : py::none();
  py::list curve;
  for (const auto& scan : result.margin_curve) curve.append(scan_to_dict(scan));
  out["margin_curve"] = std::move(curve);
  if (result.norm_search) {
    py::dict search;
    search["value"] = result.norm_search->value;
    search["argmax_omega"] = result.norm_search->argmax_omega;
    search["refined"] = result.norm_search->refined;
    search["trace_points"] = result.norm_search->trace.size();
    out["norm_search"] = std::move(search);
  } else {
    out["norm_search"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_nugap, m) {
  m.doc() = "nu-gap metric between delay-rational plants over H-infinity";
  m.attr("__version__") = NUGAP_VERSION;

  py::register_exception<nugap::FactorizationError>(m, "FactorizationError", PyExc_ValueError);
  py::register_exception<nugap::EvaluationError>(m, "EvaluationError", PyExc_ArithmeticError);
  py::register_exception<nugap::WindingError>(m, "WindingError", PyExc_ArithmeticError);
  py::register_exception<nugap::InconclusiveError>(m, "InconclusiveError", PyExc_RuntimeError);

  py::class_<nugap::DelayRationalPlant>(m, "Plant",
                                        "P(s) = exp(-s*delay) * num(s)/den(s), coefficients "
                                        "in ascending order")
      .def(py::init([](double delay, std::vector<double> num, std::vector<double> den) {
             return nugap::DelayRationalPlant(delay, nugap::Polynomial(std::move(num)),
                                              nugap::Polynomial(std::move(den)));
           }),
           py::arg("delay"), py::arg("num"), py::arg("den"))
      .def_property_readonly("delay",
                             [](const nugap::DelayRationalPlant& p) { return p.delay; })
      .def_property_readonly(
          "num", [](const nugap::DelayRationalPlant& p) { return p.num.coefficients(); })
      .def_property_readonly(
          "den", [](const nugap::DelayRationalPlant& p) { return p.den.coefficients(); })
      .def("__call__",
           [](const nugap::DelayRationalPlant& p, std::complex<double> s) {
             return nugap::plant_eval(p, s);
           },
           py::arg("s"))
      .def("__repr__", [](const nugap::DelayRationalPlant& p) {
        std::ostringstream out;
        out << "Plant(delay=" << p.delay << ", num=[";
        for (std::size_t k = 0; k < p.num.coefficients().size(); ++k)
          out << (k ? ", " : "") << p.num.coefficients()[k];
        out << "], den=[";
        for (std::size_t k = 0; k < p.den.coefficients().size(); ++k)
          out << (k ? ", " : "") << p.den.coefficients()[k];
        out << "])";
        return out.str();
      });

  m.def(
      "ncf",
      [](const nugap::DelayRationalPlant& plant) {
        const nugap::CoprimePair pair = nugap::normalized_coprime_factorization(plant);
        const nugap::SisoFactorData& data = *pair.siso();
        py::dict out;
        py::dict N, D;
        N["delay"] = data.delay;
        N["num"] = data.num.coefficients();
        N["den"] = data.spectral_den.coefficients();
        D["delay"] = 0.0;
        D["num"] = data.den.coefficients();
        D["den"] = data.spectral_den.coefficients();
        out["N"] = std::move(N);
        out["D"] = std::move(D);
        out["spectral_den"] = data.spectral_den.coefficients();
        out["residual"] = nugap::validate_normalization(pair, nugap::default_omega_grid());
        return out;
      },
      py::arg("plant"), "Normalized coprime factorization N/D of a plant, with its residual");

  m.def(
      "nu_metric",
      [](const nugap::DelayRationalPlant& p1, const nugap::DelayRationalPlant& p2,
         std::optional<double> rho, double delta, double r_max, int stabilize,
         double omega_max) {
        const nugap::MetricOptions options = make_options(delta, r_max, stabilize, omega_max);
        const nugap::NuResult result = rho
                                           ? nugap::nu_metric_fixed_rho(p1, p2, *rho, options)
                                           : nugap::nu_metric(p1, p2, options);
        return result_to_dict(result);
      },
      py::arg("p1"), py::arg("p2"), py::kw_only(), py::arg("rho") = py::none(),
      py::arg("delta") = 1e-4, py::arg("r_max") = nugap::kDefaultRMax, py::arg("stabilize") = 4,
      py::arg("omega_max") = 1e6,
      "Extended nu-metric between two plants; rho switches to the fixed-annulus route");

  m.def(
      "residual_norm",
      [](const nugap::DelayRationalPlant& p1, const nugap::DelayRationalPlant& p2,
         double omega_max) {
        const nugap::CoprimePair g1 = nugap::normalized_coprime_factorization(p1);
        const nugap::CoprimePair g2 = nugap::normalized_coprime_factorization(p2);
        nugap::NormSearchOptions options;
        options.omega_max = omega_max;
        const nugap::NormSearchResult search =
            nugap::hinf_norm(nugap::parallel_residual(g1, g2), options);
        py::dict out;
        out["value"] = search.value;
        out["argmax_omega"] = search.argmax_omega;
        out["refined"] = search.refined;
        return out;
      },
      py::arg("p1"), py::arg("p2"), py::kw_only(), py::arg("omega_max") = 1e6,
      "Boundary sup norm of Gtilde2*G1 (the candidate metric value)");

  m.def(
      "closed_form_zero_uncertainty",
      [](double T, double b, double a1, double a2) {
        const nugap::ClosedFormResult result =
            nugap::closed_form_zero_uncertainty(T, b, a1, a2);
        py::dict out;
        out["value"] = result.value;
        out["case"] = result.kind == nugap::UncertaintyCase::interior_peak ? "interior_peak"
                                                                           : "zero_peak";
        out["discriminant"] = result.discriminant;
        out["lemma_positive"] = result.lemma_positive;
        out["positivity_margin"] = result.positivity_margin;
        return out;
      },
      py::arg("T"), py::arg("b"), py::arg("a1"), py::arg("a2"),
      "Closed-form metric for plants exp(-sT)(s-a_i)/(s-b)");

  m.def("closed_form_pole_uncertainty", &nugap::closed_form_pole_uncertainty, py::arg("a1"),
        py::arg("a2"), "Closed-form metric for plants exp(-sT) s/(s-a_i)");

  m.def(
      "lemma_positivity_check",
      [](double T, double b, double a1, double a2,
         std::optional<std::vector<std::complex<double>>> points) {
        const std::vector<std::complex<double>> grid =
            points ? *points
                   : nugap::boundary_probe_points({0.9, 0.99, 0.999}, 512, 512, 1e6);
        const nugap::PositivityReport report =
            nugap::lemma_positivity_check(T, b, a1, a2, grid);
        py::dict out;
        out["positive"] = report.positive;
        out["min_real"] = report.min_real;
        out["points"] = report.points;
        return out;
      },
      py::arg("T"), py::arg("b"), py::arg("a1"), py::arg("a2"), py::kw_only(),
      py::arg("points") = py::none(),
      "Numeric positivity of Re det(G1* G2) for the zero-uncertainty family");

  m.def("boundary_probe_points", &nugap::boundary_probe_points, py::arg("radii"),
        py::arg("per_circle"), py::arg("axis_points"), py::arg("omega_max"),
        "Half-plane grid: transported circles plus log-spaced imaginary-axis samples");
}
