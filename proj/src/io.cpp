#include "nugap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nugap/version.hpp"

namespace nugap {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double require_number(const json& spec, const char* field) {
  if (!spec.contains(field)) {
    throw std::invalid_argument(std::string("plant spec is missing field '") + field + "'");
  }
  const json& value = spec.at(field);
  if (!value.is_number())
    throw std::invalid_argument(std::string("plant field '") + field + "' must be a number");
  return value.get<double>();
}

std::vector<double> require_coefficients(const json& spec, const char* field) {
  if (!spec.contains(field)) {
    throw std::invalid_argument(std::string("plant spec is missing field '") + field + "'");
  }
  const json& value = spec.at(field);
  if (!value.is_array() || value.empty())
    throw std::invalid_argument(std::string("plant field '") + field +
                                "' must be a nonempty array of ascending coefficients");
  std::vector<double> coeffs;
  coeffs.reserve(value.size());
  for (const json& c : value) {
    if (!c.is_number())
      throw std::invalid_argument(std::string("plant field '") + field +
                                  "' must contain only numbers");
    coeffs.push_back(c.get<double>());
  }
  return coeffs;
}

const char* branch_name(Branch branch) {
  return branch == Branch::norm_branch ? "norm" : "unity";
}

const char* route_name(Route route) {
  return route == Route::limit_route ? "limit" : "fixed_rho";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DelayRationalPlant parse_plant_spec(const json& spec) {
  if (!spec.is_object()) throw std::invalid_argument("plant spec must be a JSON object");
  if (spec.contains("type")) {
    const json& type = spec.at("type");
    if (!type.is_string() || type.get<std::string>() != "delay_rational")
      throw std::invalid_argument("plant field 'type' must be \"delay_rational\"");
  }
  const double delay = spec.contains("delay") ? require_number(spec, "delay") : 0.0;
  const Polynomial num(require_coefficients(spec, "num"));
  const Polynomial den(require_coefficients(spec, "den"));
  return DelayRationalPlant(delay, num, den);
}

DelayRationalPlant parse_plant_spec_text(const std::string& text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("plant spec is not valid JSON: ") + err.what());
  }
  return parse_plant_spec(spec);
}

ordered_json nu_result_to_json(const NuResult& result) {
  ordered_json out;
  out["tool"] = "nugap";
  out["version"] = NUGAP_VERSION;
  out["value"] = result.value;
  out["branch"] = branch_name(result.branch);
  out["route"] = route_name(result.route);
  if (result.rho) out["rho"] = *result.rho;
  out["invertible"] = result.invertible;
  // Fields whose pass did not run serialize as explicit nulls so the report
  // schema is stable across branches.
  out["winding"] = result.winding ? ordered_json(*result.winding) : ordered_json(nullptr);

  ordered_json curve = ordered_json::array();
  for (const CircleScan& scan : result.margin_curve) {
    ordered_json entry;
    entry["r"] = scan.r;
    entry["min_modulus"] = scan.min_modulus;
    if (scan.winding) entry["winding"] = *scan.winding;
    entry["samples_used"] = scan.samples_used;
    entry["converged"] = scan.converged;
    curve.push_back(std::move(entry));
  }
  out["margin_curve"] = std::move(curve);

  if (result.norm_search) {
    ordered_json search;
    search["value"] = result.norm_search->value;
    search["argmax_omega"] = result.norm_search->argmax_omega;
    search["refined"] = result.norm_search->refined;
    search["trace_points"] = static_cast<long>(result.norm_search->trace.size());
    out["norm_search"] = std::move(search);
  } else {
    out["norm_search"] = nullptr;
  }

  ordered_json options;
  options["delta"] = result.options.delta;
  options["r_max"] = result.options.r_max;
  options["stabilization_count"] = result.options.stabilization_count;
  options["omega_max"] = result.options.omega_max;
  options["coarse_n"] = result.options.coarse_n;
  options["initial_n"] = result.options.initial_n;
  options["pair_validation_tol"] = result.options.pair_validation_tol;
  out["options"] = std::move(options);
  return out;
}

std::string margin_curve_csv(const std::vector<CircleScan>& curve) {
  std::ostringstream out;
  out << "r,winding,min_modulus,samples_used\n";
  for (const CircleScan& scan : curve) {
    out << format_double(scan.r) << ',';
    if (scan.winding) out << *scan.winding;
    out << ',' << format_double(scan.min_modulus) << ',' << scan.samples_used << '\n';
  }
  return out.str();
}

std::string sweep_csv(const NormSearchResult& search) {
  std::ostringstream out;
  out << "omega,sigma_max\n";
  for (const auto& [omega, sigma] : search.trace)
    out << format_double(omega) << ',' << format_double(sigma) << '\n';
  return out.str();
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  const std::filesystem::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
    if (!stream) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    stream << text;
    stream.flush();
    if (!stream) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace nugap
