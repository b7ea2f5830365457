// Batch front end: plant-spec ingestion, metric computation, sweep dumps,
// factorization reports, and normalization checks for sampled factor tables.
//
// Exit status contract (stable, for scripting):
//   0  conclusive result
//   1  input error (bad flags, unreadable files, invalid plants)
//   2  inconclusive computation (winding did not stabilize, numerical failure)

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"

#include "nugap/errors.hpp"
#include "nugap/hinf_norm.hpp"
#include "nugap/io.hpp"
#include "nugap/ncf.hpp"
#include "nugap/nu_metric.hpp"
#include "nugap/version.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

nugap::DelayRationalPlant load_plant(const std::string& path) {
  try {
    return nugap::parse_plant_spec_text(read_file(path));
  } catch (const std::invalid_argument& err) {
    throw std::invalid_argument(path + ": " + err.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  nugap::write_text_atomic(out_path, text);
}

struct MetricFlags {
  std::optional<double> rho;
  nugap::MetricOptions options;
  std::string out;
  std::string format = "json";
};

void add_metric_flags(CLI::App* cmd, MetricFlags& flags, bool with_rho) {
  if (with_rho)
    cmd->add_option("--rho", flags.rho,
                    "fixed-annulus route: assess every schedule circle with radius in (rho, 1)");
  cmd->add_option("--delta", flags.options.delta, "invertibility margin threshold")
      ->capture_default_str();
  cmd->add_option("--r-max", flags.options.r_max, "last schedule radius, in [0.99, 1)")
      ->capture_default_str();
  cmd->add_option("--stabilize", flags.options.stabilization_count,
                  "consecutive tail circles that must agree")
      ->capture_default_str();
  cmd->add_option("--omega-max", flags.options.omega_max, "top of the norm-search frequency grid")
      ->capture_default_str();
  cmd->add_option("--out", flags.out, "write output to this path (atomic); default stdout");
}

nugap::NormSearchOptions norm_options(const nugap::MetricOptions& options) {
  nugap::NormSearchOptions out;
  out.omega_max = options.omega_max;
  out.coarse_n = options.coarse_n;
  return out;
}

int cmd_metric(const std::string& path1, const std::string& path2, const MetricFlags& flags) {
  const nugap::DelayRationalPlant p1 = load_plant(path1);
  const nugap::DelayRationalPlant p2 = load_plant(path2);
  const nugap::NuResult result =
      flags.rho ? nugap::nu_metric_fixed_rho(p1, p2, *flags.rho, flags.options)
                : nugap::nu_metric(p1, p2, flags.options);
  if (flags.format == "csv") {
    emit(nugap::margin_curve_csv(result.margin_curve), flags.out);
  } else {
    emit(nugap::nu_result_to_json(result).dump(2) + "\n", flags.out);
  }
  return 0;
}

int cmd_sweep(const std::string& path1, const std::string& path2, const MetricFlags& flags) {
  const nugap::CoprimePair g1 =
      nugap::normalized_coprime_factorization(load_plant(path1));
  const nugap::CoprimePair g2 =
      nugap::normalized_coprime_factorization(load_plant(path2));
  const nugap::NuResult result = nugap::nu_metric(g1, g2, flags.options);
  const nugap::NormSearchResult search =
      result.norm_search ? *result.norm_search
                         : nugap::hinf_norm(nugap::parallel_residual(g1, g2),
                                            norm_options(flags.options));

  const std::string prefix = flags.out.empty() ? "nugap" : flags.out;
  const std::string sweep_path = prefix + ".sweep.csv";
  const std::string margin_path = prefix + ".margin.csv";
  nugap::write_text_atomic(sweep_path, nugap::sweep_csv(search));
  nugap::write_text_atomic(margin_path, nugap::margin_curve_csv(result.margin_curve));

  ordered_json summary = nugap::nu_result_to_json(result);
  summary["sweep_file"] = sweep_path;
  summary["margin_file"] = margin_path;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_ncf(const std::string& path, const std::string& out) {
  const nugap::DelayRationalPlant plant = load_plant(path);
  const nugap::CoprimePair pair = nugap::normalized_coprime_factorization(plant);
  const nugap::SisoFactorData& data = *pair.siso();
  const double residual = nugap::validate_normalization(pair, nugap::default_omega_grid());

  ordered_json report;
  report["tool"] = "nugap";
  report["version"] = NUGAP_VERSION;
  report["N"] = {{"delay", data.delay},
                 {"num", data.num.coefficients()},
                 {"den", data.spectral_den.coefficients()}};
  report["D"] = {{"delay", 0.0},
                 {"num", data.den.coefficients()},
                 {"den", data.spectral_den.coefficients()}};
  report["spectral_den"] = data.spectral_den.coefficients();
  report["residual"] = residual;
  emit(report.dump(2) + "\n", out);
  return 0;
}

std::complex<double> parse_entry(const json& entry, const char* table) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
    throw std::invalid_argument(std::string("table '") + table +
                                "' entries must be [re, im] number pairs");
  return {entry[0].get<double>(), entry[1].get<double>()};
}

Eigen::MatrixXcd parse_matrix(const json& sample, const char* table) {
  if (!sample.is_array() || sample.empty())
    throw std::invalid_argument(std::string("table '") + table +
                                "' samples must be nonempty arrays of rows");
  const std::size_t rows = sample.size();
  const std::size_t cols = sample[0].is_array() ? sample[0].size() : 0;
  if (cols == 0)
    throw std::invalid_argument(std::string("table '") + table + "' rows must be nonempty arrays");
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = sample[i];
    if (!row.is_array() || row.size() != cols)
      throw std::invalid_argument(std::string("table '") + table + "' has ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_entry(row[j], table);
  }
  return m;
}

int cmd_check(const std::string& path, double tol, const std::string& out) {
  json table;
  try {
    table = json::parse(read_file(path));
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(path + ": not valid JSON: " + err.what());
  }
  for (const char* field : {"omega", "N", "D", "Ntilde", "Dtilde"}) {
    if (!table.contains(field) || !table.at(field).is_array())
      throw std::invalid_argument(std::string("factor table is missing array field '") + field +
                                  "'");
  }
  const std::size_t n = table.at("omega").size();
  for (const char* field : {"N", "D", "Ntilde", "Dtilde"}) {
    if (table.at(field).size() != n)
      throw std::invalid_argument(std::string("table '") + field +
                                  "' length does not match 'omega'");
  }
  if (n == 0) throw std::invalid_argument("factor table has no samples");

  double max_residual = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::MatrixXcd N = parse_matrix(table.at("N")[k], "N");
    const Eigen::MatrixXcd D = parse_matrix(table.at("D")[k], "D");
    const Eigen::MatrixXcd Nt = parse_matrix(table.at("Ntilde")[k], "Ntilde");
    const Eigen::MatrixXcd Dt = parse_matrix(table.at("Dtilde")[k], "Dtilde");
    const auto p = N.rows();
    const auto m = N.cols();
    if (D.rows() != m || D.cols() != m)
      throw std::invalid_argument("table 'D' must be square with side matching N's columns");
    if (Nt.rows() != p || Nt.cols() != m)
      throw std::invalid_argument("table 'Ntilde' must match N's shape");
    if (Dt.rows() != p || Dt.cols() != p)
      throw std::invalid_argument("table 'Dtilde' must be square with side matching N's rows");

    Eigen::MatrixXcd G(p + m, m);
    G.topRows(p) = N;
    G.bottomRows(m) = D;
    Eigen::MatrixXcd Gt(p, p + m);
    Gt.leftCols(p) = -Dt;
    Gt.rightCols(m) = Nt;

    const Eigen::MatrixXcd right = G.adjoint() * G - Eigen::MatrixXcd::Identity(m, m);
    const Eigen::MatrixXcd left = Gt * Gt.adjoint() - Eigen::MatrixXcd::Identity(p, p);
    max_residual = std::max({max_residual, nugap::sigma_max(right), nugap::sigma_max(left)});
  }

  const bool pass = max_residual <= tol;
  ordered_json report;
  report["tool"] = "nugap";
  report["version"] = NUGAP_VERSION;
  report["points"] = n;
  report["max_residual"] = max_residual;
  report["tol"] = tol;
  report["pass"] = pass;
  emit(report.dump(2) + "\n", out);
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nu-gap metric toolkit for delay-rational plants"};
  app.set_version_flag("--version", NUGAP_VERSION);
  app.require_subcommand(1);

  std::string plant1, plant2, table_path;
  MetricFlags metric_flags, sweep_flags;
  std::string ncf_out, check_out;
  double check_tol = 1e-6;

  CLI::App* metric = app.add_subcommand(
      "metric", "nu-metric between two plants; JSON report or margin-curve CSV");
  metric->add_option("plant1", plant1, "first plant spec (JSON file)")->required();
  metric->add_option("plant2", plant2, "second plant spec (JSON file)")->required();
  add_metric_flags(metric, metric_flags, true);
  metric->add_option("--format", metric_flags.format, "json (full report) or csv (margin curve)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "frequency sweep and margin curve files for a plant pair");
  sweep->add_option("plant1", plant1, "first plant spec (JSON file)")->required();
  sweep->add_option("plant2", plant2, "second plant spec (JSON file)")->required();
  add_metric_flags(sweep, sweep_flags, false);

  CLI::App* ncf = app.add_subcommand(
      "ncf", "normalized coprime factorization report for one plant");
  ncf->add_option("plant", plant1, "plant spec (JSON file)")->required();
  ncf->add_option("--out", ncf_out, "write output to this path (atomic); default stdout");

  CLI::App* check = app.add_subcommand(
      "check", "validate a sampled factor table {omega, N, D, Ntilde, Dtilde}");
  check->add_option("table", table_path, "factor table (JSON file, entries as [re, im] pairs)")
      ->required();
  check->add_option("--tol", check_tol, "max allowed normalization residual")
      ->capture_default_str();
  check->add_option("--out", check_out, "write output to this path (atomic); default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (metric->parsed()) return cmd_metric(plant1, plant2, metric_flags);
    if (sweep->parsed()) return cmd_sweep(plant1, plant2, sweep_flags);
    if (ncf->parsed()) return cmd_ncf(plant1, ncf_out);
    if (check->parsed()) return cmd_check(table_path, check_tol, check_out);
  } catch (const nugap::InconclusiveError& err) {
    std::cerr << "inconclusive: " << err.what() << "\n";
    return 2;
  } catch (const nugap::WindingError& err) {
    std::cerr << "inconclusive: " << err.what() << "\n";
    return 2;
  } catch (const nugap::EvaluationError& err) {
    std::cerr << "inconclusive: " << err.what() << "\n";
    return 2;
  } catch (const nugap::FactorizationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
