// Command-line front end: compute truncated variations of CSV time series,
// simulate diffusion paths, evaluate the closed-form constants, and run the
// Monte Carlo validation experiments.
//
// Exit codes (stable contract):
//   0  success (for `experiment`: all verdicts pass)
//   2  I/O or parse failure (unreadable files, malformed CSV/JSON)
//   3  invalid argument (bad flag values, c <= 0, bad config fields)
//   4  experiment ran but at least one verdict failed (report still written)

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tvar/asymptotics.hpp"
#include "tvar/csv.hpp"
#include "tvar/experiments.hpp"
#include "tvar/path.hpp"
#include "tvar/simulate.hpp"
#include "tvar/truncvar.hpp"

namespace {

using tvar::ExperimentConfig;

constexpr const char* kOutputDirEnv = "TVAR_OUTPUT_DIR";

/// Directory for default-named outputs; explicit --output paths are used
/// verbatim.
std::string default_output_dir() {
  const char* dir = std::getenv(kOutputDirEnv);
  return (dir != nullptr && *dir != '\0') ? std::string(dir) : std::string(".");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

// --------------------------------------------------------------------------
// compute
// --------------------------------------------------------------------------

struct ComputeArgs {
  std::string input;
  double c = 0.0;
  std::string output = "-";
  std::string process_file;
  std::string tube_file;
};

int cmd_compute(const ComputeArgs& args) {
  if (args.c == 0.0) {
    std::cerr << "compute: c = 0 is the plain total variation; pass c > 0 "
                 "(the report always includes a 'total_variation' field)\n";
    return 3;
  }
  if (!(std::isfinite(args.c) && args.c > 0.0)) {
    std::cerr << "compute: threshold c must be positive and finite\n";
    return 3;
  }

  const tvar::SamplePath path = args.input == "-"
                                    ? tvar::read_series_csv(std::cin)
                                    : tvar::read_series_csv_file(args.input);
  const tvar::TruncVarTotals totals = tvar::truncvar_total(path, args.c);

  nlohmann::ordered_json doc;
  doc["input"] = args.input;
  doc["c"] = args.c;
  doc["n_samples"] = path.size();
  doc["utv"] = totals.utv;
  doc["dtv"] = totals.dtv;
  doc["tv"] = totals.tv;
  doc["total_variation"] = tvar::total_variation(path);

  if (!args.process_file.empty()) {
    const tvar::TruncVarCurve curve = tvar::truncvar_curve(path, args.c);
    std::ofstream out(args.process_file);
    if (!out) {
      throw std::runtime_error("cannot open '" + args.process_file +
                               "' for writing");
    }
    tvar::write_curve_csv(out, curve);
    doc["process_csv"] = args.process_file;
  }
  if (!args.tube_file.empty()) {
    const tvar::LazyTube tube = tvar::tube_functions(path, args.c);
    std::ofstream out(args.tube_file);
    if (!out) {
      throw std::runtime_error("cannot open '" + args.tube_file +
                               "' for writing");
    }
    tvar::write_tube_csv(out, path, tube);
    doc["tube_csv"] = args.tube_file;
    doc["alpha0"] = tube.alpha0;
  }

  const std::string text = doc.dump(2) + "\n";
  if (args.output == "-") {
    std::cout << text;
  } else {
    write_text_file(args.output, text);
  }
  return 0;
}

// --------------------------------------------------------------------------
// simulate
// --------------------------------------------------------------------------

struct SimulateArgs {
  std::string family = "bm_drift";
  double mu = 0.0;
  double theta = 1.0;
  double mu_bar = 0.0;
  double sigma0 = 1.0;
  double eps = 0.0;
  double horizon = 1.0;
  double dt = 1e-3;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string output = "-";
};

tvar::DiffusionSpec spec_from_args(const SimulateArgs& args) {
  switch (tvar::DiffusionSpec::family_from_name(args.family)) {
    case tvar::DiffusionSpec::Family::bm_drift:
      return tvar::DiffusionSpec::bm_drift(args.mu);
    case tvar::DiffusionSpec::Family::ou:
      return tvar::DiffusionSpec::ou(args.theta, args.mu_bar);
    case tvar::DiffusionSpec::Family::bounded_sine:
      return tvar::DiffusionSpec::bounded_sine(args.sigma0, args.eps, args.mu);
  }
  throw std::invalid_argument("unreachable family");
}

int cmd_simulate(const SimulateArgs& args) {
  const tvar::DiffusionSpec spec = spec_from_args(args);
  const tvar::GridSpec grid{args.horizon, args.dt};
  const tvar::SamplePath path =
      tvar::sample_diffusion_euler(spec, grid, args.seed, args.stream);

  std::cerr << "algorithm_id: " << tvar::kAlgorithmId << "\n";
  if (args.output == "-") {
    tvar::write_series_csv(std::cout, path);
  } else {
    tvar::write_series_csv_file(args.output, path);
  }
  return 0;
}

// --------------------------------------------------------------------------
// constants
// --------------------------------------------------------------------------

struct ConstantsArgs {
  double mu = 0.0;
  double c = 0.0;
};

int cmd_constants(const ConstantsArgs& args) {
  const double mu = args.mu;
  const double c = args.c;
  // Argument validation (c > 0, finiteness) lives in the library calls.
  std::ostringstream out;
  out << "m_mu_c = " << tvar::format_double(tvar::m_mu_c(mu, c)) << "\n"
      << "n_mu_c = " << tvar::format_double(tvar::n_mu_c(mu, c)) << "\n"
      << "sigma2_mu_c = " << tvar::format_double(tvar::sigma2_mu_c(mu, c))
      << "\n"
      << "rho2_mu_c = " << tvar::format_double(tvar::rho2_mu_c(mu, c)) << "\n"
      << "mean_renewal_time = "
      << tvar::format_double(tvar::mean_renewal_time(mu, c)) << "\n"
      << "mean_Z[a=1,b=0] = "
      << tvar::format_double(tvar::mean_Z(1.0, 0.0, mu, c)) << "\n";
  std::cout << out.str();
  return 0;
}

// --------------------------------------------------------------------------
// experiment
// --------------------------------------------------------------------------

struct ExperimentArgs {
  std::string kind;
  std::string config_file;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_paths;
  std::optional<double> dt;
  std::optional<double> horizon;
};

int cmd_experiment(const ExperimentArgs& args) {
  ExperimentConfig config;
  if (!args.config_file.empty()) {
    std::ifstream in(args.config_file);
    if (!in) {
      throw std::runtime_error("cannot open config '" + args.config_file +
                               "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    config = tvar::config_from_json(buf.str());
    if (!args.kind.empty() &&
        ExperimentConfig::kind_from_name(args.kind) != config.kind) {
      throw std::invalid_argument(
          "experiment: --kind disagrees with the config file");
    }
  } else if (!args.kind.empty()) {
    config =
        ExperimentConfig::defaults(ExperimentConfig::kind_from_name(args.kind));
  } else {
    throw std::invalid_argument(
        "experiment: give --kind and/or --config FILE");
  }

  if (args.seed) config.seed.seed = *args.seed;
  if (args.n_paths) config.n_paths = *args.n_paths;
  if (args.dt) config.grid.dt = *args.dt;
  if (args.horizon) config.grid.horizon = *args.horizon;
  config.validate();

  const tvar::ExperimentReport report = tvar::run_experiment(config);

  const std::string out_path =
      !args.output.empty()
          ? args.output
          : default_output_dir() + "/report_" + config.kind_name() + ".json";
  if (out_path != "-") {
    write_text_file(out_path, tvar::report_to_json(report));
  } else {
    std::cout << tvar::report_to_json(report);
  }

  for (const auto& w : report.warnings) {
    std::cout << "warning: " << w << "\n";
  }
  for (const auto& r : report.records) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
              << ": estimate=" << tvar::format_double(r.estimate)
              << " target=" << tvar::format_double(r.target)
              << " tolerance=" << tvar::format_double(r.tolerance) << " ["
              << r.provenance << "]\n";
  }
  const bool ok = report.all_pass();
  std::cout << (ok ? "RESULT: all records pass" : "RESULT: FAILED records")
            << " (report: " << out_path << ")\n";
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated variation toolkit: exact streaming computation and "
               "Monte Carlo validation of its limit laws"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c_compute = app.add_subcommand(
      "compute", "Truncated variations of a CSV series (header 'time,value')");
  c_compute->add_option("input", compute.input, "input CSV file, '-' = stdin")
      ->required();
  c_compute->add_option("-c,--threshold", compute.c, "threshold c > 0")
      ->required();
  c_compute->add_option("-o,--output", compute.output,
                        "JSON report file, '-' = stdout (default)");
  c_compute->add_option("--emit-process", compute.process_file,
                        "write the cumulative utv/dtv/tv curves as CSV");
  c_compute->add_option("--emit-tube", compute.tube_file,
                        "write the optimal tube functions g0,g as CSV");

  SimulateArgs simulate;
  auto* c_simulate =
      app.add_subcommand("simulate", "Sample a diffusion path on a grid");
  c_simulate->add_option("--family", simulate.family,
                         "bm_drift | ou | bounded_sine");
  c_simulate->add_option("--mu", simulate.mu,
                         "drift (bm_drift, bounded_sine)");
  c_simulate->add_option("--theta", simulate.theta, "ou reversion rate");
  c_simulate->add_option("--mu-bar", simulate.mu_bar, "ou long-run mean");
  c_simulate->add_option("--sigma0", simulate.sigma0,
                         "bounded_sine base volatility");
  c_simulate->add_option("--eps", simulate.eps,
                         "bounded_sine modulation (|eps| < sigma0)");
  c_simulate->add_option("-T,--horizon", simulate.horizon, "time horizon");
  c_simulate->add_option("--dt", simulate.dt, "grid step");
  c_simulate->add_option("--seed", simulate.seed, "RNG seed");
  c_simulate->add_option("--stream", simulate.stream, "RNG substream");
  c_simulate->add_option("-o,--output", simulate.output,
                         "CSV file, '-' = stdout (default)");

  ConstantsArgs constants;
  auto* c_constants = app.add_subcommand(
      "constants", "Closed-form large-time/renewal constants");
  c_constants->add_option("--mu", constants.mu, "drift")->required();
  c_constants->add_option("-c,--threshold", constants.c, "threshold c > 0")
      ->required();

  ExperimentArgs experiment;
  auto* c_experiment = app.add_subcommand(
      "experiment", "Run a Monte Carlo validation suite and write its report");
  c_experiment->add_option(
      "-k,--kind", experiment.kind,
      "oracle | lln | clt | clt_diffusion | large_time | renewal");
  c_experiment->add_option("--config", experiment.config_file,
                           "JSON config (defaults for --kind when omitted)");
  c_experiment->add_option("-o,--output", experiment.output,
                           "report file, '-' = stdout (default: "
                           "$TVAR_OUTPUT_DIR/report_<kind>.json)");
  c_experiment->add_option("--seed", experiment.seed, "override seed value");
  c_experiment->add_option("--n-paths", experiment.n_paths,
                           "override path count");
  c_experiment->add_option("--dt", experiment.dt, "override grid step");
  c_experiment->add_option("--horizon", experiment.horizon,
                           "override horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints CLI11's message
    return rc == 0 ? 0 : 3;     // help/version exit 0, bad flags exit 3
  }

  try {
    if (c_compute->parsed()) return cmd_compute(compute);
    if (c_simulate->parsed()) return cmd_simulate(simulate);
    if (c_constants->parsed()) return cmd_constants(constants);
    if (c_experiment->parsed()) return cmd_experiment(experiment);
    std::cerr << "no subcommand\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
