#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hypergrad/experiment.hpp"

namespace {

using namespace hypergrad;

std::string real17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string mean_cell(double v) {
  if (std::isnan(v)) return "-";
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string rate_cell(double v) {
  if (!std::isfinite(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

void print_table(const SweepTable& t, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof(line), "%7s %13s %12s %10s %8s\n", "alpha",
                "exponential", "retraction", "win_rate", "slope");
  out << line;
  for (std::size_t i = 0; i < t.alphas.size(); ++i) {
    std::snprintf(line, sizeof(line), "%7.3g %13s %12s %10s %8s\n",
                  t.alphas[i], mean_cell(t.exponential_mean[i]).c_str(),
                  mean_cell(t.retraction_mean[i]).c_str(),
                  rate_cell(t.win_rate[i]).c_str(),
                  rate_cell(t.slope[i]).c_str());
    out << line;
  }
}

// sweep.csv -> sweep.table.json (the extension after the last path segment
// is replaced; a path without one gets the suffix appended).
std::string table_path_for(const std::string& records_path) {
  const std::size_t slash = records_path.find_last_of('/');
  const std::size_t dot = records_path.find_last_of('.');
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash)) {
    return records_path + ".table.json";
  }
  return records_path.substr(0, dot) + ".table.json";
}

int run_sweep_command(SweepConfig config, const std::string& format_str) {
  config.format =
      format_str == "json" ? OutputFormat::Json : OutputFormat::Csv;
  std::cerr << "master seed: " << config.master_seed << "\n";
  const SweepResult result = run_sweep(config);
  if (result.reference_failures > 0) {
    std::cerr << "warning: " << result.reference_failures
              << " reference solve(s) failed; their clouds were excluded\n";
  }
  emit_records(result.records, config.format, config.output_path);
  const std::string table_path = table_path_for(config.output_path);
  emit_table(result.table, table_path);
  print_table(result.table, std::cout);
  std::cout << "records: " << config.output_path << "\n"
            << "table:   " << table_path << "\n";
  return 0;
}

int run_retraction_error_command(double step, double d_max, int d_steps,
                                 int directions) {
  if (d_steps < 1) {
    throw std::invalid_argument("retraction-error: --d-steps must be >= 1");
  }
  if (!(d_max >= 0.0)) {
    throw std::invalid_argument("retraction-error: --d-max must be >= 0");
  }
  std::vector<double> d_values;
  d_values.reserve(static_cast<std::size_t>(d_steps));
  if (d_steps == 1) {
    d_values.push_back(d_max);
  } else {
    for (int i = 0; i < d_steps; ++i) {
      d_values.push_back(d_max * i / (d_steps - 1));
    }
  }
  const auto curve = emit_retraction_error_curve(d_values, step, directions);
  std::cout << "d,worst_error\n";
  for (const auto& [d, err] : curve) {
    std::cout << real17(d) << ',' << real17(err) << '\n';
  }
  return 0;
}

int run_trace_command(const std::string& method_str, double alpha,
                      double r_max, std::size_t points, double tol,
                      std::size_t cap, std::uint64_t seed) {
  const Method method = method_str == "retraction" ? Method::Retraction
                                                   : Method::Exponential;
  std::cerr << "master seed: " << seed << "\n";
  const std::vector<PoincarePoint> trace =
      run_trace(method, alpha, r_max, points, tol, cap, seed);
  std::cout << "step,y1,y2\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    std::cout << k;
    for (std::size_t i = 0; i < trace[k].size(); ++i) {
      std::cout << ',' << real17(trace[k][i]);
    }
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential-map vs retraction descent on the hyperbolic "
               "plane: steps-to-arrival benchmark and diagnostics"};
  app.require_subcommand(1);

  SweepConfig config;
  std::string format_str = "csv";
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run the paired steps-to-arrival sweep");
  sweep->add_option("--dim", config.dim,
                    "Manifold dimension (only 2 is supported)");
  sweep->add_option("--r-max", config.r_max, "Sampling disc radius");
  sweep->add_option("--centers", config.num_centers, "Number of disc centers");
  sweep->add_option("--collections", config.collections_per_center,
                    "Point clouds per center");
  sweep->add_option("--points", config.cloud_size, "Points per cloud");
  sweep->add_option("--alphas", config.alphas, "Learning rates to sweep")
      ->delimiter(',');
  sweep->add_option("--tol", config.arrival_tol, "Arrival radius");
  sweep->add_option("--cap", config.step_cap, "Step cap per trial");
  sweep->add_option("--seed", config.master_seed, "Master seed");
  sweep->add_option("--threads", config.worker_count,
                    "Worker threads (0 = all hardware threads)");
  sweep->add_option("--out", config.output_path, "Records output path");
  sweep->add_option("--format", format_str, "Records format")
      ->check(CLI::IsMember({"csv", "json"}));

  double step = 1.0;
  double d_max = 3.0;
  int d_steps = 7;
  int directions = 360;
  CLI::App* rerr = app.add_subcommand(
      "retraction-error",
      "Worst-case retraction error as a function of distance from origin");
  rerr->add_option("--step", step, "Tangent step length");
  rerr->add_option("--d-max", d_max, "Largest distance from the origin");
  rerr->add_option("--d-steps", d_steps,
                   "Number of evenly spaced distances from 0 to --d-max");
  rerr->add_option("--directions", directions,
                   "Tangent directions swept per distance");

  std::string method_str = "exponential";
  double t_alpha = 0.3;
  double t_r_max = 3.0;
  std::size_t t_points = 5;
  double t_tol = 1e-4;
  std::size_t t_cap = 1000;
  std::uint64_t t_seed = 42;
  CLI::App* trace = app.add_subcommand(
      "trace", "Iterates of a single trial in ball coordinates");
  trace->add_option("--method", method_str, "Update method")
      ->check(CLI::IsMember({"exponential", "retraction"}));
  trace->add_option("--alpha", t_alpha, "Learning rate");
  trace->add_option("--r-max", t_r_max, "Sampling disc radius");
  trace->add_option("--points", t_points, "Points in the cloud");
  trace->add_option("--tol", t_tol, "Arrival radius");
  trace->add_option("--cap", t_cap, "Step cap");
  trace->add_option("--seed", t_seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) return run_sweep_command(config, format_str);
    if (rerr->parsed()) {
      return run_retraction_error_command(step, d_max, d_steps, directions);
    }
    return run_trace_command(method_str, t_alpha, t_r_max, t_points, t_tol,
                             t_cap, t_seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
