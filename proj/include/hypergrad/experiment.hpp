#pragma once

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypergrad/frechet.hpp"
#include "hypergrad/poincare.hpp"

// The benchmark harness: runs the sample -> reference-solve -> paired-trials
// protocol over a learning-rate sweep, aggregates the mean-steps table with
// win rates and fitted slopes, and emits per-trial records plus derived
// artifacts (scatter pairs, the retraction-error curve, single-trial traces).
namespace hypergrad {

enum class Method { Exponential, Retraction };
const char* method_name(Method m);

enum class OutputFormat { Csv, Json };

struct SweepConfig {
  std::size_t dim = 2;
  double r_max = 3.0;
  std::size_t num_centers = 50;
  std::size_t collections_per_center = 50;
  std::size_t cloud_size = 5;
  std::vector<double> alphas = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  double arrival_tol = 1e-4;
  std::size_t step_cap = 1000;
  std::uint64_t master_seed = 42;
  std::size_t worker_count = 0;  // 0 = hardware concurrency
  std::string output_path = "sweep.csv";
  OutputFormat format = OutputFormat::Csv;
};

// One steps-to-arrival measurement. steps is -1 when the trial never entered
// the arrival radius (NotArrived).
struct TrialRecord {
  std::size_t center_index = 0;
  std::size_t collection_index = 0;
  double alpha = 0.0;
  Method method = Method::Exponential;
  long steps = -1;
  double final_distance = 0.0;
  std::size_t reference_iterations = 0;
};

// Mean steps per (method, alpha) with inf when any trial failed to arrive,
// plus per-alpha win rate (exponential strictly first) and through-origin
// least-squares slope of exponential vs retraction steps over complete pairs.
struct SweepTable {
  std::vector<double> alphas;
  std::vector<double> exponential_mean;  // may hold +inf
  std::vector<double> retraction_mean;
  std::vector<double> win_rate;  // NaN where no complete pairs exist
  std::vector<double> slope;
};

struct SweepResult {
  std::vector<TrialRecord> records;
  SweepTable table;
  std::size_t reference_failures = 0;
};

// Validates the config (alphas non-empty and positive, arrival_tol > 0,
// counts >= 1), samples all inputs up front, and runs every (cloud, alpha,
// method) trial: one shared reference solve per cloud, both methods from
// theta0 = the cloud's first point. Trials are distributed over workers into
// preallocated slots indexed by cloud, so records and table are
// byte-deterministic in master_seed regardless of worker_count. Clouds whose
// reference solve fails are excluded from records and counted.
SweepResult run_sweep(const SweepConfig& config);

// Recomputes the aggregate table from records (used by run_sweep itself and
// by the CSV re-aggregation consistency check).
SweepTable aggregate_table(const std::vector<TrialRecord>& records,
                           const std::vector<double>& alphas);

// CSV: header center,collection,alpha,method,steps,final_distance with reals
// at 17 significant digits; or a JSON array of objects with the same fields.
void emit_records(const std::vector<TrialRecord>& records, OutputFormat format,
                  const std::string& path);
void write_records(const std::vector<TrialRecord>& records, OutputFormat format,
                   std::ostream& out);

// Parses CSV produced by write_records (reference_iterations is not part of
// the serialized form and comes back as 0).
std::vector<TrialRecord> parse_records_csv(std::istream& in);

// The table as JSON: per method, alpha -> mean (numbers; inf encoded as the
// string "inf"), plus win_rate and slope blocks.
std::string table_to_json(const SweepTable& table);
void emit_table(const SweepTable& table, const std::string& path);

struct ScatterData {
  std::vector<std::pair<long, long>> pairs;  // (exponential, retraction)
  double win_rate = 0.0;
  double slope = 0.0;
};

// Per-cloud (exponential, retraction) step pairs at one alpha, NotArrived
// pairs excluded; win rate and through-origin slope over what remains. An
// alpha with no complete pairs yields an empty result and a warning on
// stderr.
ScatterData emit_scatter(const std::vector<TrialRecord>& records, double alpha);

// retraction_error over d_values at the given step length; throws if the
// values fail to be monotone non-decreasing in d.
std::vector<std::pair<double, double>> emit_retraction_error_curve(
    const std::vector<double>& d_values, double step, int directions = 360);

// One trial's iterate sequence in ball coordinates (for external plotting):
// samples a single cloud, solves the reference, and replays the chosen
// method from the first cloud point.
std::vector<PoincarePoint> run_trace(Method method, double alpha, double r_max,
                                     std::size_t cloud_size, double tol,
                                     std::size_t cap, std::uint64_t seed);

}  // namespace hypergrad
