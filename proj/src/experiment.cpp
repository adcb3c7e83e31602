#include "hypergrad/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"

#include "hypergrad/sampling.hpp"

namespace hypergrad {

namespace {

constexpr const char* kCsvHeader =
    "center,collection,alpha,method,steps,final_distance";

// 17 significant digits round-trip any double exactly.
std::string real17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Shortest decimal that round-trips; used for alpha keys in the table JSON.
std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(const std::string& field, const char* what, std::size_t line) {
  T value{};
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::runtime_error("records CSV line " + std::to_string(line) +
                             ": bad " + what + " '" + field + "'");
  }
  return value;
}

// One cloud's (exponential, retraction) steps at a fixed alpha, keyed and
// ordered by (center, collection). Only pairs where both methods arrived
// survive; win rate and slope are defined over these.
std::vector<std::pair<long, long>> complete_pairs(
    const std::vector<TrialRecord>& records, double alpha) {
  std::map<std::pair<std::size_t, std::size_t>,
           std::pair<std::optional<long>, std::optional<long>>>
      by_cloud;
  for (const TrialRecord& r : records) {
    if (r.alpha != alpha) continue;
    auto& slot = by_cloud[{r.center_index, r.collection_index}];
    (r.method == Method::Exponential ? slot.first : slot.second) = r.steps;
  }
  std::vector<std::pair<long, long>> pairs;
  pairs.reserve(by_cloud.size());
  for (const auto& [key, steps] : by_cloud) {
    if (steps.first && steps.second && *steps.first >= 0 && *steps.second >= 0) {
      pairs.emplace_back(*steps.first, *steps.second);
    }
  }
  return pairs;
}

// Fraction of pairs where the exponential update arrives strictly first, and
// the through-origin least-squares slope of exponential steps against
// retraction steps. NaN when undefined.
std::pair<double, double> win_and_slope(
    const std::vector<std::pair<long, long>>& pairs) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (pairs.empty()) return {nan, nan};
  std::size_t wins = 0;
  double cross = 0.0;
  double ret_sq = 0.0;
  for (const auto& [e, r] : pairs) {
    if (e < r) ++wins;
    cross += static_cast<double>(e) * static_cast<double>(r);
    ret_sq += static_cast<double>(r) * static_cast<double>(r);
  }
  const double win = static_cast<double>(wins) / static_cast<double>(pairs.size());
  return {win, ret_sq > 0.0 ? cross / ret_sq : nan};
}

void validate_config(const SweepConfig& config) {
  if (config.dim != 2) {
    throw std::invalid_argument("sweep: only dimension 2 is supported");
  }
  if (!(config.r_max > 0.0)) {
    throw std::invalid_argument("sweep: r_max must be positive");
  }
  if (config.num_centers < 1 || config.collections_per_center < 1 ||
      config.cloud_size < 1) {
    throw std::invalid_argument("sweep: all counts must be >= 1");
  }
  if (config.alphas.empty()) {
    throw std::invalid_argument("sweep: at least one alpha is required");
  }
  for (double a : config.alphas) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("sweep: alphas must be positive");
    }
  }
  if (!(config.arrival_tol > 0.0)) {
    throw std::invalid_argument("sweep: arrival tolerance must be positive");
  }
  if (config.step_cap < 1) {
    throw std::invalid_argument("sweep: step cap must be >= 1");
  }
}

}  // namespace

const char* method_name(Method m) {
  return m == Method::Exponential ? "exponential" : "retraction";
}

SweepResult run_sweep(const SweepConfig& config) {
  validate_config(config);

  const std::vector<ExperimentSample> samples = sample_experiment_inputs(
      config.r_max, config.num_centers, config.collections_per_center,
      config.cloud_size, SeededRng(config.master_seed));

  const std::size_t num_clouds =
      config.num_centers * config.collections_per_center;

  // One slot per cloud, written by exactly one worker; the slot layout (not
  // the scheduling) fixes the record order, so any worker count produces the
  // same bytes.
  struct CloudSlot {
    bool reference_failed = false;
    std::vector<TrialRecord> records;
  };
  std::vector<CloudSlot> slots(num_clouds);

  auto run_cloud = [&](std::size_t idx) {
    const std::size_t c = idx / config.collections_per_center;
    const std::size_t k = idx % config.collections_per_center;
    const PointCloud& cloud = samples[c].clouds[k];
    CloudSlot& slot = slots[idx];

    std::optional<FrechetMean> ref;
    try {
      ref = solve_reference(cloud);
    } catch (const std::runtime_error&) {
      slot.reference_failed = true;
      return;
    }

    const HyperboloidPoint& theta0 = cloud[0];
    slot.records.reserve(2 * config.alphas.size());
    for (double alpha : config.alphas) {
      const DescentOutcome e = descend_exponential(
          cloud, theta0, alpha, ref->point, config.arrival_tol, config.step_cap);
      const DescentOutcome r = descend_retraction(
          cloud, theta0, alpha, ref->point, config.arrival_tol, config.step_cap);
      TrialRecord te;
      te.center_index = c;
      te.collection_index = k;
      te.alpha = alpha;
      te.method = Method::Exponential;
      te.steps = e.steps ? static_cast<long>(*e.steps) : -1;
      te.final_distance = e.final_distance_to_target;
      te.reference_iterations = ref->iterations;
      slot.records.push_back(te);
      TrialRecord tr = te;
      tr.method = Method::Retraction;
      tr.steps = r.steps ? static_cast<long>(*r.steps) : -1;
      tr.final_distance = r.final_distance_to_target;
      slot.records.push_back(tr);
    }
  };

  std::size_t workers = config.worker_count;
  if (workers == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw != 0 ? hw : 1;
  }
  workers = std::min(workers, num_clouds);

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> worker_errors(workers);
  auto drain = [&](std::size_t widx) {
    try {
      for (;;) {
        const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
        if (idx >= num_clouds) return;
        run_cloud(idx);
      }
    } catch (...) {
      worker_errors[widx] = std::current_exception();
    }
  };
  if (workers <= 1) {
    drain(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain, w);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : worker_errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepResult result;
  result.records.reserve(2 * config.alphas.size() * num_clouds);
  for (const CloudSlot& slot : slots) {
    if (slot.reference_failed) {
      ++result.reference_failures;
      continue;
    }
    result.records.insert(result.records.end(), slot.records.begin(),
                          slot.records.end());
  }
  result.table = aggregate_table(result.records, config.alphas);
  return result;
}

SweepTable aggregate_table(const std::vector<TrialRecord>& records,
                           const std::vector<double>& alphas) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  SweepTable table;
  table.alphas = alphas;
  table.exponential_mean.assign(alphas.size(), nan);
  table.retraction_mean.assign(alphas.size(), nan);
  table.win_rate.assign(alphas.size(), nan);
  table.slope.assign(alphas.size(), nan);

  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const double alpha = alphas[a];
    for (Method m : {Method::Exponential, Method::Retraction}) {
      double sum = 0.0;
      std::size_t count = 0;
      bool any_not_arrived = false;
      for (const TrialRecord& r : records) {
        if (r.alpha != alpha || r.method != m) continue;
        ++count;
        if (r.steps < 0) {
          any_not_arrived = true;
        } else {
          sum += static_cast<double>(r.steps);
        }
      }
      double mean = nan;
      if (count > 0) {
        mean = any_not_arrived ? inf : sum / static_cast<double>(count);
      }
      (m == Method::Exponential ? table.exponential_mean
                                : table.retraction_mean)[a] = mean;
    }
    const auto [win, slope] = win_and_slope(complete_pairs(records, alpha));
    table.win_rate[a] = win;
    table.slope[a] = slope;
  }
  return table;
}

void write_records(const std::vector<TrialRecord>& records, OutputFormat format,
                   std::ostream& out) {
  if (format == OutputFormat::Csv) {
    out << kCsvHeader << '\n';
    for (const TrialRecord& r : records) {
      out << r.center_index << ',' << r.collection_index << ','
          << real17(r.alpha) << ',' << method_name(r.method) << ',' << r.steps
          << ',' << real17(r.final_distance) << '\n';
    }
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const TrialRecord& r : records) {
    nlohmann::ordered_json o;
    o["center"] = r.center_index;
    o["collection"] = r.collection_index;
    o["alpha"] = r.alpha;
    o["method"] = method_name(r.method);
    o["steps"] = r.steps;
    o["final_distance"] = r.final_distance;
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

void emit_records(const std::vector<TrialRecord>& records, OutputFormat format,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_records(records, format, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<TrialRecord> parse_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("records CSV: missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw std::runtime_error("records CSV: unexpected header '" + line + "'");
  }
  std::vector<TrialRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6) {
      throw std::runtime_error("records CSV line " + std::to_string(lineno) +
                               ": expected 6 fields, got " +
                               std::to_string(fields.size()));
    }
    TrialRecord r;
    r.center_index = parse_number<std::size_t>(fields[0], "center", lineno);
    r.collection_index =
        parse_number<std::size_t>(fields[1], "collection", lineno);
    r.alpha = parse_number<double>(fields[2], "alpha", lineno);
    if (fields[3] == "exponential") {
      r.method = Method::Exponential;
    } else if (fields[3] == "retraction") {
      r.method = Method::Retraction;
    } else {
      throw std::runtime_error("records CSV line " + std::to_string(lineno) +
                               ": unknown method '" + fields[3] + "'");
    }
    r.steps = parse_number<long>(fields[4], "steps", lineno);
    r.final_distance =
        parse_number<double>(fields[5], "final_distance", lineno);
    records.push_back(r);
  }
  return records;
}

std::string table_to_json(const SweepTable& table) {
  auto cell = [](double v) -> nlohmann::ordered_json {
    if (std::isinf(v)) return "inf";
    if (std::isnan(v)) return nullptr;
    return v;
  };
  nlohmann::ordered_json exp_block, ret_block, win_block, slope_block;
  for (std::size_t i = 0; i < table.alphas.size(); ++i) {
    const std::string key = shortest(table.alphas[i]);
    exp_block[key] = cell(table.exponential_mean[i]);
    ret_block[key] = cell(table.retraction_mean[i]);
    win_block[key] = cell(table.win_rate[i]);
    slope_block[key] = cell(table.slope[i]);
  }
  nlohmann::ordered_json j;
  j["exponential"] = std::move(exp_block);
  j["retraction"] = std::move(ret_block);
  j["win_rate"] = std::move(win_block);
  j["slope"] = std::move(slope_block);
  return j.dump(2);
}

void emit_table(const SweepTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << table_to_json(table) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

ScatterData emit_scatter(const std::vector<TrialRecord>& records,
                         double alpha) {
  ScatterData data;
  data.pairs = complete_pairs(records, alpha);
  if (data.pairs.empty()) {
    std::cerr << "warning: no complete (exponential, retraction) pairs at "
                 "alpha = "
              << alpha << "\n";
    return data;
  }
  const auto [win, slope] = win_and_slope(data.pairs);
  data.win_rate = win;
  data.slope = slope;
  return data;
}

std::vector<std::pair<double, double>> emit_retraction_error_curve(
    const std::vector<double>& d_values, double step, int directions) {
  if (d_values.empty()) {
    throw std::invalid_argument("retraction-error curve: no d values");
  }
  for (std::size_t i = 1; i < d_values.size(); ++i) {
    if (!(d_values[i] > d_values[i - 1])) {
      throw std::invalid_argument(
          "retraction-error curve: d values must be strictly increasing");
    }
  }
  std::vector<std::pair<double, double>> curve;
  curve.reserve(d_values.size());
  for (double d : d_values) {
    curve.emplace_back(d, retraction_error(d, step, directions));
  }
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].second < curve[i - 1].second) {
      throw std::runtime_error(
          "retraction error decreased from d = " + real17(curve[i - 1].first) +
          " to d = " + real17(curve[i].first));
    }
  }
  return curve;
}

std::vector<PoincarePoint> run_trace(Method method, double alpha, double r_max,
                                     std::size_t cloud_size, double tol,
                                     std::size_t cap, std::uint64_t seed) {
  const std::vector<ExperimentSample> samples =
      sample_experiment_inputs(r_max, 1, 1, cloud_size, SeededRng(seed));
  const PointCloud& cloud = samples[0].clouds[0];
  const FrechetMean ref = solve_reference(cloud);
  const DescentOutcome out =
      method == Method::Exponential
          ? descend_exponential(cloud, cloud[0], alpha, ref.point, tol, cap,
                                true)
          : descend_retraction(cloud, cloud[0], alpha, ref.point, tol, cap,
                               true);
  std::vector<PoincarePoint> trace;
  trace.reserve(out.iterates.size());
  for (const HyperboloidPoint& p : out.iterates) trace.push_back(to_ball(p));
  return trace;
}

}  // namespace hypergrad
