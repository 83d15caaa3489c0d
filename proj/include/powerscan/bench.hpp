#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "powerscan/estimators.hpp"
#include "powerscan/sample.hpp"
#include "powerscan/synth.hpp"

namespace powerscan {

enum class Method { scan_all, get_xmin, get_xmin2 };

inline constexpr std::array<Method, 3> kAllMethods = {
    Method::scan_all, Method::get_xmin, Method::get_xmin2};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::scan_all:
      return "scan_all";
    case Method::get_xmin:
      return "get_xmin";
    case Method::get_xmin2:
      return "get_xmin2";
  }
  return "?";
}

inline std::optional<Method> method_from_name(std::string_view name) {
  for (Method m : kAllMethods)
    if (name == method_name(m)) return m;
  return std::nullopt;
}

// How the guess g passed to the fast methods is chosen per grid point:
// either the true xmin of the generating distribution or a fixed value.
struct GuessPolicy {
  enum class Kind { true_xmin, fixed };
  Kind kind = Kind::true_xmin;
  double value = 0.0;

  static GuessPolicy true_xmin() { return GuessPolicy{Kind::true_xmin, 0.0}; }
  static GuessPolicy fixed(double g) { return GuessPolicy{Kind::fixed, g}; }

  double resolve(std::int64_t grid_xmin) const {
    return kind == Kind::true_xmin ? static_cast<double>(grid_xmin) : value;
  }
};

struct ExperimentConfig {
  std::int64_t n;
  double alpha;
  std::vector<std::int64_t> xmin_grid;
  GuessPolicy g_policy;
  int c = 90;
  int k = 5;
  std::vector<std::uint64_t> seeds;
  std::vector<Method> methods;

  void validate() const {
    if (n < 2) throw std::invalid_argument("ExperimentConfig: n must be >= 2");
    if (!(alpha > 1.0))
      throw std::invalid_argument("ExperimentConfig: alpha must be > 1");
    if (xmin_grid.empty())
      throw std::invalid_argument("ExperimentConfig: xmin_grid is empty");
    for (std::size_t i = 0; i < xmin_grid.size(); ++i) {
      if (xmin_grid[i] < 1)
        throw std::invalid_argument("ExperimentConfig: grid xmin must be >= 1");
      if (i > 0 && xmin_grid[i] <= xmin_grid[i - 1])
        throw std::invalid_argument(
            "ExperimentConfig: xmin_grid must be strictly increasing");
    }
    if (g_policy.kind == GuessPolicy::Kind::fixed && !(g_policy.value > 0.0))
      throw std::invalid_argument("ExperimentConfig: fixed guess must be > 0");
    if (c < 1 || c > 100)
      throw std::invalid_argument("ExperimentConfig: c must be in [1, 100]");
    if (k < 1) throw std::invalid_argument("ExperimentConfig: k must be >= 1");
    if (seeds.empty())
      throw std::invalid_argument("ExperimentConfig: need at least one seed");
  }
};

struct AccuracyMetrics {
  double mse;
  double rmse;
  double mae;
};

inline AccuracyMetrics accuracy(const std::vector<double>& estimates,
                                const std::vector<double>& truths) {
  if (estimates.empty() || estimates.size() != truths.size())
    throw std::invalid_argument(
        "accuracy: sequences must have equal nonzero length");
  double sq = 0.0;
  double ab = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = estimates[i] - truths[i];
    sq += d * d;
    ab += std::fabs(d);
  }
  const double n = static_cast<double>(estimates.size());
  const double mse = sq / n;
  return AccuracyMetrics{mse, std::sqrt(mse), ab / n};
}

struct BenchRow {
  Method method;
  std::int64_t true_xmin;
  std::uint64_t seed;
  std::int64_t xmin_hat = 0;
  double alpha_hat = 0.0;
  double wall_time_s = 0.0;
  std::int64_t candidates_evaluated = 0;
  bool stopped_early = false;
  std::string error;  // empty = success

  bool ok() const { return error.empty(); }
};

struct MethodSummary {
  AccuracyMetrics metrics;
  double total_time_s;
  std::int64_t error_count;
};

struct BenchmarkReport {
  ExperimentConfig config;
  int threads = 1;
  std::vector<BenchRow> rows;
  std::vector<std::pair<Method, MethodSummary>> summary;
};

struct RunOptions {
  int threads = 1;
  bool warmup = true;
};

namespace detail {

inline XminEstimate run_method(Method m, const Sample& s, double g, int c,
                               int k) {
  switch (m) {
    case Method::scan_all:
      return scan_all(s, DistanceKind::ks);
    case Method::get_xmin:
      return get_xmin(s, g, c, k);
    case Method::get_xmin2:
      return get_xmin2(s, g, c, k);
  }
  throw std::logic_error("run_method: bad method");
}

// Rows are timed around the estimator call only; the first call of each
// method in a process pays one-time costs (page faults, lazy dynamic
// linking), so it gets an untimed rehearsal on a small throwaway sample.
inline void warm_up_method(Method m) {
  static std::array<std::atomic<bool>, 3> done{};
  auto& flag = done[static_cast<std::size_t>(m)];
  if (flag.load(std::memory_order_acquire)) return;
  try {
    static const Sample warm = sample_eq1(
        SyntheticSpec{2000, 3.0, 30, 0x60de5f23c9b1a5d7ull,
                      BodyKind::eq1_mixture});
    run_method(m, warm, 30.0, 90, 5);
  } catch (...) {
  }
  flag.store(true, std::memory_order_release);
}

// Shortest decimal form that round-trips the exact double, so reports are
// reproducible byte for byte across runs.
inline std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string sanitize_reason(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '"' || ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

}  // namespace detail

// Runs every configured method over the full (grid point, seed) matrix. The
// sample for a cell is generated once and shared by all methods of that
// cell; generation time is not part of any row's wall time. Cells may run on
// several threads, but row order and all non-timing fields depend only on
// the config.
inline BenchmarkReport run_experiment(const ExperimentConfig& config,
                                      const RunOptions& options = {}) {
  config.validate();
  if (options.warmup)
    for (Method m : config.methods) detail::warm_up_method(m);

  const std::size_t n_methods = config.methods.size();
  const std::size_t n_grid = config.xmin_grid.size();
  const std::size_t n_seeds = config.seeds.size();

  BenchmarkReport report;
  report.config = config;
  report.threads = std::max(1, options.threads);
  report.rows.resize(n_methods * n_grid * n_seeds);
  for (std::size_t mi = 0; mi < n_methods; ++mi)
    for (std::size_t gi = 0; gi < n_grid; ++gi)
      for (std::size_t si = 0; si < n_seeds; ++si) {
        auto& row = report.rows[(mi * n_grid + gi) * n_seeds + si];
        row.method = config.methods[mi];
        row.true_xmin = config.xmin_grid[gi];
        row.seed = config.seeds[si];
      }

  auto run_cell = [&](std::size_t cell) {
    const std::size_t gi = cell / n_seeds;
    const std::size_t si = cell % n_seeds;
    const std::int64_t true_xmin = config.xmin_grid[gi];
    const double g = config.g_policy.resolve(true_xmin);

    std::optional<Sample> sample;
    std::string generation_error;
    try {
      sample = sample_eq1(SyntheticSpec{config.n, config.alpha, true_xmin,
                                        config.seeds[si],
                                        BodyKind::eq1_mixture});
    } catch (const std::exception& e) {
      generation_error = e.what();
    }

    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      auto& row = report.rows[(mi * n_grid + gi) * n_seeds + si];
      if (!sample) {
        row.error = generation_error;
        continue;
      }
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const XminEstimate est =
            detail::run_method(config.methods[mi], *sample, g, config.c,
                               config.k);
        const auto t1 = std::chrono::steady_clock::now();
        row.xmin_hat = est.xmin_hat;
        row.alpha_hat = est.alpha_hat;
        row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
        row.candidates_evaluated = est.candidates_evaluated;
        row.stopped_early = est.trace.stopped_early;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  const std::size_t n_cells = n_grid * n_seeds;
  if (report.threads <= 1 || n_cells <= 1 || n_methods == 0) {
    for (std::size_t cell = 0; cell < n_cells; ++cell) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(report.threads),
                              n_cells);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t cell = next.fetch_add(1); cell < n_cells;
             cell = next.fetch_add(1))
          run_cell(cell);
      });
    for (auto& t : pool) t.join();
  }

  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    std::vector<double> estimates;
    std::vector<double> truths;
    double total_time = 0.0;
    std::int64_t errors = 0;
    for (std::size_t gi = 0; gi < n_grid; ++gi)
      for (std::size_t si = 0; si < n_seeds; ++si) {
        const auto& row = report.rows[(mi * n_grid + gi) * n_seeds + si];
        if (!row.ok()) {
          ++errors;
          continue;
        }
        estimates.push_back(static_cast<double>(row.xmin_hat));
        truths.push_back(static_cast<double>(row.true_xmin));
        total_time += row.wall_time_s;
      }
    const AccuracyMetrics metrics =
        estimates.empty()
            ? AccuracyMetrics{std::nan(""), std::nan(""), std::nan("")}
            : accuracy(estimates, truths);
    report.summary.emplace_back(config.methods[mi],
                                MethodSummary{metrics, total_time, errors});
  }
  return report;
}

inline std::string emit_csv(const BenchmarkReport& report) {
  std::string out =
      "method,true_xmin,seed,xmin_hat,alpha_hat,wall_time_s,"
      "candidates_evaluated,stopped_early,error\n";
  for (const auto& row : report.rows) {
    out += method_name(row.method);
    out += ',';
    out += std::to_string(row.true_xmin);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += std::to_string(row.xmin_hat);
    out += ',';
    out += detail::format_double(row.alpha_hat);
    out += ',';
    out += detail::format_double(row.wall_time_s);
    out += ',';
    out += std::to_string(row.candidates_evaluated);
    out += ',';
    out += row.stopped_early ? "true" : "false";
    out += ',';
    out += detail::sanitize_reason(row.error);
    out += '\n';
  }
  return out;
}

namespace detail {

inline nlohmann::ordered_json config_to_json(const ExperimentConfig& config,
                                             int threads) {
  nlohmann::ordered_json j;
  j["n"] = config.n;
  j["alpha"] = config.alpha;
  j["xmin_grid"] = config.xmin_grid;
  if (config.g_policy.kind == GuessPolicy::Kind::true_xmin) {
    j["g_policy"] = {{"kind", "true_xmin"}};
  } else {
    j["g_policy"] = {{"kind", "fixed"}, {"value", config.g_policy.value}};
  }
  j["c"] = config.c;
  j["k"] = config.k;
  j["seeds"] = config.seeds;
  auto names = nlohmann::ordered_json::array();
  for (Method m : config.methods) names.push_back(method_name(m));
  j["methods"] = std::move(names);
  j["threads"] = threads;
  return j;
}

}  // namespace detail

inline std::string emit_json(const BenchmarkReport& report) {
  nlohmann::ordered_json j;
  j["config"] = detail::config_to_json(report.config, report.threads);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"method", method_name(row.method)},
                    {"true_xmin", row.true_xmin},
                    {"seed", row.seed},
                    {"xmin_hat", row.xmin_hat},
                    {"alpha_hat", row.alpha_hat},
                    {"wall_time_s", row.wall_time_s},
                    {"candidates_evaluated", row.candidates_evaluated},
                    {"stopped_early", row.stopped_early},
                    {"error", row.error}});
  }
  j["rows"] = std::move(rows);
  auto summary = nlohmann::ordered_json::object();
  for (const auto& [method, s] : report.summary) {
    summary[method_name(method)] = {{"mse", s.metrics.mse},
                                    {"rmse", s.metrics.rmse},
                                    {"mae", s.metrics.mae},
                                    {"total_time_s", s.total_time_s},
                                    {"error_count", s.error_count}};
  }
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

struct PlotData {
  std::string estimates;  // mean xmin_hat vs true xmin, one column per method
  std::string timings;    // mean wall time vs true xmin, one column per method
};

// Whitespace-delimited tables for external plotting. Each line holds the
// true xmin followed by the per-method mean across seeds; cells whose every
// replicate failed print nan.
inline PlotData emit_plot_data(const BenchmarkReport& report) {
  const auto& config = report.config;
  const std::size_t n_grid = config.xmin_grid.size();
  const std::size_t n_seeds = config.seeds.size();

  std::string header = "# true_xmin";
  for (Method m : config.methods) {
    header += ' ';
    header += method_name(m);
  }
  header += '\n';

  auto table = [&](const char* note, auto&& field) {
    std::string out = note;
    out += header;
    for (std::size_t gi = 0; gi < n_grid; ++gi) {
      out += std::to_string(config.xmin_grid[gi]);
      for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t si = 0; si < n_seeds; ++si) {
          const auto& row = report.rows[(mi * n_grid + gi) * n_seeds + si];
          if (!row.ok()) continue;
          sum += field(row);
          ++count;
        }
        out += ' ';
        out += count == 0 ? "nan"
                          : detail::format_double(sum /
                                                  static_cast<double>(count));
      }
      out += '\n';
    }
    return out;
  };

  return PlotData{
      table("",
            [](const BenchRow& r) { return static_cast<double>(r.xmin_hat); }),
      table("# wall times cover the estimator call only; sample generation is "
            "excluded\n",
            [](const BenchRow& r) { return r.wall_time_s; })};
}

}  // namespace powerscan
