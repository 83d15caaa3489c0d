// Command-line front end: generate synthetic samples, fit and estimate on
// data files, inspect candidate fits, run the benchmark harness.
//
// Exit codes: 0 success, 1 usage error, 2 I/O or data error, 3 insufficient
// data.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "powerscan/powerscan.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInsufficient = 3;

using json = nlohmann::ordered_json;

std::vector<std::int64_t> load_values(const std::string& path, bool binary) {
  return binary ? powerscan::read_values_binary_file(path)
                : powerscan::read_values_text_file(path);
}

powerscan::Sample load_sample(const std::string& path, bool binary) {
  return powerscan::Sample(load_values(path, binary));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= s.size()) {
    const auto comma = s.find(',', begin);
    const auto end = comma == std::string::npos ? s.size() : comma;
    if (end > begin) parts.push_back(s.substr(begin, end - begin));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return parts;
}

template <class T>
T parse_number(const std::string& token, const std::string& what) {
  T value{};
  std::size_t used = 0;
  try {
    if constexpr (std::is_same_v<T, double>)
      value = std::stod(token, &used);
    else if constexpr (std::is_same_v<T, std::uint64_t>)
      value = std::stoull(token, &used);
    else
      value = static_cast<T>(std::stoll(token, &used));
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": cannot parse '" + token + "'");
  }
  if (used != token.size())
    throw std::invalid_argument(what + ": cannot parse '" + token + "'");
  return value;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::int64_t n = 0;
  double alpha = 0.0;
  std::int64_t xmin = 0;
  std::uint64_t seed = 0;
  std::string body = "eq1";
  std::string out;
  std::string format = "text";
};

int cmd_generate(const GenerateArgs& args) {
  powerscan::SyntheticSpec spec{args.n, args.alpha, args.xmin, args.seed,
                                args.body == "pure"
                                    ? powerscan::BodyKind::pure_powerlaw
                                    : powerscan::BodyKind::eq1_mixture};
  spec.validate();
  const auto sample = powerscan::generate(spec);

  const bool binary = args.format == "binary";
  const std::vector<std::int64_t> values(sample.values().begin(),
                                         sample.values().end());
  if (binary)
    powerscan::write_values_binary_file(args.out, values);
  else
    powerscan::write_values_text_file(args.out, values);

  std::cout << "n " << spec.n << "\n"
            << "alpha " << spec.alpha << "\n"
            << "xmin " << spec.xmin << "\n"
            << "seed " << spec.seed << "\n"
            << "body "
            << (spec.body == powerscan::BodyKind::pure_powerlaw
                    ? "pure_powerlaw"
                    : "eq1_mixture")
            << "\n"
            << "tail_weight "
            << powerscan::tail_weight(spec.alpha,
                                      static_cast<double>(spec.xmin))
            << "\n"
            << "wrote " << args.out << " (" << values.size() << " values, "
            << (binary ? "binary" : "text") << ")\n";
  return 0;
}

// -------------------------------------------------------------------- fit

struct FitArgs {
  std::string input;
  bool binary = false;
  std::int64_t xmin = 0;
  bool as_json = false;
};

int cmd_fit(const FitArgs& args) {
  const auto sample = load_sample(args.input, args.binary);
  const auto approx =
      powerscan::fit_alpha(sample, args.xmin, powerscan::AlphaMode::approximate);
  const auto exact =
      powerscan::fit_alpha(sample, args.xmin, powerscan::AlphaMode::exact);
  const auto model = powerscan::PowerLawModel::discrete(approx.value, args.xmin);
  const double d_ks = powerscan::ks_distance(sample, model);
  const double d_pmf = powerscan::pmf_distance(sample, model);
  std::size_t tail = 0;
  for (const auto v : sample.values())
    if (v >= args.xmin) ++tail;

  if (args.as_json) {
    json j;
    j["xmin"] = args.xmin;
    j["tail_size"] = tail;
    j["alpha_approx"] = approx.value;
    j["alpha_exact"] = exact.value;
    j["alpha_exact_hit_bound"] = exact.hit_bound;
    j["ks_distance"] = d_ks;
    j["pmf_distance"] = d_pmf;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "xmin " << args.xmin << "\n"
              << "tail_size " << tail << "\n"
              << "alpha_approx " << approx.value << "\n"
              << "alpha_exact " << exact.value
              << (exact.hit_bound ? " (hit bound)" : "") << "\n"
              << "ks_distance " << d_ks << "\n"
              << "pmf_distance " << d_pmf << "\n";
  }
  return 0;
}

// --------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string input;
  bool binary = false;
  std::string method;
  double g = 0.0;
  int c = 90;
  int k = 5;
  bool as_json = false;
};

int cmd_estimate(const EstimateArgs& args, bool g_given) {
  const auto sample = load_sample(args.input, args.binary);

  powerscan::XminEstimate est{};
  if (args.method == "traditional") {
    est = powerscan::scan_all(sample, powerscan::DistanceKind::ks);
  } else {
    if (!g_given)
      throw std::invalid_argument("estimate: --g is required for " +
                                  args.method);
    est = args.method == "getxmin"
              ? powerscan::get_xmin(sample, args.g, args.c, args.k)
              : powerscan::get_xmin2(sample, args.g, args.c, args.k);
  }

  if (args.as_json) {
    json j;
    j["method"] = args.method;
    j["xmin_hat"] = est.xmin_hat;
    j["alpha_hat"] = est.alpha_hat;
    j["distance"] = est.distance;
    j["candidates_evaluated"] = est.candidates_evaluated;
    j["stopped_early"] = est.trace.stopped_early;
    j["exhausted"] = est.trace.exhausted;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "method " << args.method << "\n"
              << "xmin_hat " << est.xmin_hat << "\n"
              << "alpha_hat " << est.alpha_hat << "\n"
              << "distance " << est.distance << "\n"
              << "candidates_evaluated " << est.candidates_evaluated << "\n"
              << "stopped_early "
              << (est.trace.stopped_early ? "true" : "false") << "\n"
              << "exhausted " << (est.trace.exhausted ? "true" : "false")
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- inspect

struct InspectArgs {
  std::string input;
  bool binary = false;
  std::vector<std::int64_t> xmins;
  std::string dump;
  bool as_json = false;
};

int cmd_inspect(const InspectArgs& args) {
  const auto sample = load_sample(args.input, args.binary);
  const auto table = powerscan::detail::DistinctTable::build(sample);
  const auto candidates = powerscan::candidate_set(sample);

  json rows = json::array();
  for (const auto xmin : args.xmins) {
    const bool is_candidate =
        std::binary_search(candidates.begin(), candidates.end(), xmin);
    if (!is_candidate) {
      std::cerr << "warning: " << xmin
                << " is not in the candidate set, skipping\n";
      continue;
    }
    const auto first = table.first_at_least(xmin);
    const auto alpha = powerscan::detail::fit_alpha_from_table(
        table, first, xmin, powerscan::AlphaMode::approximate);
    const double d_ks = powerscan::detail::ks_distance_from_table(
        table, first, alpha.value, xmin);
    const double d_pmf = powerscan::detail::pmf_distance_from_table(
        table, first, alpha.value, xmin);
    rows.push_back({{"xmin", xmin},
                    {"alpha_hat", alpha.value},
                    {"ks_distance", d_ks},
                    {"pmf_distance", d_pmf},
                    {"tail_size", table.tail_counts[first]}});
  }

  if (args.as_json) {
    json j;
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "xmin alpha_hat ks_distance pmf_distance tail_size\n";
    for (const auto& r : rows)
      std::cout << r["xmin"].get<std::int64_t>() << " "
                << r["alpha_hat"].get<double>() << " "
                << r["ks_distance"].get<double>() << " "
                << r["pmf_distance"].get<double>() << " "
                << r["tail_size"].get<std::uint64_t>() << "\n";
  }

  if (!args.dump.empty()) {
    // Empirical CCDF over distinct values for log-log plotting.
    std::string out = "# x ccdf\n";
    const double n = static_cast<double>(sample.size());
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      out += std::to_string(table.values[i]);
      out += ' ';
      out += powerscan::detail::format_double(
          static_cast<double>(table.tail_counts[i]) / n);
      out += '\n';
    }
    if (args.dump == "-") {
      std::cout << out;
    } else {
      std::ofstream f(args.dump);
      if (!f) throw powerscan::io_error(args.dump + ": cannot open");
      f << out;
      if (!f) throw powerscan::io_error(args.dump + ": write failure");
    }
  }
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchArgs {
  std::string config_path;
  std::optional<std::int64_t> n;
  std::optional<double> alpha;
  std::optional<std::string> grid;
  std::optional<std::string> g_policy;
  std::optional<int> c;
  std::optional<int> k;
  std::optional<std::string> seeds;
  std::optional<std::string> methods;
  std::string out_dir = "bench_out";
  bool serial = false;
  int threads = 0;  // 0 = auto
};

void apply_config_entry(powerscan::ExperimentConfig& config,
                        const std::string& key, const std::string& value) {
  if (key == "n") {
    config.n = parse_number<std::int64_t>(value, "n");
  } else if (key == "alpha") {
    config.alpha = parse_number<double>(value, "alpha");
  } else if (key == "xmin_grid") {
    config.xmin_grid.clear();
    for (const auto& tok : split_list(value))
      config.xmin_grid.push_back(parse_number<std::int64_t>(tok, "xmin_grid"));
  } else if (key == "g_policy") {
    if (value == "true_xmin") {
      config.g_policy = powerscan::GuessPolicy::true_xmin();
    } else if (value.rfind("fixed:", 0) == 0) {
      config.g_policy = powerscan::GuessPolicy::fixed(
          parse_number<double>(value.substr(6), "g_policy"));
    } else {
      throw std::invalid_argument(
          "g_policy: expected 'true_xmin' or 'fixed:<value>', got '" + value +
          "'");
    }
  } else if (key == "c") {
    config.c = parse_number<int>(value, "c");
  } else if (key == "k") {
    config.k = parse_number<int>(value, "k");
  } else if (key == "seeds") {
    config.seeds.clear();
    for (const auto& tok : split_list(value))
      config.seeds.push_back(parse_number<std::uint64_t>(tok, "seeds"));
  } else if (key == "methods") {
    config.methods.clear();
    for (const auto& tok : split_list(value)) {
      const auto m = powerscan::method_from_name(tok);
      if (!m)
        throw std::invalid_argument("methods: unknown method '" + tok + "'");
      config.methods.push_back(*m);
    }
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

void load_config_file(powerscan::ExperimentConfig& config,
                      const std::string& path) {
  std::ifstream in(path);
  if (!in) throw powerscan::io_error(path + ": cannot open for reading");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body{line};
    if (const auto hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    body = powerscan::detail::trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key{powerscan::detail::trim(body.substr(0, eq))};
    const std::string value{powerscan::detail::trim(body.substr(eq + 1))};
    apply_config_entry(config, key, value);
  }
}

int cmd_bench(const BenchArgs& args) {
  powerscan::ExperimentConfig config;
  config.n = 100000;
  config.alpha = 3.0;
  config.xmin_grid = {50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  config.g_policy = powerscan::GuessPolicy::true_xmin();
  config.c = 90;
  config.k = 5;
  config.seeds = {1, 2, 3, 4, 5};
  config.methods = {powerscan::Method::scan_all, powerscan::Method::get_xmin,
                    powerscan::Method::get_xmin2};

  if (!args.config_path.empty()) load_config_file(config, args.config_path);
  if (args.n) config.n = *args.n;
  if (args.alpha) config.alpha = *args.alpha;
  if (args.grid) apply_config_entry(config, "xmin_grid", *args.grid);
  if (args.g_policy) apply_config_entry(config, "g_policy", *args.g_policy);
  if (args.c) config.c = *args.c;
  if (args.k) config.k = *args.k;
  if (args.seeds) apply_config_entry(config, "seeds", *args.seeds);
  if (args.methods) apply_config_entry(config, "methods", *args.methods);
  config.validate();

  powerscan::RunOptions options;
  if (args.serial)
    options.threads = 1;
  else if (args.threads > 0)
    options.threads = args.threads;
  else
    options.threads =
        std::max(1u, std::thread::hardware_concurrency());

  const auto report = powerscan::run_experiment(config, options);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec)
    throw powerscan::io_error(args.out_dir + ": cannot create directory");

  auto write_file = [&](const std::string& name, const std::string& content) {
    const auto path = (fs::path(args.out_dir) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw powerscan::io_error(path + ": cannot open for writing");
    f << content;
    if (!f) throw powerscan::io_error(path + ": write failure");
  };
  write_file("report.csv", powerscan::emit_csv(report));
  write_file("report.json", powerscan::emit_json(report));
  const auto plots = powerscan::emit_plot_data(report);
  write_file("estimates.dat", plots.estimates);
  write_file("timings.dat", plots.timings);

  std::printf("%-10s %12s %10s %10s %14s %7s\n", "method", "mse", "rmse",
              "mae", "total_time_s", "errors");
  for (const auto& [method, s] : report.summary)
    std::printf("%-10s %12.3f %10.3f %10.3f %14.3f %7lld\n",
                powerscan::method_name(method), s.metrics.mse, s.metrics.rmse,
                s.metrics.mae, s.total_time_s,
                static_cast<long long>(s.error_count));
  std::cout << "reports written to " << args.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower-bound (xmin) estimation for discrete power laws"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic sample");
  generate->add_option("--n", gen.n, "Sample size")->required();
  generate->add_option("--alpha", gen.alpha, "Scaling parameter (> 1)")
      ->required();
  generate->add_option("--xmin", gen.xmin, "True lower bound")->required();
  generate->add_option("--seed", gen.seed, "RNG seed")->required();
  generate->add_option("--body", gen.body, "Distribution kind")
      ->check(CLI::IsMember({"eq1", "pure"}))
      ->capture_default_str();
  generate->add_option("--out", gen.out, "Output path")->required();
  generate->add_option("--format", gen.format, "Output format")
      ->check(CLI::IsMember({"text", "binary"}))
      ->capture_default_str();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit alpha at a fixed xmin");
  fit_cmd->add_option("--input", fit.input, "Data file")->required();
  fit_cmd->add_flag("--binary", fit.binary, "Input is binary");
  fit_cmd->add_option("--xmin", fit.xmin, "Lower bound to fit at")->required();
  fit_cmd->add_flag("--json", fit.as_json, "JSON output");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate the lower bound");
  estimate->add_option("--input", est.input, "Data file")->required();
  estimate->add_flag("--binary", est.binary, "Input is binary");
  estimate->add_option("--method", est.method, "Estimation method")
      ->check(CLI::IsMember({"traditional", "getxmin", "getxmin2"}))
      ->required();
  auto* g_opt = estimate->add_option("--g", est.g, "Guess on the lower bound");
  estimate->add_option("--c", est.c, "Confidence in [1, 100]")
      ->capture_default_str();
  estimate->add_option("--k", est.k, "Stop window")->capture_default_str();
  estimate->add_flag("--json", est.as_json, "JSON output");

  InspectArgs ins;
  auto* inspect = app.add_subcommand("inspect", "Tabulate fits at given xmins");
  inspect->add_option("--input", ins.input, "Data file")->required();
  inspect->add_flag("--binary", ins.binary, "Input is binary");
  inspect->add_option("--xmin", ins.xmins, "Candidate xmin (repeatable)");
  inspect->add_option("--dump", ins.dump,
                      "Write empirical CCDF pairs to this path ('-' = stdout)");
  inspect->add_flag("--json", ins.as_json, "JSON output");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark harness");
  bench_cmd->add_option("--config", bench.config_path,
                        "key=value config file");
  bench_cmd->add_option("--n", bench.n, "Sample size per cell");
  bench_cmd->add_option("--alpha", bench.alpha, "Scaling parameter");
  bench_cmd->add_option("--grid", bench.grid, "Comma-separated true xmins");
  bench_cmd->add_option("--g-policy", bench.g_policy,
                        "true_xmin or fixed:<value>");
  bench_cmd->add_option("--c", bench.c, "Confidence");
  bench_cmd->add_option("--k", bench.k, "Stop window");
  bench_cmd->add_option("--seeds", bench.seeds, "Comma-separated seeds");
  bench_cmd->add_option("--methods", bench.methods,
                        "Comma-separated subset of "
                        "scan_all,get_xmin,get_xmin2");
  bench_cmd->add_option("--out-dir", bench.out_dir, "Report directory")
      ->capture_default_str();
  bench_cmd->add_flag("--serial", bench.serial,
                      "Force serial execution (reliable timings)");
  bench_cmd->add_option("--threads", bench.threads,
                        "Worker threads (default: hardware)");

  try {
    app.parse(argc, argv);
    if (generate->parsed()) return cmd_generate(gen);
    if (fit_cmd->parsed()) return cmd_fit(fit);
    if (estimate->parsed()) return cmd_estimate(est, g_opt->count() > 0);
    if (inspect->parsed()) return cmd_inspect(ins);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const powerscan::insufficient_data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInsufficient;
  } catch (const powerscan::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
