#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "powerscan/bench.hpp"

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

// The wall-time column is the only legitimately nondeterministic field.
std::string strip_wall_time(const std::string& csv) {
  std::string out;
  for (const auto& line : split_lines(csv)) {
    auto fields = split_csv(line);
    if (fields.size() > 5) fields.erase(fields.begin() + 5);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  }
  return out;
}

powerscan::ExperimentConfig small_config() {
  powerscan::ExperimentConfig config;
  config.n = 2000;
  config.alpha = 2.5;
  config.xmin_grid = {20, 40, 60};
  config.g_policy = powerscan::GuessPolicy::true_xmin();
  config.seeds = {3, 4};
  config.methods = {powerscan::Method::scan_all, powerscan::Method::get_xmin,
                    powerscan::Method::get_xmin2};
  return config;
}

}  // namespace

TEST_CASE("method names round-trip") {
  for (const auto m : powerscan::kAllMethods)
    CHECK(powerscan::method_from_name(powerscan::method_name(m)) == m);
  CHECK_FALSE(powerscan::method_from_name("bogus").has_value());
}

TEST_CASE("guess policy resolves per grid point") {
  CHECK(powerscan::GuessPolicy::true_xmin().resolve(50) == 50.0);
  CHECK(powerscan::GuessPolicy::fixed(25.0).resolve(50) == 25.0);
}

TEST_CASE("experiment config validation") {
  auto config = small_config();
  CHECK_NOTHROW(config.validate());

  auto bad = config;
  bad.n = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.xmin_grid = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.xmin_grid = {20, 20};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.c = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.k = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.seeds = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.g_policy = powerscan::GuessPolicy::fixed(0.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("accuracy metrics match hand-computed values") {
  const auto m = powerscan::accuracy({60.0, 110.0}, {50.0, 100.0});
  CHECK(m.mse == 100.0);
  CHECK(m.rmse == 10.0);
  CHECK(m.mae == 10.0);

  const auto zero = powerscan::accuracy({5.0, 7.0}, {5.0, 7.0});
  CHECK(zero.mse == 0.0);
  CHECK(zero.rmse == 0.0);
  CHECK(zero.mae == 0.0);

  const auto mixed = powerscan::accuracy({1.0, 2.0, 9.0}, {1.0, 5.0, 5.0});
  CHECK(mixed.mae <= mixed.rmse);
  CHECK(mixed.rmse == Catch::Approx(std::sqrt(mixed.mse)));

  CHECK_THROWS_AS(powerscan::accuracy({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(powerscan::accuracy({1.0}, {1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("rows cover the method x grid x seed matrix in order") {
  const auto report = powerscan::run_experiment(small_config());
  REQUIRE(report.rows.size() == 3 * 3 * 2);
  std::size_t r = 0;
  for (const auto method : small_config().methods)
    for (const auto true_xmin : small_config().xmin_grid)
      for (const auto seed : small_config().seeds) {
        CHECK(report.rows[r].method == method);
        CHECK(report.rows[r].true_xmin == true_xmin);
        CHECK(report.rows[r].seed == seed);
        CHECK(report.rows[r].ok());
        CHECK(report.rows[r].wall_time_s >= 0.0);
        ++r;
      }
}

TEST_CASE("the full scan never reports an early stop") {
  const auto report = powerscan::run_experiment(small_config());
  for (const auto& row : report.rows)
    if (row.method == powerscan::Method::scan_all)
      CHECK_FALSE(row.stopped_early);
}

TEST_CASE("early-stopped rows did strictly less work than the full scan") {
  const auto report = powerscan::run_experiment(small_config());
  std::map<std::pair<std::int64_t, std::uint64_t>, std::int64_t> full_work;
  for (const auto& row : report.rows)
    if (row.method == powerscan::Method::scan_all)
      full_work[{row.true_xmin, row.seed}] = row.candidates_evaluated;
  int stopped = 0;
  for (const auto& row : report.rows) {
    if (row.method == powerscan::Method::scan_all) continue;
    const auto full = full_work.at({row.true_xmin, row.seed});
    CHECK(row.candidates_evaluated <= full);
    if (row.stopped_early) {
      CHECK(row.candidates_evaluated < full);
      ++stopped;
    }
  }
  CHECK(stopped > 0);
}

TEST_CASE("the report summary is recomputable from its rows") {
  const auto report = powerscan::run_experiment(small_config());
  REQUIRE(report.summary.size() == 3);
  for (std::size_t mi = 0; mi < report.summary.size(); ++mi) {
    const auto& [method, summary] = report.summary[mi];
    CHECK(method == small_config().methods[mi]);
    std::vector<double> estimates;
    std::vector<double> truths;
    double total = 0.0;
    for (const auto& row : report.rows) {
      if (row.method != method || !row.ok()) continue;
      estimates.push_back(static_cast<double>(row.xmin_hat));
      truths.push_back(static_cast<double>(row.true_xmin));
      total += row.wall_time_s;
    }
    const auto metrics = powerscan::accuracy(estimates, truths);
    CHECK(summary.metrics.mse == metrics.mse);
    CHECK(summary.metrics.rmse == metrics.rmse);
    CHECK(summary.metrics.mae == metrics.mae);
    CHECK(summary.total_time_s == total);
    CHECK(summary.error_count == 0);
  }
}

TEST_CASE("reports are identical across reruns and thread counts") {
  const auto config = small_config();
  const auto a = powerscan::run_experiment(config, {1, true});
  const auto b = powerscan::run_experiment(config, {1, true});
  const auto c = powerscan::run_experiment(config, {4, true});
  const auto d = powerscan::run_experiment(config, {8, true});

  const auto stripped = strip_wall_time(powerscan::emit_csv(a));
  CHECK(stripped == strip_wall_time(powerscan::emit_csv(b)));
  CHECK(stripped == strip_wall_time(powerscan::emit_csv(c)));
  CHECK(stripped == strip_wall_time(powerscan::emit_csv(d)));
  CHECK(c.threads == 4);

  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].xmin_hat == c.rows[i].xmin_hat);
    CHECK(a.rows[i].alpha_hat == c.rows[i].alpha_hat);
    CHECK(a.rows[i].candidates_evaluated == c.rows[i].candidates_evaluated);
    CHECK(a.rows[i].stopped_early == c.rows[i].stopped_early);
  }
}

TEST_CASE("failed cells are reported per row and excluded from the summary") {
  // n = 2 at xmin = 1 collapses to two identical observations, which leaves
  // no candidate to scan; the xmin = 30 cell still succeeds.
  powerscan::ExperimentConfig config;
  config.n = 2;
  config.alpha = 3.0;
  config.xmin_grid = {1, 30};
  config.g_policy = powerscan::GuessPolicy::true_xmin();
  config.seeds = {1};
  config.methods = {powerscan::Method::scan_all, powerscan::Method::get_xmin};

  const auto report = powerscan::run_experiment(config);
  REQUIRE(report.rows.size() == 4);
  for (const auto& row : report.rows) {
    if (row.true_xmin == 1) {
      CHECK_FALSE(row.ok());
      CHECK_FALSE(row.error.empty());
    } else {
      CHECK(row.ok());
    }
  }
  for (const auto& [method, summary] : report.summary) {
    CHECK(summary.error_count == 1);
    CHECK_FALSE(std::isnan(summary.metrics.mae));
  }

  // The grid-1 cell has no successful replicate, so plots print nan there.
  const auto plots = powerscan::emit_plot_data(report);
  const auto lines = split_lines(plots.estimates);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].find("nan") != std::string::npos);
  CHECK(lines[2].find("nan") == std::string::npos);

  // CSV rows keep their 9 fields with the reason last.
  const auto csv_lines = split_lines(powerscan::emit_csv(report));
  const auto fields = split_csv(csv_lines[1]);
  REQUIRE(fields.size() == 9);
  CHECK_FALSE(fields[8].empty());
  CHECK(fields[8].find(',') == std::string::npos);
  CHECK(fields[8].find('\n') == std::string::npos);
}

TEST_CASE("csv output has the fixed header and one line per row") {
  const auto report = powerscan::run_experiment(small_config());
  const auto lines = split_lines(powerscan::emit_csv(report));
  REQUIRE(lines.size() == 1 + report.rows.size());
  CHECK(lines[0] ==
        "method,true_xmin,seed,xmin_hat,alpha_hat,wall_time_s,"
        "candidates_evaluated,stopped_early,error");
  const auto fields = split_csv(lines[1]);
  REQUIRE(fields.size() == 9);
  CHECK(fields[0] == "scan_all");
  // Doubles are written in shortest round-trip form.
  CHECK(std::strtod(fields[4].c_str(), nullptr) == report.rows[0].alpha_hat);
}

TEST_CASE("an empty method list yields a header-only csv") {
  auto config = small_config();
  config.methods = {};
  const auto report = powerscan::run_experiment(config);
  CHECK(report.rows.empty());
  CHECK(report.summary.empty());
  const auto lines = split_lines(powerscan::emit_csv(report));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].rfind("method,", 0) == 0);
}

TEST_CASE("json report round-trips every field") {
  const auto report = powerscan::run_experiment(small_config());
  const auto j = nlohmann::json::parse(powerscan::emit_json(report));

  CHECK(j["config"]["n"] == 2000);
  CHECK(j["config"]["alpha"] == 2.5);
  CHECK(j["config"]["xmin_grid"] == std::vector<std::int64_t>{20, 40, 60});
  CHECK(j["config"]["g_policy"]["kind"] == "true_xmin");
  CHECK(j["config"]["c"] == 90);
  CHECK(j["config"]["k"] == 5);
  CHECK(j["config"]["seeds"] == std::vector<std::uint64_t>{3, 4});
  CHECK(j["config"]["methods"] ==
        std::vector<std::string>{"scan_all", "get_xmin", "get_xmin2"});
  CHECK(j["config"]["threads"] == 1);

  REQUIRE(j["rows"].size() == report.rows.size());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    const auto& jr = j["rows"][i];
    CHECK(jr["method"] == powerscan::method_name(row.method));
    CHECK(jr["true_xmin"].get<std::int64_t>() == row.true_xmin);
    CHECK(jr["seed"].get<std::uint64_t>() == row.seed);
    CHECK(jr["xmin_hat"].get<std::int64_t>() == row.xmin_hat);
    CHECK(jr["alpha_hat"].get<double>() == row.alpha_hat);
    CHECK(jr["wall_time_s"].get<double>() == row.wall_time_s);
    CHECK(jr["candidates_evaluated"].get<std::int64_t>() ==
          row.candidates_evaluated);
    CHECK(jr["stopped_early"].get<bool>() == row.stopped_early);
    CHECK(jr["error"].get<std::string>() == row.error);
  }

  for (const auto& [method, summary] : report.summary) {
    const auto& js = j["summary"][powerscan::method_name(method)];
    CHECK(js["mae"].get<double>() == summary.metrics.mae);
    CHECK(js["total_time_s"].get<double>() == summary.total_time_s);
    CHECK(js["error_count"].get<std::int64_t>() == summary.error_count);
  }

  // A fixed-guess config is echoed with its value.
  auto config = small_config();
  config.g_policy = powerscan::GuessPolicy::fixed(25.0);
  config.methods = {powerscan::Method::get_xmin};
  const auto j2 = nlohmann::json::parse(
      powerscan::emit_json(powerscan::run_experiment(config)));
  CHECK(j2["config"]["g_policy"]["kind"] == "fixed");
  CHECK(j2["config"]["g_policy"]["value"] == 25.0);
}

TEST_CASE("plot tables hold per-grid-point means across seeds") {
  const auto report = powerscan::run_experiment(small_config());
  const auto plots = powerscan::emit_plot_data(report);

  const auto lines = split_lines(plots.estimates);
  REQUIRE(lines.size() == 1 + 3);
  CHECK(lines[0] == "# true_xmin scan_all get_xmin get_xmin2");

  // Second line: grid point 40 with the scan_all mean over both seeds.
  std::istringstream row(lines[2]);
  double truth = 0.0;
  double scan_mean = 0.0;
  row >> truth >> scan_mean;
  CHECK(truth == 40.0);
  double manual = 0.0;
  int count = 0;
  for (const auto& r : report.rows)
    if (r.method == powerscan::Method::scan_all && r.true_xmin == 40) {
      manual += static_cast<double>(r.xmin_hat);
      ++count;
    }
  REQUIRE(count == 2);
  CHECK(scan_mean == Catch::Approx(manual / 2.0).epsilon(1e-12));

  // The timing table carries an extra note line about what is measured.
  const auto timing_lines = split_lines(plots.timings);
  REQUIRE(timing_lines.size() == 2 + 3);
  CHECK(timing_lines[0].rfind("# wall times", 0) == 0);
  CHECK(timing_lines[1] == lines[0]);
}
