#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "powerscan/distance.hpp"
#include "powerscan/errors.hpp"
#include "powerscan/mle.hpp"
#include "powerscan/sample.hpp"

namespace powerscan {

// Settings for the guess-seeded early-stopping scan. The scan starts near
// guess * confidence / 100 and stops once `window` consecutive distance
// increases have been seen.
struct FastScanConfig {
  double guess;
  int confidence = 90;
  int window = 5;
  DistanceKind distance = DistanceKind::ks;

  void validate() const {
    if (!(guess > 0.0))
      throw std::invalid_argument("FastScanConfig: guess must be > 0");
    if (confidence < 1 || confidence > 100)
      throw std::invalid_argument(
          "FastScanConfig: confidence must be in [1, 100]");
    if (window < 1)
      throw std::invalid_argument("FastScanConfig: window must be >= 1");
  }
};

struct ScanPoint {
  std::int64_t candidate_xmin;
  double alpha_hat;
  double distance;
};

struct ScanTrace {
  std::vector<ScanPoint> points;
  bool stopped_early = false;
  bool exhausted = false;
};

struct XminEstimate {
  std::int64_t xmin_hat;
  double alpha_hat;
  double distance;
  ScanTrace trace;
  std::int64_t candidates_evaluated;
};

namespace detail {

inline std::vector<std::int64_t> candidates_from_table(const DistinctTable& t) {
  if (t.values.size() < 2)
    throw insufficient_data_error(
        "candidate_set: need at least 2 distinct values");
  return std::vector<std::int64_t>(t.values.begin(), t.values.end() - 1);
}

// Fits alpha and evaluates the configured distance for the candidate at a
// given index of the distinct-value table.
struct TableEvaluator {
  const DistinctTable* table;
  DistanceKind kind;

  ScanPoint operator()(std::size_t idx) const {
    const std::int64_t x = table->values[idx];
    const auto alpha =
        fit_alpha_from_table(*table, idx, x, AlphaMode::approximate);
    const double d = distance_from_table(kind, *table, idx, alpha.value, x);
    return ScanPoint{x, alpha.value, d};
  }
};

// Walks candidates[start_idx..] in order, recording every evaluation. With
// window >= 1, stops as soon as that many consecutive strictly positive
// first differences have accumulated (a plateau resets the count); window 0
// disables the rule. The evaluator is a template parameter so tests can
// drive the stop rule with scripted distance sequences.
template <class Eval>
XminEstimate run_scan(const std::vector<std::int64_t>& candidates,
                      std::size_t start_idx, int window, Eval&& eval) {
  if (start_idx >= candidates.size())
    throw insufficient_data_error("scan: no candidates at or above start");

  ScanTrace trace;
  std::size_t best = 0;
  int rising = 0;
  for (std::size_t i = start_idx; i < candidates.size(); ++i) {
    trace.points.push_back(eval(i));
    const std::size_t last = trace.points.size() - 1;
    if (last == 0 || trace.points[last].distance < trace.points[best].distance)
      best = last;
    if (window > 0 && last > 0) {
      const bool up =
          trace.points[last].distance > trace.points[last - 1].distance;
      rising = up ? rising + 1 : 0;
      // A trigger on the final candidate truncates nothing, so it counts as
      // exhaustion; stopped_early always implies work was saved.
      if (rising >= window && i + 1 < candidates.size()) {
        trace.stopped_early = true;
        break;
      }
    }
  }
  trace.exhausted = !trace.stopped_early;

  const ScanPoint winner = trace.points[best];
  const auto evaluated = static_cast<std::int64_t>(trace.points.size());
  return XminEstimate{winner.candidate_xmin, winner.alpha_hat, winner.distance,
                      std::move(trace), evaluated};
}

// Index of the candidate nearest g*c/100 after clamping the target into the
// observed value range; ties go to the smaller candidate.
inline std::size_t start_index(const std::vector<std::int64_t>& candidates,
                               std::int64_t sample_min, std::int64_t sample_max,
                               double g, int c) {
  double target = g * static_cast<double>(c) / 100.0;
  target = std::clamp(target, static_cast<double>(sample_min),
                      static_cast<double>(sample_max));

  const auto it =
      std::partition_point(candidates.begin(), candidates.end(),
                           [target](std::int64_t v) { return v < target; });
  const auto j = static_cast<std::size_t>(it - candidates.begin());
  if (j == 0) return 0;
  if (j == candidates.size()) return candidates.size() - 1;
  const double below = target - static_cast<double>(candidates[j - 1]);
  const double above = static_cast<double>(candidates[j]) - target;
  return below <= above ? j - 1 : j;
}

}  // namespace detail

// Distinct observed values except the maximum; the one-point tail at the
// maximum cannot be fitted.
inline std::vector<std::int64_t> candidate_set(const Sample& sample) {
  return detail::candidates_from_table(detail::DistinctTable::build(sample));
}

// Exhaustive scan: fit alpha and evaluate the distance at every candidate,
// keep the argmin (smallest candidate on ties).
inline XminEstimate scan_all(const Sample& sample,
                             DistanceKind kind = DistanceKind::ks) {
  const auto table = detail::DistinctTable::build(sample);
  const auto candidates = detail::candidates_from_table(table);
  return detail::run_scan(candidates, 0, 0,
                          detail::TableEvaluator{&table, kind});
}

inline std::int64_t start_candidate(const Sample& sample, double g, int c) {
  if (!(g > 0.0)) throw std::invalid_argument("start_candidate: g must be > 0");
  if (c < 1 || c > 100)
    throw std::invalid_argument("start_candidate: c must be in [1, 100]");
  const auto table = detail::DistinctTable::build(sample);
  const auto candidates = detail::candidates_from_table(table);
  return candidates[detail::start_index(candidates, sample.min(), sample.max(),
                                        g, c)];
}

inline XminEstimate fast_scan(const Sample& sample,
                              const FastScanConfig& config) {
  config.validate();
  const auto table = detail::DistinctTable::build(sample);
  const auto candidates = detail::candidates_from_table(table);
  const auto start = detail::start_index(candidates, sample.min(), sample.max(),
                                         config.guess, config.confidence);
  return detail::run_scan(candidates, start, config.window,
                          detail::TableEvaluator{&table, config.distance});
}

inline XminEstimate get_xmin(const Sample& sample, double g, int c, int k) {
  return fast_scan(sample, FastScanConfig{g, c, k, DistanceKind::ks});
}

inline XminEstimate get_xmin2(const Sample& sample, double g, int c, int k) {
  return fast_scan(sample, FastScanConfig{g, c, k, DistanceKind::pmf});
}

}  // namespace powerscan
