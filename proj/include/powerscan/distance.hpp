#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "powerscan/errors.hpp"
#include "powerscan/model.hpp"
#include "powerscan/sample.hpp"
#include "powerscan/zeta.hpp"

namespace powerscan {

enum class DistanceKind { ks, pmf };

namespace detail {

// Single-entry memo for log zeta(alpha, q). The KS loop visits q values in
// nondecreasing order and any repeat is adjacent, so one slot suffices.
struct LogZetaMemo {
  double q = 0.0;
  double log_value = 0.0;
  bool filled = false;

  double get(double alpha, double query) {
    if (!filled || query != q) {
      q = query;
      log_value = log_hurwitz_zeta(alpha, query);
      filled = true;
    }
    return log_value;
  }
};

// Kolmogorov-Smirnov statistic between the empirical tail CDF and the model
// CDF. Both are step functions jumping only at integers, so the supremum is
// bracketed by comparing at each distinct observed value from both sides of
// the empirical step.
inline double ks_distance_from_table(const DistinctTable& t, std::size_t first,
                                     double alpha, std::int64_t xmin) {
  if (first >= t.values.size())
    throw insufficient_data_error("ks_distance: no observations >= xmin");
  const double m = static_cast<double>(t.tail_counts[first]);
  const double lz_min = log_hurwitz_zeta(alpha, static_cast<double>(xmin));

  LogZetaMemo memo;
  memo.q = static_cast<double>(xmin);
  memo.log_value = lz_min;
  memo.filled = true;

  double best = 0.0;
  for (std::size_t i = first; i < t.values.size(); ++i) {
    const double x = static_cast<double>(t.values[i]);
    const std::uint64_t tail_next =
        i + 1 < t.values.size() ? t.tail_counts[i + 1] : 0;
    const double emp_after = (m - static_cast<double>(tail_next)) / m;
    const double emp_before =
        (m - static_cast<double>(t.tail_counts[i])) / m;

    // Model CDF after the step at x is 1 - zeta(alpha, x+1)/zeta(alpha, xmin);
    // before the step it is the same expression at x-1, which vanishes when
    // x-1 falls below the support. Querying the before side first keeps the
    // memo's q sequence nondecreasing, so runs of consecutive values reuse
    // the previous after-side evaluation.
    const double cdf_before =
        t.values[i] > xmin ? 1.0 - std::exp(memo.get(alpha, x) - lz_min) : 0.0;
    const double cdf_after = 1.0 - std::exp(memo.get(alpha, x + 1.0) - lz_min);

    best = std::max(best, std::fabs(emp_after - cdf_after));
    best = std::max(best, std::fabs(emp_before - cdf_before));
  }
  return best;
}

// Largest absolute gap between empirical and model pmf over the distinct tail
// values. Needs only the normalizer zeta(alpha, xmin); each model mass is then
// exp(-alpha ln x - ln zeta).
inline double pmf_distance_from_table(const DistinctTable& t, std::size_t first,
                                      double alpha, std::int64_t xmin) {
  if (first >= t.values.size())
    throw insufficient_data_error("pmf_distance: no observations >= xmin");
  const double m = static_cast<double>(t.tail_counts[first]);
  const double lz_min = log_hurwitz_zeta(alpha, static_cast<double>(xmin));

  double best = 0.0;
  for (std::size_t i = first; i < t.values.size(); ++i) {
    const double emp = static_cast<double>(t.counts[i]) / m;
    const double mod = std::exp(
        -alpha * std::log(static_cast<double>(t.values[i])) - lz_min);
    best = std::max(best, std::fabs(emp - mod));
  }
  return best;
}

inline double distance_from_table(DistanceKind kind, const DistinctTable& t,
                                  std::size_t first, double alpha,
                                  std::int64_t xmin) {
  return kind == DistanceKind::ks
             ? ks_distance_from_table(t, first, alpha, xmin)
             : pmf_distance_from_table(t, first, alpha, xmin);
}

}  // namespace detail

inline double ks_distance(const Sample& sample, const PowerLawModel& model) {
  detail::require_discrete(model, "ks_distance");
  const auto xmin = static_cast<std::int64_t>(model.xmin);
  const auto table = detail::DistinctTable::build(sample);
  return detail::ks_distance_from_table(table, table.first_at_least(xmin),
                                        model.alpha, xmin);
}

inline double pmf_distance(const Sample& sample, const PowerLawModel& model) {
  detail::require_discrete(model, "pmf_distance");
  const auto xmin = static_cast<std::int64_t>(model.xmin);
  const auto table = detail::DistinctTable::build(sample);
  return detail::pmf_distance_from_table(table, table.first_at_least(xmin),
                                         model.alpha, xmin);
}

}  // namespace powerscan
