#pragma once

#include <cmath>
#include <cstdint>

#include "powerscan/errors.hpp"
#include "powerscan/sample.hpp"
#include "powerscan/zeta.hpp"

namespace powerscan {

enum class AlphaMode { approximate, exact };

// Search interval for the exact likelihood maximization. Exponents at the
// upper end indicate a degenerate tail and are flagged, not chased.
inline constexpr double kAlphaLower = 1.0 + 1e-6;
inline constexpr double kAlphaUpper = 50.0;

struct AlphaEstimate {
  double value;
  bool hit_bound;  // exact mode only: maximizer pinned at an interval end
};

namespace detail {

// Closed form 1 + m / sum ln(x_i / (xmin - 1/2)) over the tail x_i >= xmin.
inline double approximate_alpha(const DistinctTable& t, std::size_t first,
                                std::int64_t xmin) {
  const double m = static_cast<double>(t.tail_counts[first]);
  const double denom =
      t.tail_log_sums[first] -
      m * std::log(static_cast<double>(xmin) - 0.5);
  return 1.0 + m / denom;
}

// log-likelihood of the discrete model over the tail at xmin:
//   l(alpha) = -m * ln zeta(alpha, xmin) - alpha * sum ln x_i
inline double tail_log_likelihood(double alpha, double m, double log_sum,
                                  std::int64_t xmin) {
  return -m * log_hurwitz_zeta(alpha, static_cast<double>(xmin)) -
         alpha * log_sum;
}

// Golden-section maximization of the (concave) tail likelihood.
inline AlphaEstimate exact_alpha(const DistinctTable& t, std::size_t first,
                                 std::int64_t xmin) {
  const double m = static_cast<double>(t.tail_counts[first]);
  const double log_sum = t.tail_log_sums[first];
  const double inv_phi = 0.6180339887498949;

  double lo = kAlphaLower;
  double hi = kAlphaUpper;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = tail_log_likelihood(x1, m, log_sum, xmin);
  double f2 = tail_log_likelihood(x2, m, log_sum, xmin);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = tail_log_likelihood(x2, m, log_sum, xmin);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = tail_log_likelihood(x1, m, log_sum, xmin);
    }
  }
  const double alpha = 0.5 * (lo + hi);
  const bool at_bound =
      alpha >= kAlphaUpper - 1e-6 || alpha <= kAlphaLower + 1e-6;
  return AlphaEstimate{alpha, at_bound};
}

inline AlphaEstimate fit_alpha_from_table(const DistinctTable& t,
                                          std::size_t first,
                                          std::int64_t xmin, AlphaMode mode) {
  if (first >= t.values.size() || t.tail_counts[first] < 2)
    throw insufficient_data_error(
        "mle_alpha: need at least 2 observations >= xmin");
  if (mode == AlphaMode::approximate)
    return AlphaEstimate{approximate_alpha(t, first, xmin), false};
  return exact_alpha(t, first, xmin);
}

}  // namespace detail

inline AlphaEstimate fit_alpha(const Sample& sample, std::int64_t xmin,
                               AlphaMode mode = AlphaMode::approximate) {
  const auto table = detail::DistinctTable::build(sample);
  return detail::fit_alpha_from_table(table, table.first_at_least(xmin), xmin,
                                      mode);
}

inline double mle_alpha(const Sample& sample, std::int64_t xmin,
                        AlphaMode mode = AlphaMode::approximate) {
  return fit_alpha(sample, xmin, mode).value;
}

}  // namespace powerscan
