#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "powerscan/errors.hpp"

namespace powerscan {

// A sorted collection of observed positive integers.
class Sample {
 public:
  using value_type = std::int64_t;

  explicit Sample(std::vector<value_type> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    validate();
  }

  // Accepts already-sorted data without re-sorting.
  static Sample from_sorted(std::vector<value_type> values) {
    if (!std::is_sorted(values.begin(), values.end()))
      throw std::invalid_argument("Sample::from_sorted: data not sorted");
    return Sample(std::move(values), already_sorted_tag{});
  }

  const std::vector<value_type>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  value_type min() const { return values_.front(); }
  value_type max() const { return values_.back(); }

 private:
  struct already_sorted_tag {};
  Sample(std::vector<value_type> values, already_sorted_tag)
      : values_(std::move(values)) {
    validate();
  }

  void validate() const {
    if (values_.size() < 2)
      throw insufficient_data_error("Sample: need at least 2 observations");
    if (values_.front() < 1)
      throw std::domain_error("Sample: observations must be >= 1");
  }

  std::vector<value_type> values_;
};

namespace detail {

// Per-distinct-value summary shared by the estimators: counts, tail sizes and
// tail log-sums, so that a scan fits alpha at any candidate in O(1).
struct DistinctTable {
  std::vector<std::int64_t> values;        // ascending distinct values
  std::vector<std::uint64_t> counts;       // multiplicity of each value
  std::vector<std::uint64_t> tail_counts;  // observations >= values[i]
  std::vector<double> tail_log_sums;       // sum of ln(x) over x >= values[i]

  static DistinctTable build(const Sample& sample) {
    DistinctTable t;
    const auto& xs = sample.values();
    for (std::size_t i = 0; i < xs.size();) {
      std::size_t j = i;
      while (j < xs.size() && xs[j] == xs[i]) ++j;
      t.values.push_back(xs[i]);
      t.counts.push_back(j - i);
      i = j;
    }
    const std::size_t k = t.values.size();
    t.tail_counts.assign(k, 0);
    t.tail_log_sums.assign(k, 0.0);
    std::uint64_t running = 0;
    double log_running = 0.0;
    for (std::size_t i = k; i-- > 0;) {
      running += t.counts[i];
      log_running += static_cast<double>(t.counts[i]) *
                     std::log(static_cast<double>(t.values[i]));
      t.tail_counts[i] = running;
      t.tail_log_sums[i] = log_running;
    }
    return t;
  }

  // Index of the first distinct value >= x, or size() when none.
  std::size_t first_at_least(std::int64_t x) const {
    return static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), x) - values.begin());
  }
};

}  // namespace detail
}  // namespace powerscan
