#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "powerscan/estimators.hpp"
#include "powerscan/rng.hpp"
#include "powerscan/sample.hpp"

namespace powerscan {

struct BootstrapReplicate {
  std::optional<XminEstimate> estimate;
  std::string error;  // empty on success

  bool ok() const { return estimate.has_value(); }
};

namespace detail {

// Shared driver: replicate b gets resample(b), results land in slot b no
// matter which thread ran it. Estimator failures (e.g. a degenerate
// resample) are recorded per replicate rather than aborting the batch.
template <class Estimator, class Resampler>
std::vector<BootstrapReplicate> bootstrap_with_resampler(Estimator&& estimator,
                                                         int replicates,
                                                         Resampler&& resample,
                                                         int threads) {
  if (replicates < 1)
    throw std::invalid_argument("bootstrap_xmin: need at least 1 replicate");

  std::vector<BootstrapReplicate> out(static_cast<std::size_t>(replicates));
  auto run_one = [&](int b) {
    auto& slot = out[static_cast<std::size_t>(b)];
    try {
      const Sample resampled(resample(static_cast<std::uint64_t>(b)));
      slot.estimate = estimator(resampled);
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  };

  if (threads <= 1) {
    for (int b = 0; b < replicates; ++b) run_one(b);
    return out;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, replicates);
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int b = next.fetch_add(1); b < replicates; b = next.fetch_add(1))
        run_one(b);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace detail

// Runs the estimator on `replicates` with-replacement resamples of the
// sample. Replicate b draws from its own stream seeded by (seed, b), so the
// output sequence is identical for any thread count. The estimator must be
// safe to call concurrently when threads > 1.
template <class Estimator>
std::vector<BootstrapReplicate> bootstrap_xmin(const Sample& sample,
                                               Estimator&& estimator,
                                               int replicates,
                                               std::uint64_t seed,
                                               int threads = 1) {
  const auto& values = sample.values();
  const auto n = static_cast<std::uint64_t>(values.size());
  auto resample = [&values, n, seed](std::uint64_t b) {
    SplitMix64 rng(derive_stream_seed(seed, b));
    std::vector<std::int64_t> draw(values.size());
    for (auto& v : draw) v = values[rng.below(n)];
    return draw;
  };
  return detail::bootstrap_with_resampler(estimator, replicates, resample,
                                          threads);
}

}  // namespace powerscan
