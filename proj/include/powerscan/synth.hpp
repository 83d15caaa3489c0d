#pragma once

#include <cmath>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <utility>
#include <vector>

#include "powerscan/rng.hpp"
#include "powerscan/sample.hpp"

namespace powerscan {

enum class BodyKind { eq1_mixture, pure_powerlaw };

struct SyntheticSpec {
  std::int64_t n;
  double alpha;
  std::int64_t xmin;
  std::uint64_t seed;
  BodyKind body = BodyKind::eq1_mixture;

  void validate() const {
    if (n < 1) throw std::invalid_argument("SyntheticSpec: n must be >= 1");
    if (!(alpha > 1.0))
      throw std::invalid_argument("SyntheticSpec: alpha must be > 1");
    if (xmin < 1)
      throw std::invalid_argument("SyntheticSpec: xmin must be >= 1");
  }
};

// Mixture weight of the power-law branch: the two branch integrals are
// A_tail = xmin/(alpha-1) over [xmin, inf) and A_body = (xmin/alpha)(e^alpha
// - 1) over (0, xmin). The xmin factor cancels in the ratio.
inline double tail_weight(double alpha, double xmin) {
  if (!(alpha > 1.0))
    throw std::domain_error("tail_weight: alpha must be > 1");
  if (!(xmin > 0.0)) throw std::domain_error("tail_weight: xmin must be > 0");
  const double a_tail = xmin / (alpha - 1.0);
  const double a_body = xmin / alpha * std::expm1(alpha);
  return a_tail / (a_tail + a_body);
}

namespace detail {

// Continuous tail draws can blow past the integer range for u near 0; cap
// before rounding so llround stays defined.
inline constexpr double kMaxContinuousDraw = 4.6e18;

inline std::int64_t discretize(double x) {
  if (x > kMaxContinuousDraw) x = kMaxContinuousDraw;
  const long long r = std::llround(x);
  return r < 1 ? 1 : static_cast<std::int64_t>(r);
}

}  // namespace detail

// Exponential body below xmin plus power-law tail above it, both drawn by
// inverse transform and rounded to the nearest integer (clamped to >= 1).
inline Sample sample_eq1(const SyntheticSpec& spec) {
  spec.validate();
  const double alpha = spec.alpha;
  const double xmin = static_cast<double>(spec.xmin);
  const double w = tail_weight(alpha, xmin);
  const double tail_exp = -1.0 / (alpha - 1.0);
  const double body_scale = -std::expm1(-alpha);  // 1 - e^-alpha

  SplitMix64 rng(spec.seed);
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(spec.n));
  for (std::int64_t i = 0; i < spec.n; ++i) {
    if (rng.next_unit() < w) {
      const double u = rng.next_unit_open();
      values.push_back(detail::discretize(xmin * std::pow(u, tail_exp)));
    } else {
      const double u = rng.next_unit();
      values.push_back(
          detail::discretize(-(xmin / alpha) * std::log1p(-u * body_scale)));
    }
  }
  return Sample(std::move(values));
}

// Draws from the discrete power law on {xmin, xmin+1, ...}. Proposals come
// from the rounded continuous transform x = round((xmin - 1/2) u^{-1/(a-1)}),
// whose mass at k is proportional to (k-1/2)^{1-a} - (k+1/2)^{1-a}; a
// rejection step then thins this to the exact x^-a law. The thinning
// probability is (a-1) k^-a over that bracket difference, which midpoint
// convexity keeps at or below 1, so no zeta evaluation is needed.
inline Sample sample_pure(const SyntheticSpec& spec) {
  spec.validate();
  const double alpha = spec.alpha;
  const double shift = static_cast<double>(spec.xmin) - 0.5;
  const double tail_exp = -1.0 / (alpha - 1.0);

  SplitMix64 rng(spec.seed);
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(spec.n));
  while (std::ssize(values) < spec.n) {
    const double u = rng.next_unit_open();
    const std::int64_t k = detail::discretize(shift * std::pow(u, tail_exp));
    if (k < spec.xmin) continue;

    const double km = static_cast<double>(k) - 0.5;
    const double bracket =
        -std::expm1((1.0 - alpha) * std::log1p(1.0 / km));
    const double accept =
        (alpha - 1.0) *
        std::exp(-alpha * std::log(static_cast<double>(k)) +
                 (alpha - 1.0) * std::log(km)) /
        bracket;
    if (rng.next_unit() < accept) values.push_back(k);
  }
  return Sample(std::move(values));
}

inline Sample generate(const SyntheticSpec& spec) {
  return spec.body == BodyKind::eq1_mixture ? sample_eq1(spec)
                                            : sample_pure(spec);
}

}  // namespace powerscan
