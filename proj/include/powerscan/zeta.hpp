#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace powerscan {

// zeta(alpha, q) = sum_{n>=0} (n + q)^-alpha, the normalizer of the discrete
// power-law pmf and the dominant cost of the cumulative-distance scans.
struct ZetaResult {
  double value;
  double abs_error_bound;
};

namespace detail {

// One increment per evaluation of the core routine below; the scans use this
// to compare the zeta budget of the two distance statistics.
inline thread_local std::uint64_t zeta_evaluations = 0;

// B_{2j} / (2j)! for j = 1..13. The last entry is only used to bound the
// truncation error, never added to the sum.
inline constexpr double kBernoulliFactorial[13] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    7.0 / (6.0 * 87178291200.0),
    -3617.0 / (510.0 * 20922789888000.0),
    43867.0 / (798.0 * 6402373705728000.0),
    -174611.0 / (330.0 * 2432902008176640000.0),
    854513.0 / (138.0 * 1124000727777607680000.0),
    -236364091.0 / (2730.0 * 620448401733239439360000.0),
    8553103.0 / (6.0 * 403291461126605635584000000.0),
};

struct ZetaCore {
  double scaled;     // zeta(alpha, q) * q^alpha
  double log_value;  // log zeta(alpha, q)
  double rel_bound;  // relative truncation + rounding bound
};

// Euler-Maclaurin evaluation. Terms below the switch point a = q + N are
// summed directly; the remainder zeta(alpha, a) is expanded as
//   a^(1-alpha)/(alpha-1) + a^-alpha/2
//     + sum_j B_{2j}/(2j)! * alpha(alpha+1)...(alpha+2j-2) * a^(-alpha-2j+1).
// Everything is accumulated scaled by q^alpha so that very steep exponents
// (the fitted alpha of a degenerate two-point tail can reach 1e4) underflow
// to zero inside ratios instead of poisoning them with NaNs.
inline ZetaCore hurwitz_zeta_core(double alpha, double q) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw std::domain_error("hurwitz_zeta: alpha must be > 1");
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::domain_error("hurwitz_zeta: q must be > 0");
  ++zeta_evaluations;

  // With a >= max(28, 2*alpha) the Bernoulli terms shrink by at least ~10x
  // each, so 12 of them reach ~1e-15 relative before the table runs out.
  const double switch_point = std::max(28.0, 2.0 * alpha);
  std::size_t n_direct = 0;
  if (q < switch_point)
    n_direct = static_cast<std::size_t>(std::ceil(switch_point - q));
  const double a = q + static_cast<double>(n_direct);

  // Direct part: sum_{k<N} ((q+k)/q)^-alpha. For steep alpha the terms decay
  // geometrically (ratio <= e^-1/2 inside the direct range), so once they sit
  // below rounding the rest of the block is dropped and bounded instead.
  double direct = 0.0;
  double skipped_bound = 0.0;
  std::size_t n_summed = 0;
  for (std::size_t k = 0; k < n_direct; ++k) {
    const double term =
        std::exp(-alpha * std::log1p(static_cast<double>(k) / q));
    direct += term;
    ++n_summed;
    if (term <= 1e-17 * direct && k + 1 < n_direct) {
      skipped_bound = 4.0 * term;
      break;
    }
  }

  // Tail at a, scaled by q^alpha: r = (a/q)^-alpha.
  const double r_exponent = -alpha * std::log(a / q);
  const double r = r_exponent < -745.0 ? 0.0 : std::exp(r_exponent);
  double tail = 0.0;
  double bern_bound = 0.0;
  if (r > 0.0) {
    double correction = 0.0;
    double rising = alpha;       // alpha(alpha+1)...(alpha+2j-2)
    double a_power = 1.0 / a;    // a^-(2j-1)
    const double inv_a2 = 1.0 / (a * a);
    double prev_mag = HUGE_VAL;
    const double base = direct / r + a / (alpha - 1.0) + 0.5;
    for (int j = 1; j <= 13; ++j) {
      const double term = kBernoulliFactorial[j - 1] * rising * a_power;
      const double mag = std::abs(term);
      if (j == 13 || mag <= 1e-17 * base || mag > prev_mag) {
        bern_bound = mag + (mag > prev_mag ? prev_mag : 0.0);
        break;
      }
      correction += term;
      prev_mag = mag;
      rising *= (alpha + 2.0 * j - 1.0) * (alpha + 2.0 * j);
      a_power *= inv_a2;
    }
    tail = r * (a / (alpha - 1.0) + 0.5 + correction);
    bern_bound *= r;
  }

  const double scaled = direct + tail;
  const double rounding =
      (static_cast<double>(n_summed) + 24.0) * 1.2e-16 * scaled;
  const double rel_bound =
      std::max((bern_bound + skipped_bound + rounding) / scaled, 1e-16);

  ZetaCore out;
  out.scaled = scaled;
  out.log_value = std::log(scaled) - alpha * std::log(q);
  out.rel_bound = rel_bound;
  return out;
}

}  // namespace detail

inline ZetaResult hurwitz_zeta(double alpha, double q) {
  const detail::ZetaCore core = detail::hurwitz_zeta_core(alpha, q);
  const double value = core.scaled * std::pow(q, -alpha);
  return ZetaResult{value, core.rel_bound * value};
}

// log zeta(alpha, q); finite even where the value itself under/overflows.
// The distance statistics and the exact likelihood work in this form.
inline double log_hurwitz_zeta(double alpha, double q) {
  return detail::hurwitz_zeta_core(alpha, q).log_value;
}

inline std::uint64_t zeta_call_count() { return detail::zeta_evaluations; }
inline void reset_zeta_call_count() { detail::zeta_evaluations = 0; }

}  // namespace powerscan
