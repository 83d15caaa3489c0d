#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "powerscan/zeta.hpp"

namespace powerscan {

enum class ModelKind { discrete, continuous };

// A fitted power law: scaling parameter alpha and lower bound xmin.
struct PowerLawModel {
  double alpha;
  double xmin;
  ModelKind kind;

  static PowerLawModel discrete(double alpha, std::int64_t xmin) {
    PowerLawModel m{alpha, static_cast<double>(xmin), ModelKind::discrete};
    m.validate();
    return m;
  }

  static PowerLawModel continuous(double alpha, double xmin) {
    PowerLawModel m{alpha, xmin, ModelKind::continuous};
    m.validate();
    return m;
  }

  void validate() const {
    if (!(alpha > 1.0))
      throw std::domain_error("PowerLawModel: alpha must be > 1");
    if (!(xmin > 0.0))
      throw std::domain_error("PowerLawModel: xmin must be > 0");
    if (kind == ModelKind::discrete && xmin != std::floor(xmin))
      throw std::domain_error("PowerLawModel: discrete xmin must be integral");
  }
};

namespace detail {

inline void require_discrete(const PowerLawModel& m, const char* op) {
  if (m.kind != ModelKind::discrete)
    throw std::invalid_argument(std::string(op) +
                                ": model must be discrete");
}

inline void require_continuous(const PowerLawModel& m, const char* op) {
  if (m.kind != ModelKind::continuous)
    throw std::invalid_argument(std::string(op) +
                                ": model must be continuous");
}

}  // namespace detail

// p(x) = x^-alpha / zeta(alpha, xmin)
inline double pmf(const PowerLawModel& model, std::int64_t x) {
  detail::require_discrete(model, "pmf");
  if (static_cast<double>(x) < model.xmin)
    throw std::domain_error("pmf: x below xmin");
  return std::exp(-model.alpha * std::log(static_cast<double>(x)) -
                  log_hurwitz_zeta(model.alpha, model.xmin));
}

// Pr(X >= x) = zeta(alpha, x) / zeta(alpha, xmin). The mass at x is included:
// under the pmf above this ratio is the weight of the support {x, x+1, ...}.
inline double ccdf_discrete(const PowerLawModel& model, std::int64_t x) {
  detail::require_discrete(model, "ccdf_discrete");
  if (static_cast<double>(x) < model.xmin)
    throw std::domain_error("ccdf_discrete: x below xmin");
  if (static_cast<double>(x) == model.xmin) return 1.0;
  return std::exp(log_hurwitz_zeta(model.alpha, static_cast<double>(x)) -
                  log_hurwitz_zeta(model.alpha, model.xmin));
}

// Pr(X <= x) = 1 - Pr(X >= x+1), so sum(pmf) + ccdf of the remainder is 1.
inline double cdf_discrete(const PowerLawModel& model, std::int64_t x) {
  detail::require_discrete(model, "cdf_discrete");
  if (static_cast<double>(x) < model.xmin)
    throw std::domain_error("cdf_discrete: x below xmin");
  return 1.0 - ccdf_discrete(model, x + 1);
}

// ((alpha - 1) / xmin) * (x / xmin)^-alpha, for x >= xmin.
inline double pdf_continuous(const PowerLawModel& model, double x) {
  detail::require_continuous(model, "pdf_continuous");
  if (x < model.xmin) throw std::domain_error("pdf_continuous: x below xmin");
  return (model.alpha - 1.0) / model.xmin *
         std::pow(x / model.xmin, -model.alpha);
}

// (x / xmin)^(-alpha + 1)
inline double ccdf_continuous(const PowerLawModel& model, double x) {
  detail::require_continuous(model, "ccdf_continuous");
  if (x < model.xmin) throw std::domain_error("ccdf_continuous: x below xmin");
  return std::pow(x / model.xmin, -model.alpha + 1.0);
}

}  // namespace powerscan
