#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "powerscan/model.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("model construction validates parameters") {
  CHECK_THROWS_AS(powerscan::PowerLawModel::discrete(1.0, 1),
                  std::domain_error);
  CHECK_THROWS_AS(powerscan::PowerLawModel::discrete(0.5, 1),
                  std::domain_error);
  CHECK_THROWS_AS(powerscan::PowerLawModel::discrete(2.0, 0),
                  std::domain_error);
  CHECK_THROWS_AS(powerscan::PowerLawModel::continuous(2.0, -1.0),
                  std::domain_error);
  CHECK_NOTHROW(powerscan::PowerLawModel::discrete(1.0 + 1e-9, 1));
  CHECK_NOTHROW(powerscan::PowerLawModel::continuous(2.0, 0.5));
}

TEST_CASE("discrete and continuous operations reject the wrong model kind") {
  const auto d = powerscan::PowerLawModel::discrete(2.0, 1);
  const auto c = powerscan::PowerLawModel::continuous(2.0, 1.0);
  CHECK_THROWS_AS(powerscan::pmf(c, 1), std::invalid_argument);
  CHECK_THROWS_AS(powerscan::ccdf_discrete(c, 1), std::invalid_argument);
  CHECK_THROWS_AS(powerscan::pdf_continuous(d, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(powerscan::ccdf_continuous(d, 1.0), std::invalid_argument);
}

TEST_CASE("pmf matches closed forms and references") {
  const auto m21 = powerscan::PowerLawModel::discrete(2.0, 1);
  CHECK(powerscan::pmf(m21, 1) ==
        Catch::Approx(6.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK(powerscan::pmf(m21, 2) ==
        Catch::Approx(6.0 / (kPi * kPi) / 4.0).epsilon(1e-12));

  // p(2) for alpha = 3, xmin = 2 is 2^-3 / (zeta(3) - 1).
  const auto m32 = powerscan::PowerLawModel::discrete(3.0, 2);
  const double ref = 0.125 / (1.2020569031595943 - 1.0);
  CHECK(powerscan::pmf(m32, 2) == Catch::Approx(ref).epsilon(1e-11));
  CHECK(powerscan::pmf(m32, 2) == Catch::Approx(0.61864).epsilon(1e-4));

  CHECK_THROWS_AS(powerscan::pmf(m32, 1), std::domain_error);
}

TEST_CASE("pmf lies in (0, 1] and decreases strictly") {
  const auto m = powerscan::PowerLawModel::discrete(2.5, 3);
  double prev = 2.0;
  for (std::int64_t x = 3; x <= 60; ++x) {
    const double p = powerscan::pmf(m, x);
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("ccdf is exactly 1 at xmin and matches references") {
  const auto m21 = powerscan::PowerLawModel::discrete(2.0, 1);
  CHECK(powerscan::ccdf_discrete(m21, 1) == 1.0);
  CHECK(powerscan::ccdf_discrete(m21, 2) ==
        Catch::Approx((kPi * kPi / 6.0 - 1.0) / (kPi * kPi / 6.0))
            .epsilon(1e-12));

  const auto m32 = powerscan::PowerLawModel::discrete(3.0, 2);
  const double ref =
      oracle::zeta(3.0, 5.0).value / oracle::zeta(3.0, 2.0).value;
  CHECK(powerscan::ccdf_discrete(m32, 5) == Catch::Approx(ref).epsilon(1e-11));

  CHECK(powerscan::ccdf_discrete(powerscan::PowerLawModel::discrete(7.3, 40),
                                 40) == 1.0);
  CHECK_THROWS_AS(powerscan::ccdf_discrete(m32, 1), std::domain_error);
}

TEST_CASE("ccdf decreases strictly in x") {
  const auto m = powerscan::PowerLawModel::discrete(2.5, 3);
  double prev = 2.0;
  for (std::int64_t x = 3; x <= 60; ++x) {
    const double c = powerscan::ccdf_discrete(m, x);
    CHECK(c > 0.0);
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("cdf complements the ccdf one step up") {
  const auto m = powerscan::PowerLawModel::discrete(1.8, 2);
  for (std::int64_t x = 2; x <= 40; ++x)
    CHECK(powerscan::cdf_discrete(m, x) ==
          1.0 - powerscan::ccdf_discrete(m, x + 1));
  CHECK(powerscan::cdf_discrete(m, 2) ==
        Catch::Approx(powerscan::pmf(m, 2)).margin(1e-14));
}

TEST_CASE("pmf sums to the mass the ccdf says is missing") {
  const double alphas[] = {1.8, 2.5, 4.0};
  const std::int64_t xmins[] = {1, 5};
  for (const double alpha : alphas)
    for (const std::int64_t xmin : xmins) {
      INFO("alpha=" << alpha << " xmin=" << xmin);
      const auto m = powerscan::PowerLawModel::discrete(alpha, xmin);
      double total = 0.0;
      const std::int64_t upper = xmin + 10000;
      for (std::int64_t x = xmin; x <= upper; ++x)
        total += powerscan::pmf(m, x);
      total += powerscan::ccdf_discrete(m, upper + 1);
      CHECK(total == Catch::Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("continuous pdf matches closed forms and integrates to 1") {
  CHECK(powerscan::pdf_continuous(powerscan::PowerLawModel::continuous(2.0, 1.0),
                                  1.0) == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(powerscan::pdf_continuous(powerscan::PowerLawModel::continuous(3.0, 2.0),
                                  4.0) == Catch::Approx(0.125).epsilon(1e-14));

  // Decade-by-decade quadrature out to where the remaining mass is ~3e-14.
  const auto m = powerscan::PowerLawModel::continuous(2.5, 2.0);
  double total = 0.0;
  for (double lo = 2.0; lo < 2.0e9; lo *= 10.0)
    total += oracle::integrate(
        [&](double x) { return powerscan::pdf_continuous(m, x); }, lo,
        lo * 10.0);
  CHECK(total == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("continuous ccdf matches closed forms") {
  const auto m21 = powerscan::PowerLawModel::continuous(2.0, 1.0);
  CHECK(powerscan::ccdf_continuous(m21, 1.0) == 1.0);
  CHECK(powerscan::ccdf_continuous(m21, 10.0) ==
        Catch::Approx(0.1).epsilon(1e-14));
  CHECK(powerscan::ccdf_continuous(
            powerscan::PowerLawModel::continuous(3.0, 100.0), 200.0) ==
        Catch::Approx(0.25).epsilon(1e-14));

  double prev = 2.0;
  const auto m = powerscan::PowerLawModel::continuous(1.7, 3.0);
  for (double x = 3.0; x <= 30.0; x += 0.7) {
    const double c = powerscan::ccdf_continuous(m, x);
    CHECK(c <= 1.0);
    CHECK(c < prev);
    prev = c;
  }
  CHECK_THROWS_AS(powerscan::ccdf_continuous(m, 2.9), std::domain_error);
}
