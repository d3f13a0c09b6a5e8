#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "harmstable/error.hpp"
#include "harmstable/rng_stable.hpp"
#include "oracles.hpp"

using namespace harmstable;

namespace {

std::vector<double> sas_draws(double alpha, double scale, std::size_t count, std::uint64_t stream) {
  RngStream rng(2024, stream);
  std::vector<double> x(count);
  for (double& v : x) v = sample_sas(alpha, scale, rng);
  return x;
}

double quantile(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  return x[static_cast<std::size_t>(p * static_cast<double>(x.size() - 1))];
}

}  // namespace

TEST_SUITE("rng_stable") {

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(7, 3);
  RngStream b(7, 3);
  RngStream c(7, 4);
  RngStream d(8, 3);
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_c |= x != c.next_u64();
    differs_d |= x != d.next_u64();
  }
  CHECK(differs_c);
  CHECK(differs_d);

  RngStream e(7, 3);
  RngStream f(7, 3);
  for (int i = 0; i < 100; ++i) CHECK(sample_isotropic_stable(1.3, 1.0, e) == sample_isotropic_stable(1.3, 1.0, f));
}

TEST_CASE("uniform variates lie in the open unit interval") {
  RngStream rng(1, 0);
  double total = 0.0;
  const int count = 100000;
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    total += u;
  }
  CHECK(total / count == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("parameter validation") {
  RngStream rng(1, 0);
  CHECK_THROWS_AS(sample_sas(0.0, 1.0, rng), ParameterError);
  CHECK_THROWS_AS(sample_sas(2.1, 1.0, rng), ParameterError);
  CHECK_THROWS_AS(sample_sas(1.5, -1.0, rng), ParameterError);
  CHECK_THROWS_AS(sample_isotropic_stable(-0.5, 1.0, rng), ParameterError);
  CHECK_THROWS_AS(sample_isotropic_stable(1.5, -0.1, rng), ParameterError);
  CHECK_THROWS_AS(poisson_arrivals(0, rng), ParameterError);
}

TEST_CASE("zero scale is a point mass at zero") {
  RngStream rng(5, 5);
  CHECK(sample_sas(1.5, 0.0, rng) == 0.0);
  CHECK(sample_isotropic_stable(0.7, 0.0, rng) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("alpha = 1 gives standard Cauchy quartiles") {
  const auto x = sas_draws(1.0, 1.0, 100000, 11);
  // Standard error of a Cauchy quartile at 1e5 draws is about 0.0086.
  CHECK(quantile(x, 0.25) == doctest::Approx(oracle::cauchy_quantile(0.25)).epsilon(0.04));
  CHECK(quantile(x, 0.75) == doctest::Approx(oracle::cauchy_quantile(0.75)).epsilon(0.04));
}

TEST_CASE("alpha = 2 matches a Gaussian with standard deviation scale * sqrt(2)") {
  const double sigma = 0.8;
  const auto x = sas_draws(2.0, sigma, 100000, 12);
  RngStream rng(99, 0);
  std::vector<double> g(100000);
  for (double& v : g) v = sigma * std::sqrt(2.0) * rng.normal();
  CHECK(oracle::ks(x, g) < 0.02);
}

TEST_CASE("characteristic function matches exp(-(scale t)^alpha)") {
  for (double alpha : {0.7, 1.2, 1.8}) {
    const double scale = 0.7;
    const auto x = sas_draws(alpha, scale, 100000, 13);
    for (double t : {0.3, 1.0, 2.5}) {
      CAPTURE(alpha);
      CAPTURE(t);
      CHECK(std::abs(oracle::empirical_chf(x, t) - std::exp(-std::pow(scale * t, alpha))) < 0.01);
    }
  }
}

TEST_CASE("median is symmetric about zero") {
  const double alpha = 1.5;
  const std::size_t count = 100000;
  const auto x = sas_draws(alpha, 1.0, count, 14);
  // Density at 0 of SaS(1) is Gamma(1 + 1/alpha) / pi.
  const double f0 = std::tgamma(1.0 + 1.0 / alpha) / std::numbers::pi;
  const double se = 1.0 / (2.0 * f0 * std::sqrt(static_cast<double>(count)));
  CHECK(std::abs(quantile(x, 0.5)) < 3.0 * se);
}

TEST_CASE("isotropic draws are rotation invariant") {
  const double alpha = 1.3;
  const std::size_t count = 100000;
  RngStream a(3, 1);
  RngStream b(3, 2);
  std::vector<std::complex<double>> z(count);
  std::vector<double> re(count);
  for (std::size_t i = 0; i < count; ++i) {
    z[i] = sample_isotropic_stable(alpha, 1.0, a);
    re[i] = sample_isotropic_stable(alpha, 1.0, b).real();
  }
  for (double theta : {std::numbers::pi / 7.0, 1.0, 2.5}) {
    std::vector<double> rotated(count);
    for (std::size_t i = 0; i < count; ++i) rotated[i] = (std::polar(1.0, theta) * z[i]).real();
    CAPTURE(theta);
    CHECK(oracle::ks(rotated, re) < 0.02);
  }
}

TEST_CASE("real part of an isotropic draw is SaS of the same scale") {
  for (double alpha : {0.8, 1.5}) {
    const std::size_t count = 100000;
    RngStream rng(4, 0);
    std::vector<double> re(count);
    for (double& v : re) v = sample_isotropic_stable(alpha, 2.0, rng).real();
    CAPTURE(alpha);
    CHECK(oracle::ks(re, sas_draws(alpha, 2.0, count, 15)) < 0.02);
  }
}

TEST_CASE("Poisson arrivals") {
  RngStream rng(6, 0);
  const Eigen::ArrayXd one = poisson_arrivals(1, rng);
  REQUIRE(one.size() == 1);
  CHECK(one[0] > 0.0);

  const int runs = 10000;
  double total = 0.0;
  for (int i = 0; i < runs; ++i) {
    const Eigen::ArrayXd g = poisson_arrivals(20, rng);
    for (Eigen::Index k = 1; k < g.size(); ++k) REQUIRE(g[k] > g[k - 1]);
    total += g[9];
  }
  // Gamma_10 ~ Gamma(10, 1): mean 10, variance 10.
  const double se = std::sqrt(10.0 / runs);
  CHECK(std::abs(total / runs - 10.0) < 3.0 * se);
}

}
