#include <cmath>
#include <random>

#include "doctest.h"
#include "harmstable/analysis.hpp"
#include "harmstable/error.hpp"
#include "oracles.hpp"

using namespace harmstable;

TEST_SUITE("analysis") {

TEST_CASE("two-sample KS distance") {
  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> b{1.5, 2.5};
  CHECK(ks_two_sample(a, b) == doctest::Approx(0.5));
  CHECK(ks_two_sample(a, a) == 0.0);
  CHECK(ks_two_sample(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5}) == 1.0);
  CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, b), ParameterError);

  std::mt19937_64 gen(1);
  std::normal_distribution<double> normal;
  std::vector<double> x(500);
  std::vector<double> y(731);
  for (double& v : x) v = normal(gen);
  for (double& v : y) v = 0.2 + normal(gen);
  const double d = ks_two_sample(x, y);
  CHECK(d == doctest::Approx(oracle::ks(x, y)).epsilon(1e-14));
  CHECK(d == ks_two_sample(y, x));
  std::vector<double> ex(x.size());
  std::vector<double> ey(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) ex[i] = std::exp(x[i]);
  for (std::size_t i = 0; i < y.size(); ++i) ey[i] = std::exp(y[i]);
  CHECK(ks_two_sample(ex, ey) == d);
}

TEST_CASE("log-log slope") {
  std::vector<std::pair<double, double>> exact;
  std::vector<std::pair<double, double>> flat;
  std::vector<std::pair<double, double>> noisy;
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> wiggle(-0.01, 0.01);
  for (double n : {64.0, 128.0, 256.0, 512.0, 1024.0}) {
    exact.emplace_back(n, std::pow(n, -2.0));
    flat.emplace_back(n, 3.0);
    noisy.emplace_back(n, 7.0 * std::pow(n, -0.5) * (1.0 + wiggle(gen)));
  }
  const SlopeFit e = loglog_slope(exact);
  CHECK(e.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(e.standard_error < 1e-12);
  CHECK(std::abs(loglog_slope(flat).slope) < 1e-12);
  CHECK(std::abs(loglog_slope(noisy).slope + 0.5) < 0.02);

  CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {2.0, 0.0}, {3.0, 1.0}}), ParameterError);
  CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {2.0, 1.0}}), ParameterError);
  CHECK_THROWS_AS(loglog_slope({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}), ParameterError);
}

TEST_CASE("sample quantiles") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(sorted_quantile(x, 0.0) == 1.0);
  CHECK(sorted_quantile(x, 1.0) == 4.0);
  CHECK(sorted_quantile(x, 0.5) == 2.5);
  CHECK(sorted_quantile(x, 0.25) == doctest::Approx(1.75));
}

TEST_CASE("kernel limit") {
  const ModelParams p(1.2, 0.75);
  for (auto [s, u] : {std::pair{1.0, -0.5}, std::pair{3.0, 1.0}, std::pair{0.5, -2.0}}) {
    const auto d = kernel_limit_check(s, u, p, {64, 1024, 16384});
    CHECK(d.back() < 1e-2);
    CHECK(d.back() < d.front());
  }
  CHECK_THROWS_AS(kernel_limit_check(0.0, -1.0, p, {64}), ParameterError);
  CHECK_THROWS_AS(kernel_limit_check(1.0, 2.0, p, {64}), ParameterError);
}

TEST_CASE("power-law bound quadrature") {
  const QuadratureSpec q;
  const auto stable = power_law_quadrature(0.7, 1.2, {50.0, 100.0}, q);
  CHECK(std::abs(stable[1] / stable[0] - 1.0) < 0.05);
  const auto growing = power_law_quadrature(0.4, 1.2, {50.0, 100.0}, q);
  CHECK(growing[1] > 1.2 * growing[0]);
  const auto zero = power_law_quadrature(0.7, 1.2, {50.0}, q, 0.0);
  CHECK(zero[0] == 0.0);
  CHECK_THROWS_AS(power_law_kernel(0.0, 1.0), ParameterError);
}

TEST_CASE("LLN runner") {
  const ModelParams p(1.2, 0.75);
  ExperimentConfig cfg;
  cfg.half_width = 10.0;
  cfg.n_terms = 2000;
  cfg.n_list = {8, 16, 32, 64};
  cfg.replications = 60;
  cfg.master_seed = 3;
  const ExperimentReport one = run_lln_experiment(p, cfg, 1);
  const ExperimentReport three = run_lln_experiment(p, cfg, 3);
  REQUIRE(one.samples.size() == 240);
  for (std::size_t i = 0; i < one.samples.size(); ++i) {
    REQUIRE(one.samples[i].value == three.samples[i].value);
  }
  REQUIRE(one.slope);
  CHECK(one.slope->slope == three.slope->slope);
  CHECK(one.per_n.size() == 4);
  CHECK(one.kind == "lln");
  CHECK(one.tail_error);

  ExperimentConfig bad = cfg;
  bad.n_list = {8, 200};
  CHECK_THROWS_AS(run_lln_experiment(p, bad, 1), ConfigError);
  bad = cfg;
  bad.replications = 49;
  CHECK_THROWS_AS(run_lln_experiment(p, bad, 1), ConfigError);
  bad = cfg;
  bad.n_list = {16, 8, 32};
  CHECK_THROWS_AS(run_lln_experiment(p, bad, 1), ConfigError);
}

TEST_CASE("LLN runner on single-atom measures") {
  const ModelParams p(1.2, 0.75);
  ExperimentConfig cfg;
  cfg.half_width = 10.0;
  cfg.n_terms = 1;
  cfg.n_list = {64, 128, 256, 512};
  cfg.replications = 50;
  cfg.enforce_resolution = false;
  const ExperimentReport r = run_lln_experiment(p, cfg, 1);
  for (const SampleRow& row : r.samples) CHECK(row.value == 0.0);
  CHECK_FALSE(r.slope.has_value());
}

TEST_CASE("CLT runner") {
  ExperimentConfig cfg;
  cfg.half_width = 5.0;
  cfg.n_terms = 400;
  cfg.n_list = {16};
  cfg.replications = 40;
  CHECK_THROWS_AS(run_clt_experiment(ModelParams(1.8, 0.55), cfg, 1), ConfigError);
  const ExperimentReport r = run_clt_experiment(ModelParams(1.2, 0.75), cfg, 2);
  REQUIRE(r.ks_distance);
  CHECK(*r.ks_distance >= 0.0);
  CHECK(*r.ks_distance <= 1.0);
  CHECK(r.samples.size() == 80);
  CHECK(r.per_n.size() == 1);
  cfg.n_list = {16, 32};
  CHECK_THROWS_AS(run_clt_experiment(ModelParams(1.2, 0.75), cfg, 1), ConfigError);
}

TEST_CASE("iid stable quadratic variation runner") {
  ExperimentConfig cfg;
  cfg.alpha = 1.5;
  cfg.n_list = {64, 256, 1024};
  cfg.replications = 100;
  const ExperimentReport r = iid_stable_qv_experiment(cfg, 2);
  REQUIRE(r.slope);
  CHECK(r.slope->slope > 1.0);
  CHECK(r.kind == "iid");
  CHECK_FALSE(r.config.hurst.has_value());
  cfg.replications = 99;
  CHECK_THROWS_AS(iid_stable_qv_experiment(cfg, 1), ConfigError);
}

TEST_CASE("identity suite") {
  IdentityConfig cfg;
  cfg.trials = 6;
  const IdentityReport r = run_identity_suite(cfg, 2);
  CHECK(r.norm_checks == 6 * 17);
  CHECK(r.error_checks == 6 * 4);
  CHECK(r.passed(1e-8));
}

}
