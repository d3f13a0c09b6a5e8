#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "harmstable/io.hpp"
#include "harmstable/kernels.hpp"
#include "harmstable/levy_model.hpp"
#include "harmstable/quadrature.hpp"

namespace harmstable {

/// Resolved configuration of a Monte Carlo experiment. Thread count is not
/// part of it: results do not depend on it.
struct ExperimentConfig {
  double alpha = 1.2;
  std::optional<double> hurst;
  double half_width = 50.0;
  std::size_t n_terms = 100000;
  std::vector<std::size_t> n_list;
  std::size_t replications = 200;
  std::uint64_t master_seed = 1;
  bool enforce_resolution = true;
};

struct PerNSummary {
  std::size_t n = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  /// Median of Q_n itself (LLN runs only).
  std::optional<double> statistic_median;
};

struct SlopeFit {
  double slope = 0.0;
  double standard_error = 0.0;
};

struct ExperimentReport {
  std::string kind;  ///< lln | clt | iid
  ExperimentConfig config;
  std::vector<PerNSummary> per_n;
  std::optional<SlopeFit> slope;
  /// LLN runs: log-log slope of median Q_n against n.
  std::optional<SlopeFit> statistic_slope;
  std::optional<double> ks_distance;
  /// LLN and CLT runs: alpha-mass of r outside [-M, M].
  std::optional<double> tail_error;
  double runtime_seconds = 0.0;
  std::vector<SampleRow> samples;  ///< raw per-replication values
};

/// Largest n admitted for a jump measure with n_terms atoms on [-M, M]:
/// n_terms / (2M). Runs above n_terms / (4M) are flagged with a warning.
std::size_t max_resolved_n(std::size_t n_terms, double half_width);

/// |Q_n/n - U| over independent coupled realizations, per n in n_list,
/// with the log-log slope of the median error.
ExperimentReport run_lln_experiment(const ModelParams& p, const ExperimentConfig& cfg,
                                    unsigned threads = 0);

/// Two-sample KS distance between normalized errors at n = n_list[0] and
/// realized Rosenblatt values on independent measures.
ExperimentReport run_clt_experiment(const ModelParams& p, const ExperimentConfig& cfg,
                                    unsigned threads = 0);

/// Quadratic variation of iid isotropic alpha-stable draws; slope of the
/// median against n.
ExperimentReport iid_stable_qv_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

/// Sup distance between the two empirical distribution functions.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Least-squares slope of log y against log n.
SlopeFit loglog_slope(const std::vector<std::pair<double, double>>& points);

/// Linear-interpolation sample quantile (type 7); `sorted` must be sorted.
double sorted_quantile(std::span<const double> sorted, double prob);

/// |n^{-2/alpha} h_n(s/n, u/n) - h(s, u)| for each n.
std::vector<double> kernel_limit_check(double s, double u, const ModelParams& p,
                                       const std::vector<std::size_t>& n_list);

/// scale |su|^{-r1} (1{s-1 <= u < s} + |s-u|^{-r2} 1{u < s-1}).
RealKernel2 power_law_kernel(double r1, double r2, double scale = 1.0);

/// Integral of power_law_kernel over [-Lambda, Lambda]^2 for each Lambda.
std::vector<double> power_law_quadrature(double r1, double r2, const std::vector<double>& lambdas,
                                       const QuadratureSpec& quad, double scale = 1.0);

/// Settings of the exact-identity suite.
struct IdentityConfig {
  std::size_t trials = 100;
  std::vector<double> alphas{0.8, 1.2, 1.6};  ///< cycled over trials
  double hurst = 0.75;
  double half_width = 10.0;
  std::size_t n_terms = 1000;
  long max_lag = 16;
  std::vector<std::size_t> m_list{1, 4, 16, 64};
  std::uint64_t master_seed = 1;
};

/// Largest relative errors of the two pathwise identities over all trials:
/// |int g dL|^2 = sum |g z|^2 + 2 Re (pair sum of g(s) conj g(u)) for the
/// lagged kernels, and m^{2-2H}(Q_m/m - U) = 2 Re (pair sum of h_m).
/// Errors are relative to the natural scale (sum |g z|)^2.
struct IdentityReport {
  IdentityConfig config;
  std::size_t norm_checks = 0;
  std::size_t error_checks = 0;
  double max_norm_error = 0.0;
  double max_error_identity_error = 0.0;
  double runtime_seconds = 0.0;

  bool passed(double tolerance) const {
    return max_norm_error <= tolerance && max_error_identity_error <= tolerance;
  }
};

IdentityReport run_identity_suite(const IdentityConfig& cfg, unsigned threads = 0);

/// condition_value of the limit kernel h with psi of tail exponent r_exp,
/// one value per outer cutoff.
std::vector<double> condition_scan(const ModelParams& p, double r_exp,
                                   const std::vector<double>& lambdas, const QuadratureSpec& quad);

/// Kernel whose alpha-th power is the power-law bound bound, for the existence
/// certifier.
Kernel2 power_law_root_kernel(double r1, double r2, double alpha);

}  // namespace harmstable
