#include "harmstable/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <string>

#include "harmstable/error.hpp"
#include "harmstable/harmonizable.hpp"
#include "harmstable/parallel.hpp"

namespace harmstable {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kRoundingFloor = 1e-12;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PerNSummary summarize(std::size_t n, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return {n, sorted_quantile(values, 0.5), sorted_quantile(values, 0.25),
          sorted_quantile(values, 0.75), std::nullopt};
}

/// Slope of the medians, or nothing when a median is not positive.
std::optional<SlopeFit> median_slope(const std::vector<PerNSummary>& per_n, bool statistic) {
  std::vector<std::pair<double, double>> points;
  for (const PerNSummary& s : per_n) {
    const double y = statistic ? s.statistic_median.value_or(0.0) : s.median;
    if (!(y > 0.0)) return std::nullopt;
    points.emplace_back(static_cast<double>(s.n), y);
  }
  if (points.size() < 3) return std::nullopt;
  return loglog_slope(points);
}

void check_n_list(const std::vector<std::size_t>& n_list) {
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw ConfigError("n_list entries must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ConfigError("n_list must be increasing");
  }
}

void check_resolution(const ExperimentConfig& cfg, std::size_t n_max) {
  if (!cfg.enforce_resolution) return;
  const std::size_t limit = max_resolved_n(cfg.n_terms, cfg.half_width);
  if (n_max > limit) {
    throw ConfigError("resolution rule violated: n = " + std::to_string(n_max) +
                      " exceeds n_terms / (2 half_width) = " + std::to_string(limit));
  }
  if (4.0 * cfg.half_width * static_cast<double>(n_max) > static_cast<double>(cfg.n_terms)) {
    std::clog << "warning: n = " << n_max << " exceeds n_terms / (4 half_width); atom spacing "
              << "is close to the 1/n frequency scale\n";
  }
}

}  // namespace

std::size_t max_resolved_n(std::size_t n_terms, double half_width) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n_terms) / (2.0 * half_width)));
}

ExperimentReport run_lln_experiment(const ModelParams& p, const ExperimentConfig& cfg,
                                    unsigned threads) {
  const auto start = Clock::now();
  check_n_list(cfg.n_list);
  if (cfg.replications < 50) throw ConfigError("replications must be at least 50");
  const std::size_t n_max = cfg.n_list.back();
  check_resolution(cfg, n_max);

  const std::size_t reps = cfg.replications;
  const std::size_t k = cfg.n_list.size();
  std::vector<double> errors(reps * k);
  std::vector<double> statistics(reps * k);

  for_each_index(reps, threads, [&](std::size_t r) {
    RngStream rng(cfg.master_seed, r);
    const JumpMeasure jm = build_jump_measure(p.alpha(), cfg.half_width, cfg.n_terms, rng);
    const Provenance source{cfg.master_seed, r, cfg.half_width, cfg.n_terms};
    const CoupledRealization cr = couple(jm, n_max, p, cfg.n_list, source, false);
    for (std::size_t i = 0; i < k; ++i) {
      const auto [m, q] = cr.q_partial[i];
      statistics[r * k + i] = q;
      const double error = std::abs(q / static_cast<double>(m) - cr.u_realized);
      // Differences at rounding level (the single-atom case) count as zero.
      errors[r * k + i] = error <= kRoundingFloor * cr.u_realized ? 0.0 : error;
    }
  });

  ExperimentReport report;
  report.kind = "lln";
  report.config = cfg;
  report.config.hurst = p.hurst();
  report.config.alpha = p.alpha();
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> column(reps);
    std::vector<double> stat_column(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      column[r] = errors[r * k + i];
      stat_column[r] = statistics[r * k + i];
      report.samples.push_back({r, static_cast<long>(cfg.n_list[i]), column[r]});
    }
    PerNSummary summary = summarize(cfg.n_list[i], column);
    std::sort(stat_column.begin(), stat_column.end());
    summary.statistic_median = sorted_quantile(stat_column, 0.5);
    report.per_n.push_back(summary);
  }
  report.slope = median_slope(report.per_n, false);
  report.statistic_slope = median_slope(report.per_n, true);
  if (cfg.half_width >= 1.0) report.tail_error = tail_error_estimate(p, cfg.half_width);
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_clt_experiment(const ModelParams& p, const ExperimentConfig& cfg,
                                    unsigned threads) {
  const auto start = Clock::now();
  if (!p.clt_regime()) {
    throw ConfigError("clt requires hurst > 1/2 and alpha (1 - hurst) < 1/2; got alpha (1 - hurst) = " +
                      std::to_string(p.alpha() * (1.0 - p.hurst())));
  }
  if (cfg.n_list.size() != 1) throw ConfigError("clt takes exactly one n");
  check_n_list(cfg.n_list);
  if (cfg.replications < 2) throw ConfigError("replications must be at least 2");
  const std::size_t n = cfg.n_list.front();
  check_resolution(cfg, n);

  const std::size_t reps = cfg.replications;
  std::vector<double> finite_n(reps);
  std::vector<double> limit(reps);
  for_each_index(2 * reps, threads, [&](std::size_t task) {
    RngStream rng(cfg.master_seed, task);
    const JumpMeasure jm = build_jump_measure(p.alpha(), cfg.half_width, cfg.n_terms, rng);
    if (task < reps) {
      const IncrementSeries inc = simulate_increments(jm, n, p);
      finite_n[task] = normalized_error(quadratic_statistic(inc, n), realized_U(jm, p), n, p);
    } else {
      limit[task - reps] = realized_rosenblatt(jm, p);
    }
  });

  ExperimentReport report;
  report.kind = "clt";
  report.config = cfg;
  report.config.alpha = p.alpha();
  report.config.hurst = p.hurst();
  report.per_n.push_back(summarize(n, finite_n));
  report.ks_distance = ks_two_sample(finite_n, limit);
  for (std::size_t r = 0; r < reps; ++r) {
    report.samples.push_back({r, static_cast<long>(n), finite_n[r]});
  }
  // n = 0 marks the limit sample.
  for (std::size_t r = 0; r < reps; ++r) report.samples.push_back({r, 0, limit[r]});
  if (cfg.half_width >= 1.0) report.tail_error = tail_error_estimate(p, cfg.half_width);
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport iid_stable_qv_experiment(const ExperimentConfig& cfg, unsigned threads) {
  const auto start = Clock::now();
  check_n_list(cfg.n_list);
  if (cfg.replications < 100) throw ConfigError("replications must be at least 100");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 2.0)) throw ParameterError("alpha must lie in (0, 2)");

  const std::size_t reps = cfg.replications;
  const std::size_t k = cfg.n_list.size();
  const std::size_t n_max = cfg.n_list.back();
  std::vector<double> sums(reps * k);
  for_each_index(reps, threads, [&](std::size_t r) {
    RngStream rng(cfg.master_seed, r);
    double total = 0.0;
    std::size_t next = 0;
    for (std::size_t j = 1; j <= n_max; ++j) {
      total += std::norm(sample_isotropic_stable(cfg.alpha, 1.0, rng));
      if (j == cfg.n_list[next]) sums[r * k + next++] = total;
    }
  });

  ExperimentReport report;
  report.kind = "iid";
  report.config = cfg;
  report.config.hurst.reset();
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> column(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      column[r] = sums[r * k + i];
      report.samples.push_back({r, static_cast<long>(cfg.n_list[i]), column[r]});
    }
    report.per_n.push_back(summarize(cfg.n_list[i], column));
  }
  report.slope = median_slope(report.per_n, false);
  report.runtime_seconds = seconds_since(start);
  return report;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ParameterError("ks_two_sample needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

SlopeFit loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ParameterError("loglog_slope needs at least 3 points");
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [n, y] : points) {
    if (!(n > 0.0)) throw ParameterError("loglog_slope needs positive n");
    if (!(y > 0.0)) throw ParameterError("loglog_slope needs positive y, got " + std::to_string(y));
    lx.push_back(std::log(n));
    ly.push_back(std::log(y));
  }
  for (std::size_t i = 0; i < lx.size(); ++i) {
    for (std::size_t j = i + 1; j < lx.size(); ++j) {
      if (lx[i] == lx[j]) throw ParameterError("loglog_slope needs distinct n");
    }
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  double sse = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double resid = ly[i] - my - slope * (lx[i] - mx);
    sse += resid * resid;
  }
  return {slope, std::sqrt(sse / (k - 2.0) / sxx)};
}

double sorted_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw ParameterError("quantile of an empty sample");
  const double pos = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<double> kernel_limit_check(double s, double u, const ModelParams& p,
                                       const std::vector<std::size_t>& n_list) {
  if (s == 0.0 || u == 0.0 || !(u < s)) {
    throw ParameterError("kernel_limit_check needs nonzero s, u with u < s");
  }
  const Complex limit = kernel_h(s, u, p);
  std::vector<double> deviations;
  deviations.reserve(n_list.size());
  for (std::size_t n : n_list) {
    const double nn = static_cast<double>(n);
    const Complex scaled =
        std::pow(nn, -2.0 / p.alpha()) * kernel_hn(s / nn, u / nn, static_cast<long>(n), p);
    deviations.push_back(std::abs(scaled - limit));
  }
  return deviations;
}

RealKernel2 power_law_kernel(double r1, double r2, double scale) {
  if (!(r1 > 0.0 && r2 > 0.0)) throw ParameterError("power-law exponents must be positive");
  return [r1, r2, scale](double s, double u) -> double {
    if (!(u < s) || scale == 0.0) return 0.0;
    const double base = std::pow(std::abs(s * u), -r1);
    if (u >= s - 1.0) return scale * base;
    return scale * base * std::pow(s - u, -r2);
  };
}

std::vector<double> power_law_quadrature(double r1, double r2, const std::vector<double>& lambdas,
                                       const QuadratureSpec& quad, double scale) {
  const RealKernel2 f = power_law_kernel(r1, r2, scale);
  const TriangleSingularities sing{{0.0}, {0.0}, {0.0, 1.0}};
  std::vector<double> values;
  for (double lambda : lambdas) {
    QuadratureSpec q = quad;
    q.outer_cutoff = lambda;
    values.push_back(integrate_lower_triangle(f, sing, q));
  }
  return values;
}

Kernel2 power_law_root_kernel(double r1, double r2, double alpha) {
  const RealKernel2 bound = power_law_kernel(r1, r2);
  Kernel2 f;
  f.eval = [bound, alpha](double s, double u) -> Complex {
    return {std::pow(bound(s, u), 1.0 / alpha), 0.0};
  };
  f.singular_s = {0.0};
  f.singular_u = {0.0};
  f.diagonal_offsets = {0.0, 1.0};
  return f;
}

IdentityReport run_identity_suite(const IdentityConfig& cfg, unsigned threads) {
  const auto start = Clock::now();
  if (cfg.trials < 1) throw ConfigError("trials must be positive");
  if (cfg.alphas.empty()) throw ConfigError("identity suite needs at least one alpha");
  if (cfg.max_lag < 0) throw ConfigError("max_lag must be nonnegative");
  check_n_list(cfg.m_list);
  for (double a : cfg.alphas) ModelParams(a, cfg.hurst);

  const std::size_t lags = static_cast<std::size_t>(cfg.max_lag) + 1;
  const std::size_t ms = cfg.m_list.size();
  std::vector<double> norm_errors(cfg.trials * lags);
  std::vector<double> error_errors(cfg.trials * ms);

  for_each_index(cfg.trials, threads, [&](std::size_t t) {
    const ModelParams p(cfg.alphas[t % cfg.alphas.size()], cfg.hurst);
    RngStream rng(cfg.master_seed, t);
    const JumpMeasure jm = build_jump_measure(p.alpha(), cfg.half_width, cfg.n_terms, rng);
    const Eigen::ArrayXcd& z = jm.values();

    for (std::size_t j = 0; j < lags; ++j) {
      const Kernel1 g = lagged_r_kernel(static_cast<long>(j), p);
      Eigen::ArrayXcd gz(z.size());
      for (Eigen::Index i = 0; i < z.size(); ++i) gz[i] = g(jm.locations()[i]) * z[i];
      const double diagonal = gz.abs2().sum();
      const double scale = std::pow(gz.abs().sum(), 2);
      const double lhs = std::norm(integrate(jm, g));
      const double rhs = diagonal + 2.0 * double_integrate(jm, product_kernel(g)).real();
      norm_errors[t * lags + j] = scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
    }

    const IncrementSeries inc = simulate_increments(jm, cfg.m_list.back(), p);
    const Eigen::ArrayXd q = cumulative_statistic(inc);
    const double u = realized_U(jm, p);
    const double rz = (kernel_r(jm.locations(), p) * z).abs().sum();
    for (std::size_t i = 0; i < ms; ++i) {
      const std::size_t m = cfg.m_list[i];
      const double lhs = normalized_error(q[static_cast<Eigen::Index>(m - 1)], u, m, p);
      const double rhs = 2.0 * double_integrate(jm, hn_kernel(static_cast<long>(m), p)).real();
      const double scale = std::pow(static_cast<double>(m), 2.0 - 2.0 * p.hurst()) * rz * rz;
      error_errors[t * ms + i] = scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
    }
  });

  IdentityReport report;
  report.config = cfg;
  report.norm_checks = norm_errors.size();
  report.error_checks = error_errors.size();
  report.max_norm_error = *std::max_element(norm_errors.begin(), norm_errors.end());
  report.max_error_identity_error = *std::max_element(error_errors.begin(), error_errors.end());
  report.runtime_seconds = seconds_since(start);
  return report;
}

std::vector<double> condition_scan(const ModelParams& p, double r_exp,
                                   const std::vector<double>& lambdas, const QuadratureSpec& quad) {
  const Kernel2 h = h_kernel(p);
  const double alpha = p.alpha();
  psi_constant(r_exp, alpha);
  const auto weight = [r_exp, alpha](double s) { return psi(s, r_exp, alpha); };
  std::vector<double> values;
  for (double lambda : lambdas) {
    QuadratureSpec q = quad;
    q.outer_cutoff = lambda;
    values.push_back(condition_value(h, alpha, weight, q));
  }
  return values;
}

}  // namespace harmstable
