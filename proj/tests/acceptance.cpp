// Acceptance suite: one line per criterion, nonzero exit if any fails.
// The single argument is the path of the harmstable executable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "harmstable/analysis.hpp"
#include "harmstable/harmonizable.hpp"
#include "harmstable/kernels.hpp"
#include "harmstable/levy_model.hpp"
#include "harmstable/rng_stable.hpp"
#include "oracles.hpp"

using namespace harmstable;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// 1. Exact pathwise identities to 1e-8 within 60 s.
Outcome identities() {
  const IdentityReport r = run_identity_suite(IdentityConfig{});
  const bool ok = r.passed(1e-8) && r.runtime_seconds < 60.0;
  return {ok, "max errors " + fmt(r.max_norm_error) + ", " + fmt(r.max_error_identity_error) +
                  " over " + std::to_string(r.norm_checks + r.error_checks) + " checks in " +
                  fmt(r.runtime_seconds) + " s"};
}

// 2. Kernel algebra on 10^4 random inputs per identity, to 1e-10 within 10 s.
Outcome kernel_algebra() {
  const auto t0 = Clock::now();
  RngStream rng(2024, 0);
  const std::size_t count = 10000;
  double phi_err = 0.0;
  double gn_err = 0.0;
  double bound_excess = 0.0;
  double support = 0.0;
  const std::vector<double> alphas{0.6, 1.0, 1.4, 1.9};
  for (std::size_t k = 0; k < count; ++k) {
    const double alpha = alphas[k % alphas.size()];
    const double hurst = rng.uniform(0.05, 0.95);
    const ModelParams p(alpha, hurst);
    const double s = rng.uniform(-50.0, 50.0);
    if (s == 0.0) continue;

    // 2 phi(s) |s|^{2H+2/alpha} = |r(s)|^2 |s|^{2H+2/alpha} = 2 (1 - cos s).
    const double w = std::pow(std::abs(s), 2.0 * hurst + 2.0 / alpha);
    const double lhs = 2.0 * phi_qv(s, p) * w;
    const double rhs = std::norm(kernel_r(s, p)) * w;
    phi_err = std::max(phi_err, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

    const long n = 1 + static_cast<long>(rng.uniform() * 200.0);
    const double x = rng.uniform(-20.0, 20.0);
    const auto g = kernel_gn(x, n);
    const auto direct = oracle::geometric_sum(x, n);
    gn_err = std::max(gn_err, std::abs(g - direct) / static_cast<double>(n));
    bound_excess = std::max(bound_excess, std::abs(g) - gn_bound(x, n));

    const double u = s + rng.uniform(0.0, 10.0);
    support = std::max({support, std::abs(kernel_hn(s, u, n, p)), std::abs(kernel_h(s, u, p))});
  }
  const double elapsed = seconds_since(t0);
  const bool ok = phi_err < 1e-10 && gn_err < 1e-10 && bound_excess <= 1e-10 && support == 0.0 &&
                  elapsed < 10.0;
  return {ok, "phi " + fmt(phi_err) + ", g_n " + fmt(gn_err) + ", bound excess " +
                  fmt(bound_excess) + ", off-support " + fmt(support) + " in " + fmt(elapsed) +
                  " s"};
}

// 3. n^{-2/alpha} h_n(s/n, u/n) -> h(s, u).
Outcome kernel_limit() {
  const ModelParams p(1.2, 0.75);
  bool ok = true;
  std::string detail;
  for (auto [s, u] : {std::pair{1.0, -0.5}, std::pair{3.0, 1.0}, std::pair{0.5, -2.0}}) {
    const auto d = kernel_limit_check(s, u, p, {64, 16384});
    ok = ok && d[1] < 1e-2 && d[1] < d[0];
    detail += "(" + fmt(s) + "," + fmt(u) + "): " + fmt(d[0]) + " -> " + fmt(d[1]) + "; ";
  }
  return {ok, detail};
}

// 4 and the harmonizable half of 6 share one LLN run.
ExperimentReport lln_run() {
  ExperimentConfig cfg;
  cfg.alpha = 1.2;
  cfg.hurst = 0.75;
  cfg.half_width = 50.0;
  cfg.n_terms = 100000;
  cfg.n_list = {64, 128, 256, 512};
  cfg.replications = 200;
  cfg.master_seed = 1;
  return run_lln_experiment(ModelParams(1.2, 0.75), cfg);
}

Outcome lln_rate(const ExperimentReport& r) {
  if (!r.slope) return {false, "no slope"};
  const double s = r.slope->slope;
  return {std::abs(s + 0.5) <= 0.2,
          "slope " + fmt(s) + " +- " + fmt(r.slope->standard_error) + " (target -0.5 +- 0.2)"};
}

// 5. Normalized error against the realized Rosenblatt law.
Outcome clt() {
  ExperimentConfig cfg;
  cfg.alpha = 1.2;
  cfg.hurst = 0.75;
  cfg.half_width = 20.0;
  cfg.n_terms = 100000;
  cfg.n_list = {256};
  cfg.replications = 500;
  cfg.master_seed = 1;
  const ExperimentReport r = run_clt_experiment(ModelParams(1.2, 0.75), cfg);
  const double ks = r.ks_distance.value_or(1.0);
  return {ks < 0.1, "KS distance " + fmt(ks) + " (< 0.1)"};
}

// 6. Quadratic variation growth: n^{2/alpha} for iid stable, n for the
// harmonizable motion.
Outcome growth(const ExperimentReport& lln) {
  bool ok = true;
  std::string detail;
  for (double alpha : {1.0, 1.5}) {
    ExperimentConfig cfg;
    cfg.alpha = alpha;
    cfg.n_list = {64, 128, 256, 512, 1024, 2048, 4096};
    cfg.replications = 200;
    cfg.master_seed = 1;
    const ExperimentReport r = iid_stable_qv_experiment(cfg);
    const double s = r.slope ? r.slope->slope : NAN;
    ok = ok && std::abs(s - 2.0 / alpha) <= 0.2;
    detail += "iid alpha " + fmt(alpha) + " slope " + fmt(s) + " (" + fmt(2.0 / alpha) + "); ";
  }
  const double s = lln.statistic_slope ? lln.statistic_slope->slope : NAN;
  ok = ok && std::abs(s - 1.0) <= 0.1;
  detail += "harmonizable slope " + fmt(s) + " (1)";
  return {ok, detail};
}

// 7. Existence certifier.
Outcome condition() {
  const QuadratureSpec quad;
  const auto h = condition_scan(ModelParams(1.2, 0.75), 1.0, {50.0, 100.0}, quad);
  const double dh = std::abs(h[1] / h[0] - 1.0);
  const auto good = power_law_quadrature(0.7, 1.2, {50.0, 100.0}, quad);
  const double dg = std::abs(good[1] / good[0] - 1.0);
  const auto bad = power_law_quadrature(0.4, 1.2, {50.0, 100.0}, quad);
  const double db = bad[1] / bad[0] - 1.0;
  return {dh < 0.05 && dg < 0.05 && db > 0.2, "limit kernel change " + fmt(dh) +
                                                   ", bound (0.7,1.2) " + fmt(dg) +
                                                   ", bound (0.4,1.2) " + fmt(db)};
}

// 8. Series integral of r against grid increments of the stable motion.
Outcome series_vs_grid() {
  const double alpha = 1.2;
  const double m = 10.0;
  const ModelParams p(alpha, 0.75);
  const Kernel1 rk = r_kernel(p);
  const auto cells = oracle::grid_cells(m, 0.05);
  const std::size_t draws = 2000;
  std::vector<double> series(draws);
  std::vector<double> grid(draws);
  for (std::size_t k = 0; k < draws; ++k) {
    RngStream rng(801, k);
    series[k] = integrate(build_jump_measure(alpha, m, 10000, rng), rk).real();
    RngStream grid_rng(802, k);
    grid[k] = oracle::grid_integral(
                  cells, alpha, [](double s) { return oracle::r(s, 1.2, 0.75); }, grid_rng)
                  .real();
  }
  const double ks = oracle::ks(series, grid);
  return {ks < 0.05, "KS distance " + fmt(ks) + " (< 0.05)"};
}

// 9. Identical reports for identical seeds at different thread counts.
Outcome reproducible(const std::string& tool) {
  const auto dir = std::filesystem::temp_directory_path() / "harmstable_acceptance";
  std::filesystem::create_directories(dir);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::vector<std::string> configs{
      "lln --half-width 10 --n-terms 5000 --n-list 16,32,64 --reps 60 --seed 5",
      "check-identities --trials 12 --seed 5",
      "simulate --n 128 --n-terms 20000 --half-width 20 --format json --seed 5"};
  bool ok = true;
  std::string detail;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::vector<std::string> texts;
    for (const char* threads : {"1", "3"}) {
      const auto out = dir / ("run" + std::to_string(c) + "_" + threads + ".out");
      const std::string cmd = "\"" + tool + "\" " + configs[c] + " --threads " + threads +
                              " --out \"" + out.string() + "\" 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        detail += "command failed: " + configs[c] + "; ";
      }
      texts.push_back(slurp(out));
    }
    const bool same = !texts[0].empty() && texts[0] == texts[1];
    ok = ok && same;
    detail += configs[c].substr(0, configs[c].find(' ')) + (same ? " identical; " : " differs; ");
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to harmstable>\n";
    return 2;
  }
  const std::string tool = argv[1];
  int failures = 0;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& f) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): "
              << o.detail << " [" << fmt(seconds_since(t0)) << " s]" << std::endl;
  };

  report(1, "pathwise identities", identities);
  report(2, "kernel algebra", kernel_algebra);
  report(3, "kernel limit", kernel_limit);
  ExperimentReport lln;
  report(4, "LLN rate", [&] {
    lln = lln_run();
    return lln_rate(lln);
  });
  report(5, "Rosenblatt limit", clt);
  report(6, "quadratic variation growth", [&] { return growth(lln); });
  report(7, "existence condition", condition);
  report(8, "series representation", series_vs_grid);
  report(9, "reproducibility", [&] { return reproducible(tool); });
  return failures == 0 ? 0 : 1;
}
