#pragma once

// Reference implementations used only by the tests. They follow the
// definitions literally (plain complex arithmetic, direct sums) and share no
// code with the library beyond the random variate samplers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "harmstable/rng_stable.hpp"

namespace oracle {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

inline double gamma_exponent(double alpha, double hurst) { return 1.0 - hurst - 1.0 / alpha; }

/// (1 - e^{-is}) / (is) |s|^gamma.
inline cd r(double s, double alpha, double hurst) {
  return (1.0 - std::exp(-I * s)) / (I * s) * std::pow(std::abs(s), gamma_exponent(alpha, hurst));
}

/// sum_{j<n} e^{ijx}, summed term by term.
inline cd geometric_sum(double x, long n) {
  cd total = 0.0;
  for (long j = 0; j < n; ++j) total += std::exp(I * (static_cast<double>(j) * x));
  return total;
}

/// (e^{ix} - 1) / (ix) |su|^gamma on u < s.
inline cd h(double s, double u, double alpha, double hurst) {
  if (!(u < s)) return 0.0;
  const double x = s - u;
  return (std::exp(I * x) - 1.0) / (I * x) * std::pow(std::abs(s * u), gamma_exponent(alpha, hurst));
}

/// Y_j = sum_i e^{ij s_i} r(s_i) z_i with a fresh exponential per term.
inline std::vector<cd> increments(const Eigen::ArrayXd& loc, const Eigen::ArrayXcd& z, long n,
                                  double alpha, double hurst) {
  std::vector<cd> y(static_cast<std::size_t>(n), 0.0);
  for (long j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < loc.size(); ++i) {
      y[static_cast<std::size_t>(j)] +=
          std::exp(I * (static_cast<double>(j) * loc[i])) * r(loc[i], alpha, hurst) * z[i];
    }
  }
  return y;
}

/// Empirical characteristic function of a real sample at t.
inline double empirical_chf(const std::vector<double>& x, double t) {
  double total = 0.0;
  for (double v : x) total += std::cos(t * v);
  return total / static_cast<double>(x.size());
}

/// Standard Cauchy quantile.
inline double cauchy_quantile(double p) { return std::tan(std::numbers::pi * (p - 0.5)); }

/// Sup distance between two empirical distribution functions, by merging.
inline double ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                             static_cast<double>(j) / static_cast<double>(b.size())));
  }
  return d;
}

/// Cells of [-M, M] for grid-increment integrals: uniform of width `step`
/// away from 0, geometric with ratio 2 inside [-step, step] down to 1e-12.
struct GridCell {
  double mid;
  double width;
};

inline std::vector<GridCell> grid_cells(double half_width, double step) {
  std::vector<GridCell> cells;
  const auto count = static_cast<long>(std::ceil(half_width / step - 1e-12));
  for (long k = 1; k < count; ++k) {
    const double lo = static_cast<double>(k) * step;
    const double hi = std::min(lo + step, half_width);
    cells.push_back({0.5 * (lo + hi), hi - lo});
  }
  if (count >= 1) {
    const double lo = static_cast<double>(count) * step;
    if (lo < half_width) cells.push_back({0.5 * (lo + half_width), half_width - lo});
  }
  for (double hi = step; hi > 1e-12; hi /= 2.0) cells.push_back({0.75 * hi, 0.5 * hi});
  const std::size_t positive = cells.size();
  for (std::size_t k = 0; k < positive; ++k) cells.push_back({-cells[k].mid, cells[k].width});
  return cells;
}

/// sum over cells of f(mid) times an independent isotropic stable increment
/// of scale width^{1/alpha}: a Riemann-sum realization of int f dL.
template <typename F>
cd grid_integral(const std::vector<GridCell>& cells, double alpha, F&& f,
                 harmstable::RngStream& rng) {
  cd total = 0.0;
  for (const GridCell& c : cells) {
    total += f(c.mid) *
             harmstable::sample_isotropic_stable(alpha, std::pow(c.width, 1.0 / alpha), rng);
  }
  return total;
}

}  // namespace oracle
