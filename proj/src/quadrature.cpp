#include "harmstable/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "harmstable/error.hpp"

namespace harmstable {

void QuadratureSpec::validate() const {
  if (!(inner_cutoff > 0.0 && inner_cutoff < 1.0 && outer_cutoff > 1.0)) {
    throw ParameterError("quadrature needs 0 < inner_cutoff < 1 < outer_cutoff");
  }
  if (cells_per_decade < 4) throw ParameterError("quadrature needs cells_per_decade >= 4");
}

std::vector<Cell> graded_cells(double a, double b, const std::vector<double>& singular,
                               const QuadratureSpec& spec) {
  std::vector<Cell> cells;
  if (!(b > a)) return cells;

  std::vector<double> nodes{a, b};
  const double cpd = spec.cells_per_decade;
  const int k_min = static_cast<int>(std::ceil(cpd * std::log10(spec.inner_cutoff)));
  for (double p : singular) {
    const double reach = std::max(std::abs(p - a), std::abs(b - p));
    const int k_max = static_cast<int>(std::ceil(cpd * std::log10(reach)));
    for (int k = k_min; k <= k_max; ++k) {
      const double d = std::pow(10.0, k / cpd);
      if (p - d > a && p - d < b) nodes.push_back(p - d);
      if (p + d > a && p + d < b) nodes.push_back(p + d);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  cells.reserve(nodes.size());
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double lo = nodes[i];
    const double hi = nodes[i + 1];
    // Cells touching a singular point form the excluded inner band.
    const bool excluded = std::any_of(singular.begin(), singular.end(),
                                      [&](double p) { return lo <= p && p <= hi; });
    if (!excluded) cells.push_back({0.5 * (lo + hi), hi - lo});
  }
  return cells;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const std::vector<double>& singular, const QuadratureSpec& spec) {
  spec.validate();
  double total = 0.0;
  for (const Cell& c : graded_cells(a, b, singular, spec)) {
    const double v = f(c.mid);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite integrand at x = " << c.mid;
      throw QuadratureError(os.str());
    }
    total += v * c.width;
  }
  return total;
}

double integrate_lower_triangle(const std::function<double(double, double)>& f,
                                const TriangleSingularities& sing, const QuadratureSpec& spec) {
  spec.validate();
  const double lambda = spec.outer_cutoff;
  double total = 0.0;
  std::vector<double> u_singular;
  for (const Cell& outer : graded_cells(-lambda, lambda, sing.s_lines, spec)) {
    const double s = outer.mid;
    u_singular = sing.u_lines;
    for (double d : sing.diagonal_offsets) u_singular.push_back(s - d);
    double inner_sum = 0.0;
    for (const Cell& inner : graded_cells(-lambda, s, u_singular, spec)) {
      const double v = f(s, inner.mid);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand at (s, u) = (" << s << ", " << inner.mid << ")";
        throw QuadratureError(os.str());
      }
      inner_sum += v * inner.width;
    }
    total += inner_sum * outer.width;
  }
  return total;
}


GaussRule gauss_legendre(std::size_t n, double a, double b) {
  if (n < 1) throw ParameterError("Gauss-Legendre rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const std::size_t roots = (n + 1) / 2;
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < roots; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = nn * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace harmstable
