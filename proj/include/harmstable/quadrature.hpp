#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace harmstable {

/// Truncation and grading of the composite midpoint rule used for
/// power-law singular integrands.
///
/// Nodes sit at distances 10^{k / cells_per_decade} from every declared
/// singular point, so halving inner_cutoff or doubling outer_cutoff (by
/// whole lattice steps) only adds cells. The band of half-width
/// inner_cutoff around each singular point is left out.
struct QuadratureSpec {
  double outer_cutoff = 100.0;   ///< Lambda: domain [-Lambda, Lambda]
  double inner_cutoff = 1e-12;   ///< epsilon
  int cells_per_decade = 16;

  void validate() const;
};

struct Cell {
  double mid;
  double width;
};

/// Midpoint cells of [a, b] graded towards every point in `singular`.
std::vector<Cell> graded_cells(double a, double b, const std::vector<double>& singular,
                               const QuadratureSpec& spec);

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const std::vector<double>& singular, const QuadratureSpec& spec);

/// Singular structure of a two-variable integrand on the lower triangle.
struct TriangleSingularities {
  std::vector<double> s_lines;           ///< s = c
  std::vector<double> u_lines;           ///< u = c
  std::vector<double> diagonal_offsets;  ///< s - u = d, d >= 0
};

/// Iterated midpoint integral of f(s, u) over {-Lambda <= u < s <= Lambda}.
/// Throws QuadratureError if f returns a non-finite value.
double integrate_lower_triangle(const std::function<double(double, double)>& f,
                                const TriangleSingularities& sing, const QuadratureSpec& spec);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b] (Newton iteration on the
/// three-term recurrence).
GaussRule gauss_legendre(std::size_t n, double a, double b);

}  // namespace harmstable
