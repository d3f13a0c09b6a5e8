#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "harmstable/kernels.hpp"
#include "harmstable/levy_model.hpp"

namespace harmstable {

/// Where a realization came from.
struct Provenance {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double half_width = 0.0;
  std::size_t n_terms = 0;
};

/// Increments Y_j = X_j - X_{j-1}, j = 0..n-1.
struct IncrementSeries {
  ModelParams params;
  Provenance source;
  Eigen::ArrayXcd increments;

  std::size_t n() const { return static_cast<std::size_t>(increments.size()); }
};

/// Statistic, LLN limit and Rosenblatt value evaluated on one jump measure.
struct CoupledRealization {
  Provenance source;
  IncrementSeries increments;
  double u_realized = 0.0;
  double rosenblatt = 0.0;
  std::vector<std::pair<std::size_t, double>> q_partial;  ///< (m, Q_m)
};

// Kernel factories. The kernels below bind per-atom values when integrated
// against a jump measure, so pair sums cost one multiply per pair.

/// r(s).
Kernel1 r_kernel(const ModelParams& p);
/// s -> e^{ijs} r(s): the integrand of Y_j.
Kernel1 lagged_r_kernel(long j, const ModelParams& p);
/// (s, u) -> g(s) conj(g(u)) 1{u < s}.
Kernel2 product_kernel(const Kernel1& g);
/// h_m(s, u) = m^{1-2H} g_m(s-u) r(s) conj(r(u)) 1{u < s}.
Kernel2 hn_kernel(long m, const ModelParams& p);
/// The limit kernel h(s, u).
Kernel2 h_kernel(const ModelParams& p);

/// Y_j = sum_i e^{ij loc_i} r(loc_i) value_i for j = 0..n-1.
///
/// The phases are advanced by multiplicative rotation and recomputed
/// directly every 1024 steps.
IncrementSeries simulate_increments(const JumpMeasure& jm, std::size_t n, const ModelParams& p,
                                    const Provenance& source = {});

/// U = 2 sum_i phi(loc_i) |value_i|^2.
double realized_U(const JumpMeasure& jm, const ModelParams& p);

/// Q_m = sum_{j<m} |Y_j|^2.
double quadratic_statistic(const IncrementSeries& inc, std::size_t m);

/// Q_1, ..., Q_n as a cumulative array.
Eigen::ArrayXd cumulative_statistic(const IncrementSeries& inc);

/// m^{2-2H} (Q_m / m - U).
double normalized_error(double q_m, double u_realized, std::size_t m, const ModelParams& p);

/// 2 Re of the pair sum of the limit kernel. Uses rosenblatt_fast above
/// kRosenblattBruteForceLimit atoms and the exact pair sum otherwise.
double realized_rosenblatt(const JumpMeasure& jm, const ModelParams& p);

inline constexpr std::size_t kRosenblattBruteForceLimit = 2000;

/// Exact O(N^2) pair sum 2 Re sum_{k<i} h(loc_i, loc_k) conj(z_k) z_i.
double realized_rosenblatt_exact(const JumpMeasure& jm, const ModelParams& p);

/// O(N t_nodes) evaluation through h(s,u) = |su|^gamma int_0^1 e^{it(s-u)} dt:
/// 2 Re(pair sum) = int_0^1 |A(t)|^2 dt - B with A(t) = sum_i e^{it loc_i}
/// |loc_i|^gamma value_i and B = sum_i |loc_i|^{2 gamma} |value_i|^2.
/// The t-integral uses Gauss-Legendre with t_nodes nodes.
double rosenblatt_fast(const JumpMeasure& jm, const ModelParams& p, std::size_t t_nodes);

/// Gauss-Legendre nodes needed by rosenblatt_fast for atoms in [-M, M].
std::size_t default_t_nodes(double half_width);

/// 2 M^{-alpha H} / (alpha H), the alpha-mass of r outside [-M, M] up to
/// the bounded oscillating factor.
double tail_error_estimate(const ModelParams& p, double half_width);

/// Builds every coupled quantity from one measure. The Rosenblatt value is
/// skipped (left at 0) when with_rosenblatt is false.
CoupledRealization couple(const JumpMeasure& jm, std::size_t n, const ModelParams& p,
                          const std::vector<std::size_t>& m_list, const Provenance& source,
                          bool with_rosenblatt = true);

}  // namespace harmstable
