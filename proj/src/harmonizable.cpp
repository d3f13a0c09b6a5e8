#include "harmstable/harmonizable.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "harmstable/error.hpp"
#include "harmstable/quadrature.hpp"

namespace harmstable {

namespace {

std::vector<double> zero_if_singular(const ModelParams& p) {
  return p.gamma() < 0.0 ? std::vector<double>{0.0} : std::vector<double>{};
}

/// Kernel values at every atom, shared by the bound pair evaluators.
std::shared_ptr<const Eigen::ArrayXcd> values_at(const Kernel1& g, const Eigen::ArrayXd& loc) {
  auto out = std::make_shared<Eigen::ArrayXcd>(loc.size());
  for (Eigen::Index i = 0; i < loc.size(); ++i) (*out)[i] = g(loc[i]);
  return out;
}

constexpr std::size_t kRenormalizeEvery = 1024;

}  // namespace

Kernel1 r_kernel(const ModelParams& p) {
  return {[p](double s) { return kernel_r(s, p); }, zero_if_singular(p)};
}

Kernel1 lagged_r_kernel(long j, const ModelParams& p) {
  const double lag = static_cast<double>(j);
  return {[p, lag](double s) { return detail::unit_phase(lag * s) * kernel_r(s, p); },
          zero_if_singular(p)};
}

Kernel2 product_kernel(const Kernel1& g) {
  Kernel2 f;
  f.eval = [g](double s, double u) -> Complex {
    if (!(u < s)) return {0.0, 0.0};
    return g(s) * std::conj(g(u));
  };
  f.bind = [g](const Eigen::ArrayXd& loc) -> Kernel2::IndexedEval {
    auto gv = values_at(g, loc);
    return [gv](Eigen::Index i, Eigen::Index k) { return (*gv)[i] * std::conj((*gv)[k]); };
  };
  f.singular_s = g.singular_points;
  f.singular_u = g.singular_points;
  return f;
}

Kernel2 hn_kernel(long m, const ModelParams& p) {
  if (m < 1) throw ParameterError("h_m needs m >= 1");
  Kernel2 f;
  f.eval = [m, p](double s, double u) { return kernel_hn(s, u, m, p); };
  f.bind = [m, p](const Eigen::ArrayXd& loc) -> Kernel2::IndexedEval {
    auto rv = values_at(r_kernel(p), loc);
    const double scale = std::pow(static_cast<double>(m), 1.0 - 2.0 * p.hurst());
    return [rv, loc, m, scale](Eigen::Index i, Eigen::Index k) {
      return scale * kernel_gn(loc[i] - loc[k], m) * (*rv)[i] * std::conj((*rv)[k]);
    };
  };
  f.singular_s = zero_if_singular(p);
  f.singular_u = zero_if_singular(p);
  return f;
}

Kernel2 h_kernel(const ModelParams& p) {
  Kernel2 f;
  f.eval = [p](double s, double u) { return kernel_h(s, u, p); };
  f.bind = [p](const Eigen::ArrayXd& loc) -> Kernel2::IndexedEval {
    auto weight = std::make_shared<Eigen::ArrayXd>(loc.size());
    for (Eigen::Index i = 0; i < loc.size(); ++i) {
      (*weight)[i] = detail::abs_pow(loc[i], p.gamma(), "kernel_h");
    }
    return [weight, loc](Eigen::Index i, Eigen::Index k) -> Complex {
      const double x = loc[i] - loc[k];
      return detail::unit_phase(x / 2.0) *
             (detail::half_angle_ratio(x) * (*weight)[i] * (*weight)[k]);
    };
  };
  f.singular_s = zero_if_singular(p);
  f.singular_u = zero_if_singular(p);
  f.diagonal_offsets = {0.0};
  return f;
}

IncrementSeries simulate_increments(const JumpMeasure& jm, std::size_t n, const ModelParams& p,
                                    const Provenance& source) {
  if (n < 1) throw ParameterError("simulate_increments needs n >= 1");
  const Eigen::ArrayXd& loc = jm.locations();
  const Eigen::Index atoms = loc.size();

  const Eigen::ArrayXcd weights = kernel_r(loc, p) * jm.values();
  for (Eigen::Index i = 0; i < atoms; ++i) {
    if (!std::isfinite(weights[i].real()) || !std::isfinite(weights[i].imag())) {
      throw SingularityError("increment weight is not finite at atom location " +
                             std::to_string(loc[i]));
    }
  }
  const Eigen::ArrayXd rot_re = loc.cos();
  const Eigen::ArrayXd rot_im = loc.sin();
  Eigen::ArrayXd state_re = weights.real();
  Eigen::ArrayXd state_im = weights.imag();

  IncrementSeries out{p, source, Eigen::ArrayXcd(static_cast<Eigen::Index>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0 && j % kRenormalizeEvery == 0) {
      const Eigen::ArrayXd angle = loc * static_cast<double>(j);
      const Eigen::ArrayXd c = angle.cos();
      const Eigen::ArrayXd s = angle.sin();
      state_re = weights.real() * c - weights.imag() * s;
      state_im = weights.real() * s + weights.imag() * c;
    }
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (Eigen::Index i = 0; i < atoms; ++i) {
      const double re = state_re[i];
      const double im = state_im[i];
      acc_re += re;
      acc_im += im;
      state_re[i] = re * rot_re[i] - im * rot_im[i];
      state_im[i] = re * rot_im[i] + im * rot_re[i];
    }
    out.increments[static_cast<Eigen::Index>(j)] = {acc_re, acc_im};
  }
  return out;
}

double realized_U(const JumpMeasure& jm, const ModelParams& p) {
  return 2.0 * integrate_qv(jm, [&p](double s) { return phi_qv(s, p); });
}

double quadratic_statistic(const IncrementSeries& inc, std::size_t m) {
  if (m < 1 || m > inc.n()) {
    throw ParameterError("quadratic_statistic needs 1 <= m <= n, got m = " + std::to_string(m));
  }
  return inc.increments.head(static_cast<Eigen::Index>(m)).abs2().sum();
}

Eigen::ArrayXd cumulative_statistic(const IncrementSeries& inc) {
  Eigen::ArrayXd q(inc.increments.size());
  double total = 0.0;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    total += std::norm(inc.increments[j]);
    q[j] = total;
  }
  return q;
}

double normalized_error(double q_m, double u_realized, std::size_t m, const ModelParams& p) {
  if (m < 1) throw ParameterError("normalized_error needs m >= 1");
  const double mm = static_cast<double>(m);
  return std::pow(mm, 2.0 - 2.0 * p.hurst()) * (q_m / mm - u_realized);
}

double realized_rosenblatt_exact(const JumpMeasure& jm, const ModelParams& p) {
  return 2.0 * double_integrate(jm, h_kernel(p)).real();
}

double rosenblatt_fast(const JumpMeasure& jm, const ModelParams& p, std::size_t t_nodes) {
  if (t_nodes < 2) throw ParameterError("rosenblatt_fast needs t_nodes >= 2");
  const Eigen::ArrayXd& loc = jm.locations();
  if (loc.size() < 2) return 0.0;

  const Eigen::ArrayXd weight =
      loc.unaryExpr([&p](double s) { return detail::abs_pow(s, p.gamma(), "kernel_h"); });
  const Eigen::ArrayXcd a = weight * jm.values();
  const double diagonal = a.abs2().sum();

  const GaussRule rule = gauss_legendre(t_nodes, 0.0, 1.0);
  double integral = 0.0;
  for (std::size_t k = 0; k < t_nodes; ++k) {
    const Eigen::ArrayXd angle = loc * rule.nodes[k];
    const Eigen::ArrayXd c = angle.cos();
    const Eigen::ArrayXd s = angle.sin();
    const double re = (c * a.real() - s * a.imag()).sum();
    const double im = (c * a.imag() + s * a.real()).sum();
    integral += rule.weights[k] * (re * re + im * im);
  }
  return integral - diagonal;
}

std::size_t default_t_nodes(double half_width) {
  // |A(t)|^2 oscillates with frequencies up to 2M on [0, 1].
  return 32 + 2 * static_cast<std::size_t>(std::ceil(half_width));
}

double realized_rosenblatt(const JumpMeasure& jm, const ModelParams& p) {
  if (jm.n_terms() > kRosenblattBruteForceLimit) {
    return rosenblatt_fast(jm, p, default_t_nodes(jm.locations().abs().maxCoeff()));
  }
  return realized_rosenblatt_exact(jm, p);
}

double tail_error_estimate(const ModelParams& p, double half_width) {
  if (!(half_width >= 1.0)) throw ParameterError("tail_error_estimate needs M >= 1");
  const double ah = p.alpha() * p.hurst();
  return 2.0 * std::pow(half_width, -ah) / ah;
}

CoupledRealization couple(const JumpMeasure& jm, std::size_t n, const ModelParams& p,
                          const std::vector<std::size_t>& m_list, const Provenance& source,
                          bool with_rosenblatt) {
  CoupledRealization out{source, simulate_increments(jm, n, p, source), realized_U(jm, p), 0.0, {}};
  if (with_rosenblatt) out.rosenblatt = realized_rosenblatt(jm, p);
  const Eigen::ArrayXd q = cumulative_statistic(out.increments);
  for (std::size_t m : m_list) {
    if (m < 1 || m > n) throw ParameterError("q_partial index out of range: " + std::to_string(m));
    out.q_partial.emplace_back(m, q[static_cast<Eigen::Index>(m - 1)]);
  }
  return out;
}

}  // namespace harmstable
