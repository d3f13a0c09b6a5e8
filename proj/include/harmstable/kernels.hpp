#pragma once

// Deterministic kernels of the harmonizable fractional stable motion.
//
// All functions are templated on the real scalar type and have Eigen array
// overloads that apply them elementwise. Removable singularities are handled
// by branch; genuine singularities raise SingularityError.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Core>

#include "harmstable/error.hpp"

namespace harmstable {

/// Stability index alpha, Hurst index H and the derived exponent
/// gamma = 1 - H - 1/alpha.
class ModelParams {
 public:
  ModelParams(double alpha, double hurst) : alpha_(alpha), hurst_(hurst) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
      throw ParameterError("alpha must lie in (0, 2), got " + std::to_string(alpha));
    }
    if (!(hurst > 0.0 && hurst < 1.0)) {
      throw ParameterError("hurst must lie in (0, 1), got " + std::to_string(hurst));
    }
    gamma_ = 1.0 - hurst - 1.0 / alpha;
  }

  double alpha() const { return alpha_; }
  double hurst() const { return hurst_; }
  double gamma() const { return gamma_; }

  /// H > 1/2 and alpha (1 - H) < 1/2: the normalized error has a
  /// Rosenblatt-type limit.
  bool clt_regime() const { return hurst_ > 0.5 && alpha_ * (1.0 - hurst_) < 0.5; }

 private:
  double alpha_;
  double hurst_;
  double gamma_;
};

namespace detail {

template <typename Scalar>
[[noreturn]] void throw_singular(const char* what, Scalar s) {
  std::ostringstream os;
  os.precision(17);
  os << what << " is singular at s = " << s;
  throw SingularityError(os.str());
}

/// 2 sin(x/2) / x with its removable value 1 at x = 0.
template <typename Scalar>
Scalar half_angle_ratio(Scalar x) {
  using std::abs;
  using std::sin;
  if (abs(x) < Scalar(1e-4)) return Scalar(1) - x * x / Scalar(24);
  return Scalar(2) * sin(x / Scalar(2)) / x;
}

/// |s|^gamma with the limits at s = 0 for gamma >= 0.
template <typename Scalar>
Scalar abs_pow(Scalar s, Scalar gamma, const char* what) {
  using std::abs;
  using std::pow;
  if (abs(s) < Scalar(1e-300)) {
    if (gamma < Scalar(0)) throw_singular(what, s);
    return gamma == Scalar(0) ? Scalar(1) : Scalar(0);
  }
  return pow(abs(s), gamma);
}

template <typename Scalar>
std::complex<Scalar> unit_phase(Scalar angle) {
  using std::cos;
  using std::sin;
  return {cos(angle), sin(angle)};
}

/// x reduced to the nearest representative in [-pi, pi].
template <typename Scalar>
Scalar reduce_2pi(Scalar x) {
  using std::round;
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  return x - two_pi * round(x / two_pi);
}

}  // namespace detail

/// r(s) = (1 - e^{-is}) / (is) * |s|^gamma, evaluated as
/// e^{-is/2} * 2 sin(s/2)/s * |s|^gamma.
template <typename Scalar>
std::complex<Scalar> kernel_r(Scalar s, const ModelParams& p) {
  const Scalar mag = detail::half_angle_ratio(s) * detail::abs_pow(s, Scalar(p.gamma()), "kernel_r");
  return detail::unit_phase(-s / Scalar(2)) * mag;
}

/// g_n(x) = (1 - e^{inx}) / (1 - e^{ix}) = sum_{j<n} e^{ijx}.
///
/// Evaluated on the 2pi-periodic reduction delta of x as
/// e^{i(n-1)delta/2} sin(n delta/2) / sin(delta/2). When n |delta| < 1e-8 the
/// two-term Taylor expansion n + i delta n(n-1)/2 replaces the ratio.
template <typename Scalar>
std::complex<Scalar> kernel_gn(Scalar x, long n) {
  using std::abs;
  using std::sin;
  if (n < 1) throw ParameterError("kernel_gn needs n >= 1");
  const Scalar delta = detail::reduce_2pi(x);
  const Scalar nn = static_cast<Scalar>(n);
  if (nn * abs(delta) < Scalar(1e-8)) {
    return {nn, delta * nn * (nn - Scalar(1)) / Scalar(2)};
  }
  const Scalar ratio = sin(nn * delta / Scalar(2)) / sin(delta / Scalar(2));
  return detail::unit_phase((nn - Scalar(1)) * delta / Scalar(2)) * ratio;
}

/// h_n(s,u) = n^{1-2H} g_n(s-u) r(s) conj(r(u)) on u < s, zero elsewhere.
template <typename Scalar>
std::complex<Scalar> kernel_hn(Scalar s, Scalar u, long n, const ModelParams& p) {
  using std::pow;
  if (!(u < s)) return {Scalar(0), Scalar(0)};
  const Scalar scale = pow(static_cast<Scalar>(n), Scalar(1) - Scalar(2) * Scalar(p.hurst()));
  return scale * kernel_gn(s - u, n) * kernel_r(s, p) * std::conj(kernel_r(u, p));
}

/// Limit kernel h(s,u) = (e^{i(s-u)} - 1) / (i(s-u)) |su|^gamma on u < s.
///
/// This is the pointwise limit of n^{-2/alpha} h_n(s/n, u/n); its value on the
/// diagonal is |su|^gamma.
template <typename Scalar>
std::complex<Scalar> kernel_h(Scalar s, Scalar u, const ModelParams& p) {
  if (!(u < s)) return {Scalar(0), Scalar(0)};
  const Scalar x = s - u;
  const Scalar g = Scalar(p.gamma());
  const Scalar mag = detail::half_angle_ratio(x) * detail::abs_pow(s, g, "kernel_h") *
                     detail::abs_pow(u, g, "kernel_h");
  return detail::unit_phase(x / Scalar(2)) * mag;
}

/// Normalizing constant of psi: (2 (1 + 1/(r alpha - 1)))^{-1/alpha}.
inline double psi_constant(double r_exp, double alpha) {
  if (!(alpha > 0.0) || !(r_exp * alpha > 1.0)) {
    throw ParameterError("psi needs r_exp * alpha > 1, got r_exp = " + std::to_string(r_exp) +
                         ", alpha = " + std::to_string(alpha));
  }
  return std::pow(2.0 * (1.0 + 1.0 / (r_exp * alpha - 1.0)), -1.0 / alpha);
}

/// psi(s) = c (|s|^{-r} 1{|s|>1} + 1{|s|<=1}) with integral of psi^alpha equal to 1.
template <typename Scalar>
Scalar psi(Scalar s, double r_exp, double alpha) {
  using std::abs;
  using std::pow;
  const Scalar c = Scalar(psi_constant(r_exp, alpha));
  return abs(s) > Scalar(1) ? c * pow(abs(s), Scalar(-r_exp)) : c;
}

/// phi(s) = |s|^{-2H-2/alpha} (1 - cos s), the density of the LLN limit
/// against the jump quadratic variation (up to the factor 2).
template <typename Scalar>
Scalar phi_qv(Scalar s, const ModelParams& p) {
  using std::abs;
  using std::pow;
  using std::sin;
  if (s == Scalar(0)) detail::throw_singular("phi_qv", s);
  const Scalar half = sin(s / Scalar(2));
  const Scalar expo = Scalar(-2.0 * p.hurst() - 2.0 / p.alpha());
  return pow(abs(s), expo) * Scalar(2) * half * half;
}

/// Nearest element of {2 pi j : j >= 0}; ties resolve to the smaller one.
template <typename Scalar>
Scalar nearest_2pi(Scalar x) {
  using std::floor;
  if (!(x >= Scalar(0))) throw ParameterError("nearest_2pi needs x >= 0");
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  const Scalar lower = two_pi * floor(x / two_pi);
  const Scalar upper = lower + two_pi;
  return (x - lower <= upper - x) ? lower : upper;
}

/// min(n, 2 / |1 - e^{ix}|), an upper bound for |g_n(x)|.
template <typename Scalar>
Scalar gn_bound(Scalar x, long n) {
  using std::abs;
  using std::sin;
  const Scalar nn = static_cast<Scalar>(n);
  const Scalar denom = abs(sin(detail::reduce_2pi(x) / Scalar(2)));
  if (denom * nn <= Scalar(1)) return nn;
  return Scalar(1) / denom;
}

// Elementwise array overloads.

inline Eigen::ArrayXcd kernel_r(const Eigen::ArrayXd& s, const ModelParams& p) {
  return s.unaryExpr([&p](double v) { return kernel_r(v, p); });
}

inline Eigen::ArrayXd phi_qv(const Eigen::ArrayXd& s, const ModelParams& p) {
  return s.unaryExpr([&p](double v) { return phi_qv(v, p); });
}

inline Eigen::ArrayXcd kernel_gn(const Eigen::ArrayXd& x, long n) {
  return x.unaryExpr([n](double v) { return kernel_gn(v, n); });
}

}  // namespace harmstable
