#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "harmstable/quadrature.hpp"
#include "harmstable/rng_stable.hpp"

namespace harmstable {

using Complex = std::complex<double>;

/// Truncated LePage representation of an isotropic complex alpha-stable
/// Levy motion on [-M, M]: finitely many atoms (location, jump value) with
/// strictly increasing locations.
class JumpMeasure {
 public:
  /// Builds a measure from explicit atoms. Locations are sorted together with
  /// their values; ties and locations outside [-M, M] are rejected. Empty
  /// measures are allowed for diagnostics.
  static JumpMeasure from_atoms(double alpha, double half_width, Eigen::ArrayXd locations,
                                Eigen::ArrayXcd values, double calibration = 1.0);

  double alpha() const { return alpha_; }
  double half_width() const { return half_width_; }
  double calibration() const { return calibration_; }
  std::size_t n_terms() const { return static_cast<std::size_t>(locations_.size()); }

  const Eigen::ArrayXd& locations() const { return locations_; }
  const Eigen::ArrayXcd& values() const { return values_; }

  /// Locations resampled after an exact tie during construction.
  std::size_t resampled_ties() const { return resampled_ties_; }

  /// Image under s -> s / a, z -> a^{-1/alpha} z (self-similarity of L).
  JumpMeasure rescaled(double a) const;

  /// Atoms with index in [first, last).
  JumpMeasure slice(std::size_t first, std::size_t last) const;

 private:
  friend JumpMeasure build_jump_measure(double, double, std::size_t, RngStream&);

  JumpMeasure() = default;

  double alpha_ = 1.0;
  double half_width_ = 1.0;
  double calibration_ = 1.0;
  Eigen::ArrayXd locations_;
  Eigen::ArrayXcd values_;
  std::size_t resampled_ties_ = 0;
};

/// Series constant c such that sum_i f(U_i) c Gamma_i^{-1/alpha} e^{i theta_i}
/// with U_i uniform on [-M, M] converges in law to the integral of f against
/// L, where Re L([0,1]) ~ SaS(1).
double lepage_calibration(double alpha, double half_width);

/// Draws a truncated LePage measure with n_terms atoms.
JumpMeasure build_jump_measure(double alpha, double half_width, std::size_t n_terms,
                               RngStream& rng);

/// Complex kernel of one real variable.
struct Kernel1 {
  std::function<Complex(double)> eval;
  std::vector<double> singular_points;

  Complex operator()(double s) const { return eval(s); }
};

/// Complex kernel of two real variables (s, u), supported on u < s unless
/// lower_triangular is false.
///
/// `bind` optionally precomputes per-atom data for a fixed set of locations
/// and returns an evaluator on atom index pairs (i, k); it must return the
/// same values as `eval(loc[i], loc[k])`.
struct Kernel2 {
  using IndexedEval = std::function<Complex(Eigen::Index, Eigen::Index)>;

  std::function<Complex(double, double)> eval;
  std::function<IndexedEval(const Eigen::ArrayXd&)> bind;
  std::vector<double> singular_s;         ///< lines s = c
  std::vector<double> singular_u;         ///< lines u = c
  std::vector<double> diagonal_offsets;   ///< lines s - u = d
  bool lower_triangular = true;

  Complex operator()(double s, double u) const { return eval(s, u); }
};

/// Real-valued kernel of two variables, used by the existence certifier.
using RealKernel2 = std::function<double(double, double)>;

/// sum_i f(loc_i) value_i.
Complex integrate(const JumpMeasure& jm, const Kernel1& f);

/// The four real sums int Re f dL1, int Im f dL2, int Re f dL2, int Im f dL1.
struct RealIntegrals {
  double re_f_dl1 = 0.0;
  double im_f_dl2 = 0.0;
  double re_f_dl2 = 0.0;
  double im_f_dl1 = 0.0;

  /// (re_f_dl1 - im_f_dl2) + i (re_f_dl2 + im_f_dl1).
  Complex recombine() const { return {re_f_dl1 - im_f_dl2, re_f_dl2 + im_f_dl1}; }
};

RealIntegrals integrate_real_parts(const JumpMeasure& jm, const Kernel1& f);

/// sum_i phi(loc_i) |value_i|^2.
double integrate_qv(const JumpMeasure& jm, const std::function<double(double)>& phi);

/// sum_i |value_i|^2, the terminal value of [L1] + [L2].
double quadratic_variation(const JumpMeasure& jm);

/// sum over atom pairs k < i (by location) of f(loc_i, loc_k) conj(value_k) value_i.
Complex double_integrate(const JumpMeasure& jm, const Kernel2& f);

/// Numerical value of the double integral over the truncated quadrature
/// domain of |f|^alpha [1 + log_+(|f| / (psi(s) psi(t)))].
double condition_value(const Kernel2& f, double alpha, const std::function<double(double)>& psi,
                       const QuadratureSpec& quad);

/// Writes `location,re,im` rows with 17 significant digits.
void write_csv(std::ostream& os, const JumpMeasure& jm);

}  // namespace harmstable
