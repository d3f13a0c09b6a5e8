#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Core>

namespace harmstable {

/// Reproducible random stream keyed on (master_seed, stream_index).
///
/// Backed by the Philox4x32-10 counter-based generator: the master seed is
/// the 64-bit key, the stream index fills the upper half of the 128-bit
/// counter and the lower half counts blocks. Two streams with different
/// indices therefore never share a counter value.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Uniform on [a, b).
  double uniform(double a, double b);
  /// Exp(1).
  double exponential();
  /// Standard normal (Box-Muller; the second variate is cached).
  double normal();

 private:
  void refill();

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  std::optional<double> spare_normal_;
};

/// Symmetric alpha-stable draw with characteristic function
/// exp(-scale^alpha |t|^alpha) (Chambers-Mallows-Stuck).
double sample_sas(double alpha, double scale, RngStream& rng);

/// Positive (alpha/2)-stable draw with Laplace transform exp(-lambda^{alpha/2}),
/// used as the mixing variable of the sub-Gaussian construction.
double sample_positive_stable(double rho, RngStream& rng);

/// Isotropic complex alpha-stable draw. Real and imaginary parts are each
/// SaS(scale) under the sample_sas convention.
std::complex<double> sample_isotropic_stable(double alpha, double scale, RngStream& rng);

/// Arrival times Gamma_1 < ... < Gamma_count of a unit-rate Poisson process.
Eigen::ArrayXd poisson_arrivals(std::size_t count, RngStream& rng);

}  // namespace harmstable
