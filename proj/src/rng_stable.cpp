#include "harmstable/rng_stable.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "harmstable/error.hpp"

namespace harmstable {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

void check_alpha_scale(double alpha, double scale) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw ParameterError("alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw ParameterError("scale must be finite and nonnegative, got " + std::to_string(scale));
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_index_), static_cast<std::uint32_t>(stream_index_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(master_seed_),
                                            static_cast<std::uint32_t>(master_seed_ >> 32)};
  buffer_ = philox4x32_10(ctr, key);
  buffered_ = 4;
  ++block_;
}

std::uint64_t RngStream::next_u64() {
  if (buffered_ < 2) refill();
  const std::uint64_t hi = buffer_[4 - buffered_];
  const std::uint64_t lo = buffer_[5 - buffered_];
  buffered_ -= 2;
  return (hi << 32) | lo;
}

double RngStream::uniform() {
  // 53 random bits, offset by half an ulp so 0 and 1 are never produced.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double a, double b) { return a + (b - a) * uniform(); }

double RngStream::exponential() { return -std::log(uniform()); }

double RngStream::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

double sample_sas(double alpha, double scale, RngStream& rng) {
  check_alpha_scale(alpha, scale);
  if (scale == 0.0) return 0.0;
  const double v = std::numbers::pi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  if (alpha == 1.0) return scale * std::tan(v);
  const double x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
  return scale * x;
}

double sample_positive_stable(double rho, RngStream& rng) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw ParameterError("positive stable index must lie in (0, 1], got " + std::to_string(rho));
  }
  if (rho == 1.0) return 1.0;
  // Kanter's representation.
  const double theta = std::numbers::pi * rng.uniform();
  const double w = rng.exponential();
  const double a = std::sin((1.0 - rho) * theta) *
                   std::pow(std::sin(rho * theta), rho / (1.0 - rho)) /
                   std::pow(std::sin(theta), 1.0 / (1.0 - rho));
  return std::pow(a / w, (1.0 - rho) / rho);
}

std::complex<double> sample_isotropic_stable(double alpha, double scale, RngStream& rng) {
  check_alpha_scale(alpha, scale);
  if (scale == 0.0) return {0.0, 0.0};
  // Sub-Gaussian construction: sqrt(A) * (G1 + i G2) with G ~ N(0, 2) and
  // E exp(-lambda A) = exp(-lambda^{alpha/2}) gives Re Z ~ SaS(1).
  const double mix = std::sqrt(sample_positive_stable(alpha / 2.0, rng));
  const double g1 = std::numbers::sqrt2 * rng.normal();
  const double g2 = std::numbers::sqrt2 * rng.normal();
  return scale * mix * std::complex<double>(g1, g2);
}

Eigen::ArrayXd poisson_arrivals(std::size_t count, RngStream& rng) {
  if (count < 1) throw ParameterError("poisson_arrivals needs count >= 1");
  Eigen::ArrayXd arrivals(static_cast<Eigen::Index>(count));
  double total = 0.0;
  for (Eigen::Index k = 0; k < arrivals.size(); ++k) {
    total += rng.exponential();
    arrivals[k] = total;
  }
  return arrivals;
}

}  // namespace harmstable
