#include "harmstable/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "harmstable/error.hpp"
#include "harmstable/io.hpp"

namespace harmstable {

namespace {

void check_model_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ParameterError("alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
}

/// Sorts (locations, values) by location.
void sort_atoms(Eigen::ArrayXd& locations, Eigen::ArrayXcd& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(locations.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return locations[a] < locations[b]; });
  Eigen::ArrayXd sorted_loc(locations.size());
  Eigen::ArrayXcd sorted_val(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted_loc[static_cast<Eigen::Index>(i)] = locations[order[i]];
    sorted_val[static_cast<Eigen::Index>(i)] = values[order[i]];
  }
  locations = std::move(sorted_loc);
  values = std::move(sorted_val);
}

/// Index of the first atom whose location equals its predecessor's, or -1.
Eigen::Index first_tie(const Eigen::ArrayXd& locations) {
  for (Eigen::Index i = 1; i < locations.size(); ++i) {
    if (locations[i] == locations[i - 1]) return i;
  }
  return -1;
}

std::string format_point(double s) {
  std::ostringstream os;
  os.precision(17);
  os << s;
  return os.str();
}

}  // namespace

JumpMeasure JumpMeasure::from_atoms(double alpha, double half_width, Eigen::ArrayXd locations,
                                    Eigen::ArrayXcd values, double calibration) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0, 2]");
  if (!(half_width > 0.0)) throw ParameterError("half_width must be positive");
  if (locations.size() != values.size()) {
    throw ParameterError("locations and values must have the same length");
  }
  if ((locations.abs() > half_width).any()) {
    throw ParameterError("atom locations must lie in [-M, M]");
  }
  sort_atoms(locations, values);
  if (const Eigen::Index tie = first_tie(locations); tie >= 0) {
    throw ParameterError("duplicate atom location " + format_point(locations[tie]));
  }
  JumpMeasure jm;
  jm.alpha_ = alpha;
  jm.half_width_ = half_width;
  jm.calibration_ = calibration;
  jm.locations_ = std::move(locations);
  jm.values_ = std::move(values);
  return jm;
}

JumpMeasure JumpMeasure::rescaled(double a) const {
  if (!(a > 0.0)) throw ParameterError("rescaling factor must be positive");
  JumpMeasure jm = *this;
  jm.half_width_ = half_width_ / a;
  jm.calibration_ = calibration_ * std::pow(a, -1.0 / alpha_);
  jm.locations_ = locations_ / a;
  jm.values_ = values_ * std::pow(a, -1.0 / alpha_);
  return jm;
}

JumpMeasure JumpMeasure::slice(std::size_t first, std::size_t last) const {
  if (first > last || last > n_terms()) throw ParameterError("slice out of range");
  JumpMeasure jm = *this;
  const auto count = static_cast<Eigen::Index>(last - first);
  jm.locations_ = locations_.segment(static_cast<Eigen::Index>(first), count);
  jm.values_ = values_.segment(static_cast<Eigen::Index>(first), count);
  return jm;
}

double lepage_calibration(double alpha, double half_width) {
  check_model_alpha(alpha);
  if (!(half_width > 0.0)) throw ParameterError("half_width must be positive");
  // C_alpha = (int_0^inf x^{-alpha} sin x dx)^{-1}.
  const double c_alpha =
      alpha == 1.0 ? 2.0 / std::numbers::pi
                   : (1.0 - alpha) / (std::tgamma(2.0 - alpha) * std::cos(std::numbers::pi * alpha / 2.0));
  // E|cos(theta)|^alpha for theta uniform on [0, 2 pi).
  const double cos_moment = std::tgamma((alpha + 1.0) / 2.0) /
                            (std::sqrt(std::numbers::pi) * std::tgamma(alpha / 2.0 + 1.0));
  return std::pow(2.0 * half_width * c_alpha / cos_moment, 1.0 / alpha);
}

JumpMeasure build_jump_measure(double alpha, double half_width, std::size_t n_terms,
                               RngStream& rng) {
  check_model_alpha(alpha);
  if (!(half_width > 0.0)) throw ParameterError("half_width must be positive");
  if (n_terms < 1) throw ParameterError("n_terms must be at least 1");

  const double calibration = lepage_calibration(alpha, half_width);
  const Eigen::ArrayXd arrivals = poisson_arrivals(n_terms, rng);
  const auto count = static_cast<Eigen::Index>(n_terms);
  Eigen::ArrayXd locations(count);
  Eigen::ArrayXcd values(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    locations[i] = rng.uniform(-half_width, half_width);
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    values[i] = std::polar(calibration * std::pow(arrivals[i], -1.0 / alpha), theta);
  }
  sort_atoms(locations, values);

  JumpMeasure jm;
  for (Eigen::Index tie = first_tie(locations); tie >= 0; tie = first_tie(locations)) {
    std::clog << "warning: atom location tie at " << format_point(locations[tie])
              << " (seed " << rng.master_seed() << ", stream " << rng.stream_index()
              << "); resampling\n";
    locations[tie] = rng.uniform(-half_width, half_width);
    ++jm.resampled_ties_;
    sort_atoms(locations, values);
  }

  jm.alpha_ = alpha;
  jm.half_width_ = half_width;
  jm.calibration_ = calibration;
  jm.locations_ = std::move(locations);
  jm.values_ = std::move(values);
  return jm;
}

Complex integrate(const JumpMeasure& jm, const Kernel1& f) {
  Complex total{0.0, 0.0};
  const auto& loc = jm.locations();
  const auto& val = jm.values();
  for (Eigen::Index i = 0; i < loc.size(); ++i) {
    const Complex fi = f(loc[i]);
    if (!std::isfinite(fi.real()) || !std::isfinite(fi.imag())) {
      throw SingularityError("kernel is not finite at atom location " + format_point(loc[i]));
    }
    total += fi * val[i];
  }
  return total;
}

RealIntegrals integrate_real_parts(const JumpMeasure& jm, const Kernel1& f) {
  RealIntegrals out;
  const auto& loc = jm.locations();
  const auto& val = jm.values();
  for (Eigen::Index i = 0; i < loc.size(); ++i) {
    const Complex fi = f(loc[i]);
    if (!std::isfinite(fi.real()) || !std::isfinite(fi.imag())) {
      throw SingularityError("kernel is not finite at atom location " + format_point(loc[i]));
    }
    out.re_f_dl1 += fi.real() * val[i].real();
    out.im_f_dl2 += fi.imag() * val[i].imag();
    out.re_f_dl2 += fi.real() * val[i].imag();
    out.im_f_dl1 += fi.imag() * val[i].real();
  }
  return out;
}

double integrate_qv(const JumpMeasure& jm, const std::function<double(double)>& phi) {
  double total = 0.0;
  const auto& loc = jm.locations();
  const auto& val = jm.values();
  for (Eigen::Index i = 0; i < loc.size(); ++i) {
    const double w = phi(loc[i]);
    if (!std::isfinite(w)) {
      throw SingularityError("weight is not finite at atom location " + format_point(loc[i]));
    }
    total += w * std::norm(val[i]);
  }
  return total;
}

double quadratic_variation(const JumpMeasure& jm) { return jm.values().abs2().sum(); }

Complex double_integrate(const JumpMeasure& jm, const Kernel2& f) {
  const auto& loc = jm.locations();
  const auto& val = jm.values();
  const Kernel2::IndexedEval pair =
      f.bind ? f.bind(loc) : Kernel2::IndexedEval([&](Eigen::Index i, Eigen::Index k) {
        return f.eval(loc[i], loc[k]);
      });

  Complex total{0.0, 0.0};
  for (Eigen::Index i = 1; i < loc.size(); ++i) {
    Complex row{0.0, 0.0};
    for (Eigen::Index k = 0; k < i; ++k) row += pair(i, k) * std::conj(val[k]);
    if (!std::isfinite(row.real()) || !std::isfinite(row.imag())) {
      for (Eigen::Index k = 0; k < i; ++k) {
        const Complex v = pair(i, k);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          throw SingularityError("kernel is not finite at atom pair (s, u) = (" +
                                 format_point(loc[i]) + ", " + format_point(loc[k]) + ")");
        }
      }
      throw SingularityError("double integral overflowed at atom " + format_point(loc[i]));
    }
    total += row * val[i];
  }
  return total;
}

double condition_value(const Kernel2& f, double alpha, const std::function<double(double)>& psi,
                       const QuadratureSpec& quad) {
  quad.validate();
  if (!(alpha > 0.0 && alpha < 2.0)) throw ParameterError("alpha must lie in (0, 2)");

  // Normalization of psi. Power-law tails converge slowly, so the mass is
  // extrapolated from three domains growing by a constant factor.
  double mass[3];
  for (int k = 0; k < 3; ++k) {
    QuadratureSpec wide = quad;
    wide.outer_cutoff = std::pow(10.0, 4 + 2 * k);
    mass[k] = integrate_1d([&](double s) { return std::pow(psi(s), alpha); }, -wide.outer_cutoff,
                           wide.outer_cutoff, {-1.0, 0.0, 1.0}, wide);
  }
  const double d1 = mass[1] - mass[0];
  const double d2 = mass[2] - mass[1];
  double psi_mass = mass[2];
  if (d2 != 0.0 && std::abs(d2) < std::abs(d1)) psi_mass -= d2 * d2 / (d2 - d1);
  if (std::abs(psi_mass - 1.0) > 0.01) {
    throw ParameterError("psi^alpha must integrate to 1, quadrature gives " +
                         std::to_string(psi_mass));
  }

  TriangleSingularities sing;
  sing.s_lines = f.singular_s;
  sing.u_lines = f.singular_u;
  sing.diagonal_offsets = f.diagonal_offsets;
  for (double kink : {-1.0, 1.0}) {
    sing.s_lines.push_back(kink);
    sing.u_lines.push_back(kink);
  }

  const auto integrand = [&](double s, double u) {
    const double a = std::abs(f(s, u));
    if (a == 0.0) return 0.0;
    const double ratio = a / (psi(s) * psi(u));
    const double log_plus = ratio >= 1.0 ? std::log(ratio) : 0.0;
    return std::pow(a, alpha) * (1.0 + log_plus);
  };
  return integrate_lower_triangle(integrand, sing, quad);
}

void write_csv(std::ostream& os, const JumpMeasure& jm) {
  os << "location,re,im\n";
  const auto& loc = jm.locations();
  const auto& val = jm.values();
  for (Eigen::Index i = 0; i < loc.size(); ++i) {
    os << format_g17(loc[i]) << ',' << format_g17(val[i].real()) << ','
       << format_g17(val[i].imag()) << '\n';
  }
}

}  // namespace harmstable
