#include "schatten/geometry.hpp"

#include <cmath>

#include "schatten/spectral.hpp"

namespace schatten {

namespace {
constexpr double kLogPi = 1.1447298858494001741;
}

LogValue schatten_inf_log_volume(MatShape shape, FieldParam beta) {
  const double b = beta.beta;
  double lg = b * shape.m * shape.n / 2.0 * kLogPi;
  for (int k = 0; k < shape.m; ++k) lg += log_gamma(1.0 + b * k / 2.0);
  for (int k = 0; k < shape.n; ++k) lg += log_gamma(1.0 + b * k / 2.0);
  for (int k = 0; k < shape.m + shape.n; ++k) lg -= log_gamma(1.0 + b * k / 2.0);
  return LogValue::from_log(lg);
}

double volume_radius_limit_inf(double c, FieldParam /*beta*/) {
  if (!(c >= 0.0) || c > 1.0)
    throw std::domain_error("volume_radius_limit_inf: c must lie in [0, 1]");
  const double e32 = std::exp(1.5);
  if (c == 0.0) return std::sqrt(2.0 * M_PI * e32) * std::exp(-0.25);
  return std::sqrt(2.0 * M_PI * e32 / (1.0 + c)) * std::pow(1.0 + c, -1.0 / (4.0 * c)) *
         std::pow(1.0 + 1.0 / c, -c / 4.0);
}

Rational second_moment_ratio(MatShape shape, FieldParam beta) {
  // m n / (m + n + 2/beta - 1); for beta = 1 the denominator is m + n + 1,
  // for beta = 2 it is m + n, both integral.
  const long long m = shape.m, n = shape.n;
  if (beta.beta == 1) return Rational{m * n, m + n + 1};
  return Rational{m * n, m + n};
}

double isotropy_constant_sq(MatShape shape, FieldParam beta) {
  const double d = shape.dim(beta);
  const double logV = schatten_inf_log_volume(shape, beta).log_mag;
  return second_moment_ratio(shape, beta).value() / d * std::exp(-2.0 * logV / d);
}

double isotropy_constant_sq_limit(double c) {
  if (!(c >= 0.0) || c > 1.0)
    throw std::domain_error("isotropy_constant_sq_limit: c must lie in [0, 1]");
  const double base = 1.0 / (2.0 * M_PI * std::exp(1.5));
  if (c == 0.0) return base * std::exp(0.5);
  return base * std::pow(1.0 + c, 1.0 / (2.0 * c)) * std::pow(1.0 + 1.0 / c, c / 2.0);
}

double cone_to_hausdorff_density(const Eigen::MatrixXcd& x, SchattenIndex p) {
  SingularSpectrum s = singular_values(x);
  const double norm = schatten_norm(s, p);
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::domain_error("cone_to_hausdorff_density: x must lie on the unit sphere");
  if (p.is_inf()) return 1.0;
  const double expo = 2.0 * p.p - 2.0;
  // (sum s_i^{2p-2})^{-1/2} = ||x||_{S_{2p-2}}^{1-p}; at p = 1 every term is
  // s_i^0 and the value is m^{-1/2}, provided x has full rank.
  double acc = 0.0;
  for (double v : s.values) {
    if (v <= 0.0 && expo <= 0.0)
      throw std::domain_error("cone_to_hausdorff_density: rank-deficient x with p <= 1");
    acc += expo == 0.0 ? 1.0 : std::pow(v, expo);
  }
  return 1.0 / std::sqrt(acc);
}

LogValue sphere_hausdorff_measure(MatShape shape, FieldParam beta, SchattenIndex p,
                                  std::optional<LogValue> log_ball_volume) {
  const double b = beta.beta;
  const double m = shape.m, n = shape.n;
  if (p.is_inf()) {
    return LogValue::from_log(std::log(b * m * n) +
                              schatten_inf_log_volume(shape, beta).log_mag);
  }
  if (p.p == 2.0) {
    const double d = shape.dim(beta);
    const double logV = d / 2.0 * kLogPi - log_gamma(d / 2.0 + 1.0);
    return LogValue::from_log(std::log(d) + logV);
  }
  if (p.p == 1.0) {
    if (!log_ball_volume)
      throw std::domain_error(
          "sphere_hausdorff_measure: p = 1 requires a ball-volume estimate (unsupported in "
          "closed form)");
    return LogValue::from_log(std::log(b * m * std::sqrt(m) * n) + log_ball_volume->log_mag);
  }
  throw std::domain_error("sphere_hausdorff_measure: p must be 1, 2 or inf");
}

LogValue scaled_ball_log_volume(const std::vector<double>& r_singular_values, MatShape shape,
                                FieldParam beta) {
  if (static_cast<int>(r_singular_values.size()) != shape.m)
    throw std::domain_error("scaled_ball_log_volume: need m singular values");
  double logdet = 0.0;
  for (double s : r_singular_values) {
    if (!(s > 0.0)) throw std::domain_error("scaled_ball_log_volume: r must be regular");
    logdet += std::log(s);
  }
  return LogValue::from_log(schatten_inf_log_volume(shape, beta).log_mag +
                            beta.beta * shape.n * logdet);
}

LogValue scaled_stiefel_log_measure(const std::vector<double>& r_singular_values,
                                    MatShape shape, FieldParam beta) {
  if (static_cast<int>(r_singular_values.size()) != shape.m)
    throw std::domain_error("scaled_stiefel_log_measure: need m singular values");
  const double b = beta.beta;
  double logdet = 0.0;
  for (double s : r_singular_values) {
    if (!(s > 0.0)) throw std::domain_error("scaled_stiefel_log_measure: r must be regular");
    logdet += std::log(s);
  }
  double cross = 0.0;
  for (size_t j = 0; j < r_singular_values.size(); ++j)
    for (size_t i = j + 1; i < r_singular_values.size(); ++i)
      cross += std::log(r_singular_values[j] * r_singular_values[j] +
                        r_singular_values[i] * r_singular_values[i]);
  const double lg = -b * shape.m * (shape.m - 1) / 4.0 * std::log(2.0) +
                    (b * (shape.n - shape.m + 1) - 1.0) * logdet + b / 2.0 * cross +
                    stiefel_log_volume(shape.n, shape.m, beta);
  return LogValue::from_log(lg);
}

LogValue cone_measure_moment(int m, double q, double alpha) {
  if (m < 1) throw std::domain_error("cone_measure_moment: m >= 1 required");
  if (!(q > 0.0)) throw std::domain_error("cone_measure_moment: q > 0 required");
  if (!(alpha > -1.0)) throw std::domain_error("cone_measure_moment: alpha > -1 required");
  const double lg = m * log_gamma((alpha + 1.0) / q) - std::log(static_cast<double>(m)) -
                    lp_ball_log_volume(m, q) - (m - 1.0) * std::log(q) -
                    log_gamma(m * (alpha + 1.0) / q);
  return LogValue::from_log(lg);
}

double schatten_p_volume_radius_asymptotic(double c, double p, double B) {
  if (!(c > 0.0) || c > 1.0)
    throw std::domain_error("schatten_p_volume_radius_asymptotic: c must lie in (0, 1]");
  if (!(p > 0.0)) throw std::domain_error("schatten_p_volume_radius_asymptotic: p > 0");
  const double lead = std::sqrt(2.0 * M_PI * std::exp(1.5));
  const double edge = c == 1.0 ? 1.0 : std::pow(1.0 - c, (1.0 - c) * (1.0 - c) / (4.0 * c));
  return lead * std::pow(M_E * p / c, 1.0 / p) * std::exp(B) * edge * std::pow(c, -c / 4.0);
}

}  // namespace schatten
