#pragma once

#include <stdexcept>

#include "schatten/log_value.hpp"

namespace schatten {

/// Ground field selector: beta = 1 (real) or beta = 2 (complex).
struct FieldParam {
  int beta;

  explicit FieldParam(int b) : beta(b) {
    if (b != 1 && b != 2) throw std::domain_error("FieldParam: beta must be 1 or 2");
  }
};

/// ln Gamma(x) for x > 0, Lanczos approximation (>= 13 significant digits).
double log_gamma(double x);

/// ln Gamma_{m,beta}(z) = (beta m (m-1)/4) ln pi + sum_{k=0}^{m-1} ln Gamma(z - beta k/2).
/// Requires z > beta (m-1)/2.
double multivariate_log_gamma(int m, FieldParam beta, double z);

/// ln of the Riemannian volume of the Stiefel manifold O_{n,m;beta}:
/// omega_{n,m;beta} = 2^{m + beta m(m-1)/4} pi^{beta m n/2} / Gamma_{m,beta}(beta n/2).
double stiefel_log_volume(int n, int m, FieldParam beta);

/// ln of the Selberg integral
///   int_{(0,1)^m} prod x_i^{a-1} (1-x_i)^{b-1} prod_{i<j} |x_i-x_j|^{2g} dx.
/// Convergence region: a > 0, b > 0, g > -min{1/m, a/(m-1), b/(m-1)}.
double selberg_log_integral(int m, double a, double b, double g);

enum class GammaProductMode { exact, asymptotic };

/// ln prod_{k=1}^n Gamma(beta k / 2), either summed exactly or via the
/// five-term large-n expansion (whose additive constant is a_beta_constant).
double gamma_product_log(int n, FieldParam beta, GammaProductMode mode);

/// Additive constant of the gamma_product_log expansion, estimated once per
/// beta by Richardson extrapolation of exact-minus-expansion over
/// n in {2500, 5000, 10000}; accurate to about 1e-6.
double a_beta_constant(FieldParam beta);

/// ln vol of the unit l_q ball in R^m: ln[ 2^m Gamma(1+1/q)^m / Gamma(1+m/q) ].
double lp_ball_log_volume(int m, double q);

}  // namespace schatten
