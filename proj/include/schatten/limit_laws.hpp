#pragma once

#include <functional>
#include <vector>

#include "schatten/geometry.hpp"

namespace schatten {

/// Closed-form limiting spectral densities. Supports:
///   nu_c2     on [(1-sqrt c)^2/2, (1+sqrt c)^2/2]   (squared values, p = 2)
///   mu_c2_sq  on [(1-sqrt c)^2, (1+sqrt c)^2]       (Marchenko-Pastur)
///   mu_c2     on [1-sqrt c, 1+sqrt c]               (quarter circle at c = 1)
///   nu_c_inf  on [((1-c)/(1+c))^2, 1]
///   mu_c_inf  on [(1-c)/(1+c), 1]                   (absolute arcsine at c = 1)
enum class DensityFamily { nu_c2, mu_c2_sq, mu_c2, nu_c_inf, mu_c_inf };

struct LimitDensity {
  DensityFamily family;
  double c;
  double lo, hi;

  LimitDensity(DensityFamily f, double c_);
};

DensityFamily density_family_from_string(const std::string& name);

/// Pointwise density; 0 outside the support, endpoint singularities returned
/// as computed (may be +inf at the exact endpoint).
double density_eval(const LimitDensity& d, double x);

/// int x^k density dx, k >= 0; adaptive Gauss-Legendre after the cosine
/// substitution that removes inverse-square-root endpoints (abs err <= 1e-7).
double density_moment(const LimitDensity& d, double k);

/// CDF by the same quadrature.
double density_cdf(const LimitDensity& d, double x);

/// Equal-weight quantile discretization with n atoms.
std::vector<double> density_quantile_atoms(const LimitDensity& d, int n);

/// Generic weighted integral of f against the density.
double density_integral(const LimitDensity& d, const std::function<double(double)>& f);

/// B_{c,2} = -3/4 - ln(2)/2 + (c/4) ln c - ((1-c)^2/(4c)) ln(1-c);
/// B_{c,inf} = (c/2) ln c - ((1-c)^2/(4c)) ln(1-c) - ((1+c)^2/(4c)) ln(1+c);
/// limits taken at c = 1.
double b_constant(double c, SchattenIndex p);

/// General discrete probability measure on a node grid.
struct GridMeasure {
  std::vector<double> nodes;    // strictly increasing, >= 0
  std::vector<double> weights;  // nonnegative, sum to 1

  void validate() const;
};

/// LDP rate function on a discretized measure:
///   I_{c,p}(mu) = -(c/2) double-log-integral - (1-c) int log x dmu
///                 + log(e p)/p + B          (p < inf, requires m_p(mu) <= 1)
///   I_{c,inf}(mu) = same without the log(e p)/p term, support within [0,1].
/// Self-pairs of the log|x^2-y^2| kernel are replaced by w^2 log(Delta/2)
/// with Delta the local node spacing; +inf when the constraint fails.
double rate_function(const GridMeasure& mu, double c, SchattenIndex p, double B);

}  // namespace schatten
