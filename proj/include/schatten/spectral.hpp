#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "schatten/geometry.hpp"

namespace schatten {

/// Singular values, non-increasing, all >= 0.
struct SingularSpectrum {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[i]; }
};

/// Finite discrete probability measure on R_{>=0} with equal weights 1/m,
/// atoms kept sorted ascending.
struct EmpiricalMeasure {
  std::vector<double> atoms;

  double weight() const { return 1.0 / static_cast<double>(atoms.size()); }
};

/// Singular values of x via SVD; deterministic for fixed input bits.
/// Values below 1e-13 * s1 are reported as computed, never zeroed.
SingularSpectrum singular_values(const Eigen::MatrixXcd& x);

/// l_p norm of the spectrum; p = inf gives s1. p > 0 (quasi-norm for p < 1).
double schatten_norm(const Eigen::MatrixXcd& x, SchattenIndex p);
double schatten_norm(const SingularSpectrum& s, SchattenIndex p);

enum class SpectrumScaling { none, m_pow };

/// Empirical measure with atoms s_i(x) (scaling none) or m^{1/p} s_i(x)
/// (scaling m_pow; requires finite p), each of weight 1/m.
EmpiricalMeasure empirical_spectrum_measure(const Eigen::MatrixXcd& x, SchattenIndex p,
                                            SpectrumScaling scaling);

EmpiricalMeasure empirical_measure_from_values(std::vector<double> values);

/// sup_x |F_emp(x) - cdf(x)|, evaluated at every atom from both sides.
double ks_distance(const EmpiricalMeasure& emp, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance between the step CDFs.
double ks_distance_two_sample(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// Exact 1-Wasserstein distance between finite-atom measures
/// (sorted-quantile coupling).
double wasserstein1(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// General weighted variant used by the equilibrium cross-checks.
double wasserstein1_weighted(const std::vector<double>& xa, const std::vector<double>& wa,
                             const std::vector<double>& xb, const std::vector<double>& wb);

/// Write `location,weight` CSV (header included).
void write_empirical_csv(const EmpiricalMeasure& emp, std::ostream& os);

}  // namespace schatten
