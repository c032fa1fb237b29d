#pragma once

#include <string>
#include <utility>
#include <vector>

#include "schatten/limit_laws.hpp"
#include "schatten/sampling.hpp"

namespace schatten {

/// Result of one statistical verification run. pass is true exactly when the
/// decisive statistic is within its threshold (and any monotonicity
/// requirement holds); `statistics` records every intermediate value.
struct CheckReport {
  std::string name;
  long long sample_count = 0;
  std::vector<std::pair<std::string, double>> statistics;
  double threshold = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string threshold_provenance;

  std::string to_json() const;
};

enum class UniformFamily { ball, sphere, stiefel };

UniformFamily uniform_family_from_string(const std::string& s);

/// Poincare-Maxwell-Borel check: entries of sqrt(n) X^(k) approach i.i.d.
/// standard Gaussians as n grows (X uniform on the Schatten-inf ball, its
/// sphere under cone measure, or the orthonormal-row manifold). Pooled
/// entrywise KS against the normal CDF must be non-increasing in n within
/// twice the Kolmogorov statistic's sampling error and end below threshold.
CheckReport pmb_check(int m, int k, const std::vector<int>& n_list, FieldParam beta,
                      UniformFamily dist, int samples, RngStream& rng,
                      double threshold = 0.03, int threads = 1);

/// CLT for the inner product of independent pairs: (beta n / m)^{1/2} <X, Y>
/// approaches a standard Gaussian; the matrix statistic sqrt(n) X Y^* is
/// checked entrywise at the largest n.
CheckReport clt_inner_product_check(int m, const std::vector<int>& n_list, FieldParam beta,
                                    UniformFamily dist, int samples, RngStream& rng,
                                    double threshold = 0.03, int threads = 1);

/// Strong-law check: one sample per n (m = round(c n)), scaled empirical
/// spectrum against the closed-form limit CDF for p in {2, inf}. threshold
/// <= 0 selects the default 2/sqrt(m_final).
CheckReport lln_check(double c, SchattenIndex p, const std::vector<int>& n_list,
                      FieldParam beta, BallOrCone dist, RngStream& rng,
                      double threshold = 0.0, const McmcConfig& cfg = McmcConfig{},
                      int threads = 1);

enum class PolarSource { gaussian, inf_ball, dependent_control };

PolarSource polar_source_from_string(const std::string& s);

/// Independence of tr(X X^*) and the polar factor X^*(X X^*)^{-1/2} for
/// S_p-symmetric laws: correlation z-test plus a 4x4 quantile-binned
/// chi-square test, both at significance 0.01. The dependent_control source
/// couples the radial part to the polar factor and must fail.
CheckReport polar_independence_check(MatShape shape, FieldParam beta, PolarSource source,
                                     int samples, RngStream& rng);

double standard_normal_cdf(double x);

}  // namespace schatten
