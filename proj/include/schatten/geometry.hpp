#pragma once

#include <Eigen/Core>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "schatten/log_value.hpp"
#include "schatten/special_functions.hpp"

namespace schatten {

/// Matrix dimensions with the standing convention m <= n (transpose first
/// otherwise; singular values are unchanged).
struct MatShape {
  int m;
  int n;

  MatShape(int m_, int n_) : m(m_), n(n_) {
    if (m < 1 || n < 1) throw std::domain_error("MatShape: dimensions must be positive");
    if (m > n) throw std::domain_error("MatShape: requires m <= n");
  }

  int dim(FieldParam beta) const { return beta.beta * m * n; }
};

/// Schatten index p in (0, inf].
struct SchattenIndex {
  double p;

  static SchattenIndex inf() { return SchattenIndex(std::numeric_limits<double>::infinity()); }

  explicit SchattenIndex(double p_) : p(p_) {
    if (!(p > 0.0)) throw std::domain_error("SchattenIndex: p > 0 required");
  }

  bool is_inf() const { return std::isinf(p); }
};

/// Exact ratio of small integers, used for moment identities.
struct Rational {
  long long num;
  long long den;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Exact log-volume of the Schatten-inf unit ball of m x n matrices:
/// prod_{k<m} G(1+bk/2) prod_{k<n} G(1+bk/2) / prod_{k<m+n} G(1+bk/2) * pi^{bmn/2}.
LogValue schatten_inf_log_volume(MatShape shape, FieldParam beta);

/// Limit of (beta n)^{1/2} V^{1/(beta m n)} as n -> inf with m/n -> c:
/// (2 pi e^{3/2}/(1+c))^{1/2} (1+c)^{-1/(4c)} (1+1/c)^{-c/4}; c in [0,1],
/// with (1+c)^{1/c} := e and (1+1/c)^c := 1 at c = 0.
double volume_radius_limit_inf(double c, FieldParam beta);

/// Aomoto moment ratio int_B <x,x> dx / int_B dx = m n / (m + n + 2/beta - 1)
/// for the Schatten-inf ball, as an exact rational.
Rational second_moment_ratio(MatShape shape, FieldParam beta);

/// Squared isotropy constant L^2 = ratio / (d V^{2/d}), d = beta m n.
double isotropy_constant_sq(MatShape shape, FieldParam beta);

/// Limit of L^2 as n -> inf with m/n -> c:
/// (1/(2 pi e^{3/2})) (1+c)^{1/(2c)} (1+1/c)^{c/2}, same c = 0 interpretations.
double isotropy_constant_sq_limit(double c);

/// <nu(x), x> on the Schatten-p unit sphere: (sum_i s_i^{2p-2})^{-1/2} for
/// p < inf (this is ||x||_{S_{2p-2}}^{1-p}, and m^{-1/2} at p = 1), constant 1
/// for p = inf. Requires ||x||_{S_p} = 1 within 1e-8; rank-deficient inputs
/// with p <= 1 are singular.
double cone_to_hausdorff_density(const Eigen::MatrixXcd& x, SchattenIndex p);

/// Hausdorff measure of the Schatten-p unit sphere for p in {1, 2, inf}:
/// beta m^{3/2} n V_1 (p = 1) or beta m n V_p (p in {2, inf}). The p = 1 ball
/// volume has no closed form here, so it must be supplied by the caller.
LogValue sphere_hausdorff_measure(MatShape shape, FieldParam beta, SchattenIndex p,
                                  std::optional<LogValue> log_ball_volume = std::nullopt);

/// log vol(r B) = log V + beta n sum_i ln s_i(r) for regular r (Prop on
/// scaled balls); r is given by its singular values.
LogValue scaled_ball_log_volume(const std::vector<double>& r_singular_values,
                                MatShape shape, FieldParam beta);

/// Hausdorff measure of r S_beta^{m,n} (the scaled orthonormal-row manifold),
/// of dimension d = beta m (2n - m + 1)/2 - m:
/// 2^{-beta m(m-1)/4} |det r|^{beta(n-m+1)-1} prod_{j<i} (s_j^2+s_i^2)^{beta/2} omega_{n,m;beta}.
LogValue scaled_stiefel_log_measure(const std::vector<double>& r_singular_values,
                                    MatShape shape, FieldParam beta);

/// Cone-measure moment of the positive orthant on the l_q sphere in R^m:
/// int 1_{theta>0} prod theta_i^alpha dkappa = G((a+1)/q)^m / (m V_q^m q^{m-1} G(m(a+1)/q)).
LogValue cone_measure_moment(int m, double q, double alpha);

/// Limit of (beta n)^{1/2 + 1/p} V_p^{1/(beta m n)} with B = B_{c,p}:
/// (2 pi e^{3/2})^{1/2} (e p / c)^{1/p} e^B (1-c)^{(1-c)^2/(4c)} c^{-c/4},
/// with (1-c)^{(1-c)^2} := 1 at c = 1.
double schatten_p_volume_radius_asymptotic(double c, double p, double B);

}  // namespace schatten
