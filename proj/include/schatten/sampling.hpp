#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "schatten/geometry.hpp"
#include "schatten/rng.hpp"

namespace schatten {

struct SeedRecord {
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;
};

/// Dense m x n sample with provenance. Entries are stored complex; for
/// beta = 1 the imaginary parts are identically zero.
struct MatrixSample {
  MatShape shape;
  FieldParam beta;
  Eigen::MatrixXcd entries;
  std::string label;
  SeedRecord seed;
  bool mcmc_converged = true;  // false only when an MCMC diagnostic flagged the draw
};

struct McmcConfig {
  int burn_in = 500;      // adaptation sweeps before sampling
  int thinning = 10;      // sweeps between retained states
  double step_scale = 0.5;
  int chains = 2;         // split-chain diagnostic count

  void validate() const {
    if (burn_in < 0) throw std::domain_error("McmcConfig: burn_in >= 0 required");
    if (thinning < 1) throw std::domain_error("McmcConfig: thinning >= 1 required");
    if (!(step_scale > 0)) throw std::domain_error("McmcConfig: step_scale > 0 required");
    if (chains < 1) throw std::domain_error("McmcConfig: chains >= 1 required");
  }
};

/// i.i.d. standard Gaussian entries; complex entries are 2^{-1/2}(g1 + i g2),
/// so E|X_ij|^2 = 1 for both fields.
MatrixSample gaussian_matrix(MatShape shape, FieldParam beta, RngStream& rng);

/// Haar-uniform point of S_beta^{m,n} = {x : x x^* = I_m}: (G G^*)^{-1/2} G
/// for Gaussian G. (Its adjoint is uniform on the Stiefel manifold.)
MatrixSample stiefel_uniform(int n, int m, FieldParam beta, RngStream& rng);

/// Haar-distributed d x d unitary (orthogonal for beta = 1): QR of a Gaussian
/// matrix with the diagonal of R normalized to positive.
Eigen::MatrixXcd haar_unitary(int d, FieldParam beta, RngStream& rng);

/// Matrix-variate Beta_{m,beta}(beta n/2, beta(m-1)/2 + 1) sample:
/// R = S^{-1/2} G G^* S^{-1/2}, S = G G^* + H H^*, G Gaussian m x n and
/// H Gaussian m x n2 with n2 = (m-1) + 2/beta. Self-adjoint with 0 < R < I.
Eigen::MatrixXcd matrix_beta_sample(int m, int n, FieldParam beta, RngStream& rng);

/// Uniform sample of the Schatten-inf unit ball: X = R^{1/2} U^* with
/// independent R ~ Beta_{m,beta} and U uniform Stiefel.
MatrixSample schatten_inf_ball_uniform(MatShape shape, FieldParam beta, RngStream& rng);

/// Matrix Dirichlet blocks (R_1,...,R_d) combined with independent Haar
/// unitaries; the concatenation (R_1^{1/2} U_1, ..., R_d^{1/2} U_d) is
/// uniform on the Schatten-inf ball of shape (m, d m).
std::vector<Eigen::MatrixXcd> dirichlet_matrix_sample(int m, int d, FieldParam beta,
                                                      RngStream& rng);
MatrixSample dirichlet_block_sample(int m, int d, FieldParam beta, RngStream& rng);

/// Metropolis-within-Gibbs chain for the squared-singular-value law
///   g(y) ~ e^{-beta n ||y||_{p/2}^{p/2}} prod y_i^{beta(n-m+1)/2 - 1}
///          prod_{i<j} |y_i - y_j|^beta     on R_{>0}^m,
/// with the exponential factor replaced by the indicator of [0,1]^m at
/// p = inf. Proposals are per-coordinate Gaussian walks on log y (p < inf)
/// or logit y (p = inf); step sizes adapt to 30-45% acceptance during
/// burn-in and are frozen afterwards.
class SvSquaredChain {
 public:
  SvSquaredChain(MatShape shape, FieldParam beta, SchattenIndex p, McmcConfig cfg,
                 RngStream rng);

  /// Advance by `thinning` sweeps and return the current state.
  std::vector<double> next();

  /// Split-chain potential-scale-reduction on sum(y) and max(y) over the
  /// retained history; true when both are below 1.05.
  bool converged() const;
  double psrf_sum() const { return psrf(hist_sum_); }
  double psrf_max() const { return psrf(hist_max_); }
  double acceptance_rate() const;

 private:
  void sweep(std::vector<double>& y, std::vector<double>& steps, bool adapt);
  double log_density_term(const std::vector<double>& y, int i, double yi) const;
  double psrf(const std::vector<std::vector<double>>& hist) const;

  MatShape shape_;
  FieldParam beta_;
  SchattenIndex p_;
  McmcConfig cfg_;
  RngStream rng_;
  std::vector<std::vector<double>> state_;   // one per chain
  std::vector<std::vector<double>> steps_;   // per-chain per-coordinate step sizes
  std::vector<std::vector<double>> hist_sum_, hist_max_;
  long long accepted_ = 0, proposed_ = 0;
  int draw_rotation_ = 0;
};

/// One post burn-in, thinned state of the chain above.
std::vector<double> sv_squared_mcmc(MatShape shape, FieldParam beta, SchattenIndex p,
                                    const McmcConfig& cfg, RngStream& rng);

enum class BallOrCone { ball, cone };

/// Sampler for the uniform distribution on the Schatten-p ball or the cone
/// measure on its sphere: X = R V diag(sqrt(Y_i)) / ||Y||_{p/2}^{1/2} U^*
/// with Y from the chain above, Haar V and U, and R = 1 (cone) or
/// R = W^{1/(beta m n)} (ball). At p = inf the ball case uses the direct
/// representation X = V diag(sqrt(Y_i)) U^* without normalization.
class SchattenPSampler {
 public:
  SchattenPSampler(MatShape shape, FieldParam beta, SchattenIndex p, BallOrCone mode,
                   McmcConfig cfg, RngStream rng);

  MatrixSample next();
  bool mcmc_converged() const;

 private:
  MatShape shape_;
  FieldParam beta_;
  SchattenIndex p_;
  BallOrCone mode_;
  SeedRecord seed_;
  SvSquaredChain chain_;
  RngStream unitary_rng_;
  RngStream radial_rng_;
};

MatrixSample schatten_p_sample(MatShape shape, FieldParam beta, SchattenIndex p,
                               BallOrCone mode, RngStream& rng, const McmcConfig& cfg);

/// V diag(spectrum) U^* with independent Haar V (m x m) and U (n x n);
/// the singular values of the output are the sorted spectrum.
MatrixSample two_sided_invariant_sample(const std::vector<double>& spectrum, int n,
                                        FieldParam beta, RngStream& rng);

/// Matrix dump: header `m n beta label seed`, then row-major entries with 17
/// significant digits, complex entries as re,im pairs.
void write_matrix_dump(const MatrixSample& s, std::ostream& os);
MatrixSample read_matrix_dump(std::istream& is);

}  // namespace schatten
