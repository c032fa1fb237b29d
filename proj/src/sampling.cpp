#include "schatten/sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace schatten {

namespace {

using Eigen::MatrixXcd;

// (self-adjoint A)^expo via eigendecomposition; eigenvalues clamped at 1e-14
// before any negative power.
MatrixXcd sym_pow(const MatrixXcd& a, double expo) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a);
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) ev[i] = std::max(ev[i], 1e-14);
  Eigen::VectorXd powed = ev.array().pow(expo).matrix();
  return es.eigenvectors() * powed.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd gaussian_block(int rows, int cols, FieldParam beta, RngStream& rng) {
  MatrixXcd g(rows, cols);
  if (beta.beta == 1) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
  } else {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        g(i, j) = std::complex<double>(rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2);
  }
  return g;
}

// second shape parameter of the Gaussian-ratio beta construction
int beta_second_dim(int m, FieldParam beta) { return (m - 1) + 2 / beta.beta; }

}  // namespace

MatrixSample gaussian_matrix(MatShape shape, FieldParam beta, RngStream& rng) {
  MatrixSample s{shape, beta, gaussian_block(shape.m, shape.n, beta, rng), "gaussian",
                 {rng.master_seed(), rng.stream()}};
  return s;
}

Eigen::MatrixXcd haar_unitary(int d, FieldParam beta, RngStream& rng) {
  MatrixXcd g = gaussian_block(d, d, beta, rng);
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ();
  MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0 ? rjj / mag : 1.0;
  }
  return q;
}

MatrixSample stiefel_uniform(int n, int m, FieldParam beta, RngStream& rng) {
  if (m > n) throw std::domain_error("stiefel_uniform: requires m <= n");
  const SeedRecord seed{rng.master_seed(), rng.stream()};
  for (int attempt = 0; attempt < 64; ++attempt) {
    MatrixXcd g = gaussian_block(m, n, beta, rng);
    MatrixXcd w = g * g.adjoint();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(w);
    if (es.eigenvalues().minCoeff() < 1e-12 * std::max(es.eigenvalues().maxCoeff(), 1e-300)) {
      // probability-zero event; redraw
      std::cerr << "stiefel_uniform: numerically singular Gram matrix, resampling\n";
      continue;
    }
    MatrixXcd x = sym_pow(w, -0.5) * g;
    return MatrixSample{MatShape(m, n), beta, std::move(x), "stiefel", seed};
  }
  throw std::runtime_error("stiefel_uniform: persistent singular Gram matrix");
}

Eigen::MatrixXcd matrix_beta_sample(int m, int n, FieldParam beta, RngStream& rng) {
  if (m > n) throw std::domain_error("matrix_beta_sample: requires m <= n");
  MatrixXcd g = gaussian_block(m, n, beta, rng);
  MatrixXcd h = gaussian_block(m, beta_second_dim(m, beta), beta, rng);
  MatrixXcd gg = g * g.adjoint();
  MatrixXcd s_inv_half = sym_pow(gg + h * h.adjoint(), -0.5);
  MatrixXcd r = s_inv_half * gg * s_inv_half;
  return (r + r.adjoint()) / 2.0;  // keep exactly self-adjoint
}

MatrixSample schatten_inf_ball_uniform(MatShape shape, FieldParam beta, RngStream& rng) {
  const SeedRecord seed{rng.master_seed(), rng.stream()};
  MatrixXcd r = matrix_beta_sample(shape.m, shape.n, beta, rng);
  MatrixSample u = stiefel_uniform(shape.n, shape.m, beta, rng);
  MatrixSample out{shape, beta, sym_pow(r, 0.5) * u.entries, "inf_ball", seed};
  return out;
}

std::vector<Eigen::MatrixXcd> dirichlet_matrix_sample(int m, int d, FieldParam beta,
                                                      RngStream& rng) {
  if (m < 1 || d < 1) throw std::domain_error("dirichlet_matrix_sample: m, d >= 1 required");
  std::vector<MatrixXcd> gram(d);
  MatrixXcd total = MatrixXcd::Zero(m, m);
  for (int i = 0; i < d; ++i) {
    MatrixXcd g = gaussian_block(m, m, beta, rng);
    gram[i] = g * g.adjoint();
    total += gram[i];
  }
  MatrixXcd tail = gaussian_block(m, beta_second_dim(m, beta), beta, rng);
  total += tail * tail.adjoint();
  MatrixXcd s_inv_half = sym_pow(total, -0.5);
  std::vector<MatrixXcd> out(d);
  for (int i = 0; i < d; ++i) {
    MatrixXcd r = s_inv_half * gram[i] * s_inv_half;
    out[i] = (r + r.adjoint()) / 2.0;
  }
  return out;
}

MatrixSample dirichlet_block_sample(int m, int d, FieldParam beta, RngStream& rng) {
  const SeedRecord seed{rng.master_seed(), rng.stream()};
  std::vector<MatrixXcd> blocks = dirichlet_matrix_sample(m, d, beta, rng);
  MatrixXcd x(m, d * m);
  for (int i = 0; i < d; ++i) {
    MatrixXcd u = haar_unitary(m, beta, rng);
    x.middleCols(i * m, m) = sym_pow(blocks[i], 0.5) * u;
  }
  return MatrixSample{MatShape(m, d * m), beta, std::move(x), "dirichlet_block", seed};
}

// ---------------------------------------------------------------------------
// squared-singular-value chain

SvSquaredChain::SvSquaredChain(MatShape shape, FieldParam beta, SchattenIndex p,
                               McmcConfig cfg, RngStream rng)
    : shape_(shape), beta_(beta), p_(p), cfg_(cfg), rng_(rng) {
  cfg_.validate();
  const int m = shape_.m;
  state_.resize(cfg_.chains);
  steps_.resize(cfg_.chains);
  hist_sum_.resize(cfg_.chains);
  hist_max_.resize(cfg_.chains);
  for (int k = 0; k < cfg_.chains; ++k) {
    // overdispersed ramps within the support; spread shrinks with the chain index
    const double cap = p_.is_inf() ? 1.0 : 1.5;
    const double spread = cap / (1.0 + 0.5 * k);
    state_[k].resize(m);
    for (int i = 0; i < m; ++i)
      state_[k][i] = spread * (i + 0.5 + 0.2 * rng_.uniform01()) / (m + 1.0);
    steps_[k].assign(m, cfg_.step_scale);
  }
  for (int it = 0; it < cfg_.burn_in; ++it)
    for (int k = 0; k < cfg_.chains; ++k) sweep(state_[k], steps_[k], true);
  accepted_ = proposed_ = 0;
  // short calibration run so the split-chain diagnostic has data before the
  // first draw is handed out
  for (int it = 0; it < 16; ++it) {
    for (int k = 0; k < cfg_.chains; ++k) {
      for (int t = 0; t < cfg_.thinning; ++t) sweep(state_[k], steps_[k], false);
      hist_sum_[k].push_back(std::accumulate(state_[k].begin(), state_[k].end(), 0.0));
      hist_max_[k].push_back(*std::max_element(state_[k].begin(), state_[k].end()));
    }
  }
}

double SvSquaredChain::log_density_term(const std::vector<double>& y, int i, double yi) const {
  const double b = beta_.beta;
  const double a = b * (shape_.n - shape_.m + 1) / 2.0;
  if (yi <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p_.is_inf() && yi > 1.0) return -std::numeric_limits<double>::infinity();
  double lp = (a - 1.0) * std::log(yi);
  if (!p_.is_inf()) lp -= b * shape_.n * std::pow(yi, p_.p / 2.0);
  for (size_t j = 0; j < y.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    const double d = std::abs(yi - y[j]);
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    lp += b * std::log(d);
  }
  return lp;
}

void SvSquaredChain::sweep(std::vector<double>& y, std::vector<double>& steps, bool adapt) {
  const int m = shape_.m;
  for (int i = 0; i < m; ++i) {
    const double yi = y[i];
    double yprop, log_jac;
    if (p_.is_inf()) {
      // random walk on logit y, Jacobian y(1-y)
      const double z = std::log(yi) - std::log1p(-yi);
      const double zp = z + steps[i] * rng_.normal();
      yprop = 1.0 / (1.0 + std::exp(-zp));
      log_jac = std::log(yprop) + std::log1p(-yprop) - std::log(yi) - std::log1p(-yi);
    } else {
      // random walk on log y, Jacobian y
      const double zp = std::log(yi) + steps[i] * rng_.normal();
      yprop = std::exp(zp);
      log_jac = zp - std::log(yi);
    }
    const double delta =
        log_density_term(y, i, yprop) - log_density_term(y, i, yi) + log_jac;
    ++proposed_;
    bool accept = false;
    if (delta >= 0.0) {
      accept = true;
    } else if (std::isfinite(delta)) {
      accept = std::log(rng_.uniform01()) < delta;
    }
    if (accept) {
      y[i] = yprop;
      ++accepted_;
    }
    if (adapt) {
      // nudge each step toward the 30-45% acceptance band
      steps[i] *= accept ? 1.08 : 0.96;
      steps[i] = std::clamp(steps[i], 1e-4, 20.0);
    }
  }
}

std::vector<double> SvSquaredChain::next() {
  for (int k = 0; k < cfg_.chains; ++k) {
    for (int t = 0; t < cfg_.thinning; ++t) sweep(state_[k], steps_[k], false);
    if (hist_sum_[k].size() < 4096) {
      hist_sum_[k].push_back(std::accumulate(state_[k].begin(), state_[k].end(), 0.0));
      hist_max_[k].push_back(*std::max_element(state_[k].begin(), state_[k].end()));
    }
  }
  draw_rotation_ = (draw_rotation_ + 1) % cfg_.chains;
  return state_[draw_rotation_];
}

double SvSquaredChain::acceptance_rate() const {
  return proposed_ == 0 ? 0.0 : static_cast<double>(accepted_) / proposed_;
}

double SvSquaredChain::psrf(const std::vector<std::vector<double>>& hist) const {
  // split each chain's history in half; R-hat across the segments
  std::vector<std::pair<double, double>> seg;  // (mean, var)
  size_t len = SIZE_MAX;
  for (const auto& h : hist) len = std::min(len, h.size());
  const size_t half = len / 2;
  if (half < 4) return std::numeric_limits<double>::infinity();
  for (const auto& h : hist) {
    for (int part = 0; part < 2; ++part) {
      const size_t lo = h.size() - (2 - part) * half;
      const size_t hi = lo + half;
      double mean = 0.0;
      for (size_t t = lo; t < hi; ++t) mean += h[t];
      mean /= half;
      double var = 0.0;
      for (size_t t = lo; t < hi; ++t) var += (h[t] - mean) * (h[t] - mean);
      var /= (half - 1);
      seg.emplace_back(mean, var);
    }
  }
  const double L = static_cast<double>(half);
  double w = 0.0, grand = 0.0;
  for (auto& [mu, v] : seg) {
    w += v;
    grand += mu;
  }
  w /= seg.size();
  grand /= seg.size();
  double b = 0.0;
  for (auto& [mu, v] : seg) b += (mu - grand) * (mu - grand);
  b = b * L / (seg.size() - 1);
  if (w <= 0.0) return 1.0;
  const double var_plus = (L - 1.0) / L * w + b / L;
  return std::sqrt(var_plus / w);
}

bool SvSquaredChain::converged() const {
  return psrf_sum() < 1.05 && psrf_max() < 1.05;
}

std::vector<double> sv_squared_mcmc(MatShape shape, FieldParam beta, SchattenIndex p,
                                    const McmcConfig& cfg, RngStream& rng) {
  SvSquaredChain chain(shape, beta, p, cfg, rng.substream(rng.next_u64()));
  return chain.next();
}

// ---------------------------------------------------------------------------
// Schatten-p ball / cone sampler

SchattenPSampler::SchattenPSampler(MatShape shape, FieldParam beta, SchattenIndex p,
                                   BallOrCone mode, McmcConfig cfg, RngStream rng)
    : shape_(shape),
      beta_(beta),
      p_(p),
      mode_(mode),
      seed_{rng.master_seed(), rng.stream()},
      chain_(shape, beta, p, cfg, rng.substream(1)),
      unitary_rng_(rng.substream(2)),
      radial_rng_(rng.substream(3)) {}

bool SchattenPSampler::mcmc_converged() const { return chain_.converged(); }

MatrixSample SchattenPSampler::next() {
  const int m = shape_.m, n = shape_.n;
  std::vector<double> y = chain_.next();
  MatrixXcd v = haar_unitary(m, beta_, unitary_rng_);
  // only the first m columns of the right Haar unitary enter the product,
  // and that block is exactly a uniform Stiefel point
  MatrixXcd u_rows = stiefel_uniform(n, m, beta_, unitary_rng_).entries;  // m x n

  const bool direct_inf_ball = p_.is_inf() && mode_ == BallOrCone::ball;
  double norm_scale = 1.0;
  if (!direct_inf_ball) {
    if (p_.is_inf()) {
      norm_scale = std::sqrt(*std::max_element(y.begin(), y.end()));
    } else {
      double acc = 0.0;
      for (double yi : y) acc += std::pow(yi, p_.p / 2.0);
      norm_scale = std::pow(acc, 1.0 / p_.p);  // ||y||_{p/2}^{1/2}
    }
  }
  double radial = 1.0;
  if (mode_ == BallOrCone::ball && !direct_inf_ball) {
    radial = std::pow(radial_rng_.uniform01(), 1.0 / (beta_.beta * m * n));
  }

  Eigen::VectorXcd diag(m);
  for (int i = 0; i < m; ++i) diag(i) = radial * std::sqrt(y[i]) / norm_scale;
  MatrixSample out{shape_, beta_, v * diag.asDiagonal() * u_rows,
                   mode_ == BallOrCone::ball ? "p_ball" : "p_cone", seed_};
  out.mcmc_converged = chain_.converged();
  return out;
}

MatrixSample schatten_p_sample(MatShape shape, FieldParam beta, SchattenIndex p,
                               BallOrCone mode, RngStream& rng, const McmcConfig& cfg) {
  SchattenPSampler sampler(shape, beta, p, mode, cfg, rng.substream(rng.next_u64()));
  return sampler.next();
}

MatrixSample two_sided_invariant_sample(const std::vector<double>& spectrum, int n,
                                        FieldParam beta, RngStream& rng) {
  const int m = static_cast<int>(spectrum.size());
  if (m > n) throw std::domain_error("two_sided_invariant_sample: spectrum longer than n");
  for (double s : spectrum)
    if (s < 0.0) throw std::domain_error("two_sided_invariant_sample: negative spectrum entry");
  const SeedRecord seed{rng.master_seed(), rng.stream()};
  MatrixXcd v = haar_unitary(m, beta, rng);
  MatrixXcd u = haar_unitary(n, beta, rng);
  MatrixXcd diag = MatrixXcd::Zero(m, n);
  for (int i = 0; i < m; ++i) diag(i, i) = spectrum[i];
  return MatrixSample{MatShape(m, n), beta, v * diag * u.adjoint(), "two_sided_invariant",
                      seed};
}

void write_matrix_dump(const MatrixSample& s, std::ostream& os) {
  os << s.shape.m << ' ' << s.shape.n << ' ' << s.beta.beta << ' '
     << (s.label.empty() ? "unlabeled" : s.label) << ' ' << s.seed.master_seed << '\n';
  os.precision(17);
  for (int i = 0; i < s.shape.m; ++i) {
    for (int j = 0; j < s.shape.n; ++j) {
      if (j) os << ' ';
      if (s.beta.beta == 1)
        os << s.entries(i, j).real();
      else
        os << s.entries(i, j).real() << ',' << s.entries(i, j).imag();
    }
    os << '\n';
  }
}

MatrixSample read_matrix_dump(std::istream& is) {
  int m, n, beta;
  std::string label;
  std::uint64_t seed;
  if (!(is >> m >> n >> beta >> label >> seed))
    throw std::runtime_error("read_matrix_dump: malformed header");
  FieldParam fp(beta);
  MatrixSample s{MatShape(m, n), fp, Eigen::MatrixXcd::Zero(m, n), label, {seed, 0}};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      std::string tok;
      if (!(is >> tok)) throw std::runtime_error("read_matrix_dump: truncated entries");
      const auto comma = tok.find(',');
      if (comma == std::string::npos) {
        s.entries(i, j) = std::stod(tok);
      } else {
        s.entries(i, j) = std::complex<double>(std::stod(tok.substr(0, comma)),
                                               std::stod(tok.substr(comma + 1)));
      }
    }
  return s;
}

}  // namespace schatten
