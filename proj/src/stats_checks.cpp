#include "schatten/stats_checks.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "schatten/spectral.hpp"

namespace schatten {

namespace {

using json = nlohmann::json;

// sampling error scale of a one-sample Kolmogorov statistic at N points
double ks_mc_error(double n_points) { return 0.26 / std::sqrt(std::max(n_points, 1.0)); }

void require_ascending(const std::vector<int>& n_list, const char* who) {
  if (n_list.empty()) throw std::domain_error(std::string(who) + ": empty n_list");
  for (size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::domain_error(std::string(who) + ": n_list must be strictly increasing");
}

bool final_and_monotone(const std::vector<double>& dist, const std::vector<double>& errs,
                        double threshold) {
  for (size_t i = 0; i + 1 < dist.size(); ++i)
    if (dist[i + 1] > dist[i] + 2.0 * (errs[i] + errs[i + 1])) return false;
  return dist.back() <= threshold;
}

// run fn(i) for i in [0, count), optionally on a small thread pool; results
// are assembled by index so the outcome is independent of scheduling
template <typename Fn>
void run_indexed(int count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futs;
  futs.reserve(count);
  for (int i = 0; i < count; ++i) futs.push_back(std::async(std::launch::async, fn, i));
  for (auto& f : futs) f.get();
}

MatrixSample draw_uniform_family(UniformFamily dist, int m, int n, FieldParam beta,
                                 RngStream& rng, SchattenPSampler* cone_sampler) {
  switch (dist) {
    case UniformFamily::ball:
      return schatten_inf_ball_uniform(MatShape(m, n), beta, rng);
    case UniformFamily::sphere:
      return cone_sampler->next();
    case UniformFamily::stiefel:
      return stiefel_uniform(n, m, beta, rng);
  }
  throw std::logic_error("unreachable");
}

double pooled_gaussian_ks(const std::vector<double>& pool) {
  EmpiricalMeasure emp = empirical_measure_from_values(pool);
  return ks_distance(emp, [](double x) { return standard_normal_cdf(x); });
}

void push_components(std::vector<double>& pool, const Eigen::MatrixXcd& x, double scale,
                     int beta) {
  const double sb = std::sqrt(static_cast<double>(beta));
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) {
      pool.push_back(scale * sb * x(i, j).real());
      if (beta == 2) pool.push_back(scale * sb * x(i, j).imag());
    }
}

}  // namespace

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::string CheckReport::to_json() const {
  json j;
  j["name"] = name;
  j["sample_count"] = sample_count;
  json stats = json::object();
  for (const auto& [k, v] : statistics) stats[k] = v;
  j["statistics"] = stats;
  j["threshold"] = threshold;
  j["pass"] = pass;
  j["seed"] = seed;
  j["threshold_provenance"] = threshold_provenance;
  return j.dump();
}

UniformFamily uniform_family_from_string(const std::string& s) {
  if (s == "ball") return UniformFamily::ball;
  if (s == "sphere") return UniformFamily::sphere;
  if (s == "stiefel") return UniformFamily::stiefel;
  throw std::domain_error("unknown distribution family: " + s);
}

PolarSource polar_source_from_string(const std::string& s) {
  if (s == "gaussian") return PolarSource::gaussian;
  if (s == "inf_ball") return PolarSource::inf_ball;
  if (s == "control") return PolarSource::dependent_control;
  throw std::domain_error("unknown polar source: " + s);
}

CheckReport pmb_check(int m, int k, const std::vector<int>& n_list, FieldParam beta,
                      UniformFamily dist, int samples, RngStream& rng, double threshold,
                      int threads) {
  require_ascending(n_list, "pmb_check");
  for (int n : n_list)
    if (k > n || m > n) throw std::domain_error("pmb_check: need k <= n and m <= n");

  std::vector<double> dists(n_list.size()), errs(n_list.size());
  run_indexed(static_cast<int>(n_list.size()), threads, [&](int idx) {
    const int n = n_list[idx];
    RngStream local = rng.substream(idx);
    std::unique_ptr<SchattenPSampler> cone;
    if (dist == UniformFamily::sphere)
      cone = std::make_unique<SchattenPSampler>(MatShape(m, n), beta, SchattenIndex::inf(),
                                                BallOrCone::cone, McmcConfig{},
                                                local.substream(9001));
    std::vector<double> pool;
    pool.reserve(static_cast<size_t>(samples) * m * k * beta.beta);
    const double scale = std::sqrt(static_cast<double>(n));
    for (int s = 0; s < samples; ++s) {
      MatrixSample x = draw_uniform_family(dist, m, n, beta, local, cone.get());
      push_components(pool, x.entries.leftCols(k), scale, beta.beta);
    }
    dists[idx] = pooled_gaussian_ks(pool);
    errs[idx] = ks_mc_error(static_cast<double>(pool.size()));
  });

  CheckReport rep;
  rep.name = "pmb";
  rep.sample_count = static_cast<long long>(samples) * n_list.size();
  for (size_t i = 0; i < n_list.size(); ++i)
    rep.statistics.emplace_back("ks_n" + std::to_string(n_list[i]), dists[i]);
  rep.threshold = threshold;
  rep.pass = final_and_monotone(dists, errs, threshold);
  rep.seed = rng.master_seed();
  rep.threshold_provenance =
      "final pooled KS <= threshold (DKW at pooled count); monotone within 2x Kolmogorov "
      "sampling error 0.26/sqrt(N)";
  return rep;
}

CheckReport clt_inner_product_check(int m, const std::vector<int>& n_list, FieldParam beta,
                                    UniformFamily dist, int samples, RngStream& rng,
                                    double threshold, int threads) {
  require_ascending(n_list, "clt_inner_product_check");
  std::vector<double> dists(n_list.size()), errs(n_list.size());
  std::vector<double> means(n_list.size());
  double matrix_ks = 0.0;

  run_indexed(static_cast<int>(n_list.size()), threads, [&](int idx) {
    const int n = n_list[idx];
    RngStream local = rng.substream(idx);
    std::unique_ptr<SchattenPSampler> cone;
    if (dist == UniformFamily::sphere)
      cone = std::make_unique<SchattenPSampler>(MatShape(m, n), beta, SchattenIndex::inf(),
                                                BallOrCone::cone, McmcConfig{},
                                                local.substream(9001));
    std::vector<double> scalar_pool;
    std::vector<double> matrix_pool;
    scalar_pool.reserve(samples);
    const bool largest = idx + 1 == static_cast<int>(n_list.size());
    for (int s = 0; s < samples; ++s) {
      MatrixSample x = draw_uniform_family(dist, m, n, beta, local, cone.get());
      MatrixSample y = draw_uniform_family(dist, m, n, beta, local, cone.get());
      const double inner = (x.entries.cwiseProduct(y.entries.conjugate())).sum().real();
      scalar_pool.push_back(std::sqrt(beta.beta * static_cast<double>(n) / m) * inner);
      if (largest)
        push_components(matrix_pool, (x.entries * y.entries.adjoint()).eval(),
                        std::sqrt(static_cast<double>(n)), beta.beta);
    }
    double mean = 0.0;
    for (double v : scalar_pool) mean += v;
    means[idx] = mean / samples;
    dists[idx] = pooled_gaussian_ks(scalar_pool);
    errs[idx] = ks_mc_error(static_cast<double>(scalar_pool.size()));
    if (largest) matrix_ks = pooled_gaussian_ks(matrix_pool);
  });

  CheckReport rep;
  rep.name = "clt_inner_product";
  rep.sample_count = static_cast<long long>(samples) * n_list.size();
  for (size_t i = 0; i < n_list.size(); ++i)
    rep.statistics.emplace_back("ks_n" + std::to_string(n_list[i]), dists[i]);
  rep.statistics.emplace_back("matrix_ks", matrix_ks);
  rep.statistics.emplace_back("mean_final", means.back());
  rep.threshold = threshold;
  const double mean_tol = 3.0 / std::sqrt(static_cast<double>(samples));
  rep.pass = dists.back() <= threshold && matrix_ks <= threshold &&
             std::abs(means.back()) <= mean_tol;
  rep.seed = rng.master_seed();
  rep.threshold_provenance =
      "scalar and matrix pooled KS <= threshold at largest n (DKW); |mean| <= 3/sqrt(samples)";
  return rep;
}

CheckReport lln_check(double c, SchattenIndex p, const std::vector<int>& n_list,
                      FieldParam beta, BallOrCone dist, RngStream& rng, double threshold,
                      const McmcConfig& cfg, int threads) {
  require_ascending(n_list, "lln_check");
  if (!p.is_inf() && p.p != 2.0)
    throw std::domain_error("lln_check: closed-form limit only for p in {2, inf}");
  LimitDensity limit(p.is_inf() ? DensityFamily::mu_c_inf : DensityFamily::mu_c2, c);

  std::vector<double> dists(n_list.size()), errs(n_list.size());
  const int m_final = std::max(1, static_cast<int>(std::lround(c * n_list.back())));
  if (threshold <= 0.0) threshold = 2.0 / std::sqrt(static_cast<double>(m_final));

  run_indexed(static_cast<int>(n_list.size()), threads, [&](int idx) {
    const int n = n_list[idx];
    const int m = std::max(1, static_cast<int>(std::lround(c * n)));
    RngStream local = rng.substream(idx);
    MatrixSample x = [&]() {
      if (p.is_inf() && dist == BallOrCone::ball)
        return schatten_inf_ball_uniform(MatShape(m, n), beta, local);
      return schatten_p_sample(MatShape(m, n), beta, p, dist, local, cfg);
    }();
    EmpiricalMeasure emp = empirical_spectrum_measure(
        x.entries, p, p.is_inf() ? SpectrumScaling::none : SpectrumScaling::m_pow);
    dists[idx] = ks_distance(emp, [&](double t) { return density_cdf(limit, t); });
    errs[idx] = 1.0 / std::sqrt(static_cast<double>(m));
  });

  CheckReport rep;
  rep.name = "lln";
  rep.sample_count = static_cast<long long>(n_list.size());
  for (size_t i = 0; i < n_list.size(); ++i)
    rep.statistics.emplace_back("ks_n" + std::to_string(n_list[i]), dists[i]);
  rep.threshold = threshold;
  rep.pass = final_and_monotone(dists, errs, threshold);
  rep.seed = rng.master_seed();
  rep.threshold_provenance =
      "final single-sample KS <= threshold (default 2/sqrt(m)); monotone within 2x 1/sqrt(m)";
  return rep;
}

CheckReport polar_independence_check(MatShape shape, FieldParam beta, PolarSource source,
                                     int samples, RngStream& rng) {
  if (samples < 64) throw std::domain_error("polar_independence_check: samples >= 64 required");
  std::vector<double> t1(samples), t2(samples);
  RngStream local = rng.substream(0);
  for (int s = 0; s < samples; ++s) {
    Eigen::MatrixXcd x;
    switch (source) {
      case PolarSource::gaussian:
        x = gaussian_matrix(shape, beta, local).entries;
        break;
      case PolarSource::inf_ball:
        x = schatten_inf_ball_uniform(shape, beta, local).entries;
        break;
      case PolarSource::dependent_control: {
        // radial part tied to an entry of the polar factor; must be detected
        MatrixSample w = stiefel_uniform(shape.n, shape.m, beta, local);
        const double sc = 0.75 + 0.5 * w.entries(0, 0).real();
        x = sc * w.entries;
        break;
      }
    }
    Eigen::MatrixXcd gram = x * x.adjoint();
    t1[s] = gram.trace().real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(1e-14);
    Eigen::MatrixXcd inv_half = es.eigenvectors() *
                                ev.array().pow(-0.5).matrix().asDiagonal() *
                                es.eigenvectors().adjoint();
    t2[s] = (x.adjoint() * inv_half)(0, 0).real();
  }

  auto mean_of = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / v.size();
  };
  const double m1 = mean_of(t1), m2 = mean_of(t2);
  double c11 = 0.0, c22 = 0.0, c12 = 0.0;
  for (int s = 0; s < samples; ++s) {
    c11 += (t1[s] - m1) * (t1[s] - m1);
    c22 += (t2[s] - m2) * (t2[s] - m2);
    c12 += (t1[s] - m1) * (t2[s] - m2);
  }
  const double corr = c12 / std::sqrt(std::max(c11 * c22, 1e-300));
  const double corr_z = std::abs(corr) * std::sqrt(static_cast<double>(samples));

  // chi-square on 4x4 quantile bins
  auto quartiles = [&](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::array<double, 3>{v[v.size() / 4], v[v.size() / 2], v[3 * v.size() / 4]};
  };
  const auto q1 = quartiles(t1), q2 = quartiles(t2);
  auto bin = [](const std::array<double, 3>& q, double x) {
    return x <= q[0] ? 0 : x <= q[1] ? 1 : x <= q[2] ? 2 : 3;
  };
  std::array<std::array<double, 4>, 4> counts{};
  for (int s = 0; s < samples; ++s) counts[bin(q1, t1[s])][bin(q2, t2[s])] += 1.0;
  double chi2 = 0.0;
  const double expected = samples / 16.0;
  for (const auto& row : counts)
    for (double o : row) chi2 += (o - expected) * (o - expected) / expected;

  const double z_crit = 2.5758;   // two-sided 0.01
  const double chi_crit = 21.666; // chi-square, 9 dof, upper 0.01

  CheckReport rep;
  rep.name = "polar_independence";
  rep.sample_count = samples;
  rep.statistics = {{"corr", corr}, {"corr_z", corr_z}, {"chi2", chi2}};
  rep.threshold = chi_crit;
  rep.pass = corr_z <= z_crit && chi2 <= chi_crit;
  rep.seed = rng.master_seed();
  rep.threshold_provenance =
      "correlation z <= 2.5758 and 4x4 quantile-bin chi-square <= 21.666 (both at 0.01)";
  return rep;
}

}  // namespace schatten
