#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "schatten/sampling.hpp"
#include "schatten/spectral.hpp"

using namespace schatten;

TEST_CASE("gaussian_matrix moments and determinism") {
  for (int beta = 1; beta <= 2; ++beta) {
    RngStream rng(101, beta);
    double mean = 0.0, second = 0.0;
    const int draws = 100000;
    MatShape shape(1, 1);
    for (int i = 0; i < draws; ++i) {
      MatrixSample s = gaussian_matrix(shape, FieldParam(beta), rng);
      mean += s.entries(0, 0).real();
      second += std::norm(s.entries(0, 0));
    }
    CHECK(std::abs(mean / draws) <= 0.02);
    CHECK(second / draws == doctest::Approx(1.0).epsilon(0.02));
  }

  RngStream a(42, 7), b(42, 7);
  MatrixSample s1 = gaussian_matrix(MatShape(3, 5), FieldParam(2), a);
  MatrixSample s2 = gaussian_matrix(MatShape(3, 5), FieldParam(2), b);
  CHECK(s1.entries == s2.entries);
  RngStream c(42, 8);
  MatrixSample s3 = gaussian_matrix(MatShape(3, 5), FieldParam(2), c);
  CHECK(s1.entries != s3.entries);
}

TEST_CASE("stiefel_uniform orthonormal rows and sign law") {
  RngStream rng(5);
  for (int beta = 1; beta <= 2; ++beta) {
    for (int t = 0; t < 20; ++t) {
      MatrixSample s = stiefel_uniform(6, 3, FieldParam(beta), rng);
      Eigen::MatrixXcd gram = s.entries * s.entries.adjoint();
      CHECK((gram - Eigen::MatrixXcd::Identity(3, 3)).norm() <= 1e-10);
      CHECK(s.label == "stiefel");
    }
  }

  // O(1) = {-1, +1} with equal probability
  RngStream r1(6);
  int plus = 0;
  for (int t = 0; t < 10000; ++t) {
    MatrixSample s = stiefel_uniform(1, 1, FieldParam(1), r1);
    const double v = s.entries(0, 0).real();
    CHECK(std::abs(std::abs(v) - 1.0) <= 1e-12);
    if (v > 0) ++plus;
  }
  CHECK(plus / 10000.0 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("stiefel_uniform rotation invariance (two-sample KS)") {
  RngStream rng(7);
  Eigen::MatrixXcd rot = haar_unitary(4, FieldParam(1), rng);
  std::vector<double> plain, rotated;
  for (int t = 0; t < 10000; ++t) {
    MatrixSample s = stiefel_uniform(4, 2, FieldParam(1), rng);
    plain.push_back(s.entries(0, 0).real());
    rotated.push_back((s.entries * rot)(0, 0).real());
  }
  const double d = ks_distance_two_sample(empirical_measure_from_values(plain),
                                          empirical_measure_from_values(rotated));
  CHECK(d <= 0.02);
}

TEST_CASE("matrix_beta_sample") {
  RngStream rng(11);
  // Loewner constraint 0 < R < I on every draw
  for (int t = 0; t < 200; ++t) {
    Eigen::MatrixXcd r = matrix_beta_sample(2, 4, FieldParam(t % 2 + 1), rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(es.eigenvalues().maxCoeff() < 1.0);
  }

  // scalar marginals: Beta(1/2, 1) at (m, n, beta) = (1, 1, 1), Beta(2, 1) at (1, 2, 2)
  RngStream r2(13);
  double mean1 = 0.0, mean2 = 0.0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t)
    mean1 += matrix_beta_sample(1, 1, FieldParam(1), r2)(0, 0).real();
  for (int t = 0; t < draws; ++t)
    mean2 += matrix_beta_sample(1, 2, FieldParam(2), r2)(0, 0).real();
  CHECK(mean1 / draws == doctest::Approx(1.0 / 3.0).epsilon(0.03));
  CHECK(mean2 / draws == doctest::Approx(2.0 / 3.0).epsilon(0.015));
}

TEST_CASE("schatten_inf_ball_uniform") {
  RngStream rng(17);
  for (int t = 0; t < 100; ++t) {
    MatrixSample s = schatten_inf_ball_uniform(MatShape(2, 3), FieldParam(t % 2 + 1), rng);
    CHECK(schatten_norm(s.entries, SchattenIndex::inf()) <= 1.0 + 1e-12);
  }

  // m = n = 1: uniform on [-1, 1]
  RngStream r2(19);
  std::vector<double> draws(10000);
  for (auto& d : draws)
    d = schatten_inf_ball_uniform(MatShape(1, 1), FieldParam(1), r2).entries(0, 0).real();
  const double ks = ks_distance(empirical_measure_from_values(draws),
                                [](double x) { return std::clamp((x + 1.0) / 2.0, 0.0, 1.0); });
  CHECK(ks <= 0.02);

  // m = 1, n = 2: uniform disk, E||X||^2 = 1/2 = second_moment_ratio(1,2,1)
  RngStream r3(23);
  double acc = 0.0;
  const int n_draws = 50000;
  for (int t = 0; t < n_draws; ++t) {
    MatrixSample s = schatten_inf_ball_uniform(MatShape(1, 2), FieldParam(1), r3);
    acc += s.entries.squaredNorm();
  }
  CHECK(acc / n_draws == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("dirichlet_block_sample") {
  RngStream rng(29);
  // sum R_i < I on every draw
  for (int t = 0; t < 100; ++t) {
    auto blocks = dirichlet_matrix_sample(2, 3, FieldParam(t % 2 + 1), rng);
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(2, 2);
    for (const auto& b : blocks) total += b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd::Identity(2, 2) - total);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }

  // scalar Dirichlet(1/2, 1/2; 1): E[R_1] = (1/2) / 2 = 1/4
  RngStream r2(31);
  double acc = 0.0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t)
    acc += dirichlet_matrix_sample(1, 2, FieldParam(1), r2)[0](0, 0).real();
  CHECK(acc / draws == doctest::Approx(0.25).epsilon(0.04));

  // concatenated blocks agree with the direct ball sampler, both in the law
  // of s1 and of the Frobenius norm
  RngStream r3(37);
  std::vector<double> via_dirichlet, via_ball, fro_dirichlet, fro_ball;
  for (int t = 0; t < 10000; ++t) {
    MatrixSample d = dirichlet_block_sample(2, 2, FieldParam(1), r3);
    via_dirichlet.push_back(schatten_norm(d.entries, SchattenIndex::inf()));
    fro_dirichlet.push_back(d.entries.norm());
    MatrixSample b = schatten_inf_ball_uniform(MatShape(2, 4), FieldParam(1), r3);
    via_ball.push_back(schatten_norm(b.entries, SchattenIndex::inf()));
    fro_ball.push_back(b.entries.norm());
  }
  CHECK(ks_distance_two_sample(empirical_measure_from_values(via_dirichlet),
                               empirical_measure_from_values(via_ball)) <= 0.03);
  CHECK(ks_distance_two_sample(empirical_measure_from_values(fro_dirichlet),
                               empirical_measure_from_values(fro_ball)) <= 0.03);
}

TEST_CASE("ball sampler law is invariant under fixed rotations") {
  RngStream rng(91);
  Eigen::MatrixXcd v = haar_unitary(2, FieldParam(1), rng);
  Eigen::MatrixXcd u = haar_unitary(3, FieldParam(1), rng);
  std::vector<double> plain, rotated;
  for (int t = 0; t < 10000; ++t) {
    MatrixSample x = schatten_inf_ball_uniform(MatShape(2, 3), FieldParam(1), rng);
    plain.push_back(x.entries(0, 0).real());
    rotated.push_back((v * x.entries * u)(0, 0).real());
  }
  CHECK(ks_distance_two_sample(empirical_measure_from_values(plain),
                               empirical_measure_from_values(rotated)) <= 0.03);
}

TEST_CASE("sv_squared_mcmc scalar target") {
  // m = 1, p = inf: density ~ y^{beta n/2 - 1} on [0,1], mean (bn/2)/(bn/2+1)
  for (int beta = 1; beta <= 2; ++beta) {
    const int n = 6;
    McmcConfig cfg;
    cfg.burn_in = 300;
    cfg.thinning = 5;
    RngStream rng(41, beta);
    SvSquaredChain chain(MatShape(1, n), FieldParam(beta), SchattenIndex::inf(), cfg, rng);
    double acc = 0.0;
    const int draws = 20000;
    for (int t = 0; t < draws; ++t) acc += chain.next()[0];
    const double want = (beta * n / 2.0) / (beta * n / 2.0 + 1.0);
    CHECK(acc / draws == doctest::Approx(want).epsilon(0.012));
    CHECK(chain.converged());
    // adaptation leaves the sampling-phase acceptance near the 30-45% band
    CHECK(chain.acceptance_rate() >= 0.20);
    CHECK(chain.acceptance_rate() <= 0.60);
  }
}

TEST_CASE("sv_squared_mcmc matches the Wishart-eigenvalue oracle at p = 2") {
  const int m = 3, n = 6;
  McmcConfig cfg;
  cfg.burn_in = 400;
  cfg.thinning = 8;
  RngStream rng(43);
  SvSquaredChain chain(MatShape(m, n), FieldParam(1), SchattenIndex(2.0), cfg, rng);
  std::vector<double> chain_pool, oracle_pool;
  const int draws = 1500;
  for (int t = 0; t < draws; ++t) {
    auto y = chain.next();
    chain_pool.insert(chain_pool.end(), y.begin(), y.end());
  }
  RngStream r2(47);
  for (int t = 0; t < draws; ++t) {
    MatrixSample g = gaussian_matrix(MatShape(m, n), FieldParam(1), r2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.entries * g.entries.adjoint());
    for (int i = 0; i < m; ++i) oracle_pool.push_back(es.eigenvalues()[i] / (2.0 * n));
  }
  const double d = ks_distance_two_sample(empirical_measure_from_values(chain_pool),
                                          empirical_measure_from_values(oracle_pool));
  CHECK(d <= 0.05);
}

TEST_CASE("sv_squared_mcmc seed-to-seed agreement of the sorted law") {
  const int m = 4, n = 8;
  McmcConfig cfg;
  cfg.burn_in = 300;
  cfg.thinning = 5;
  std::vector<double> p1, p2;
  for (int which = 0; which < 2; ++which) {
    RngStream rng(53 + which);
    SvSquaredChain chain(MatShape(m, n), FieldParam(1), SchattenIndex::inf(), cfg, rng);
    auto& pool = which == 0 ? p1 : p2;
    for (int t = 0; t < 2000; ++t) {
      auto y = chain.next();
      std::sort(y.begin(), y.end());
      pool.push_back(y.back());  // largest coordinate
    }
  }
  CHECK(ks_distance_two_sample(empirical_measure_from_values(p1),
                               empirical_measure_from_values(p2)) <= 0.05);
}

TEST_CASE("schatten_p_sample cone normalization and ball moments") {
  McmcConfig cfg;
  cfg.burn_in = 200;
  cfg.thinning = 3;

  // cone mode: exactly unit Schatten-p norm
  for (double p : {1.5, 2.0}) {
    RngStream rng(59);
    SchattenPSampler sampler(MatShape(2, 3), FieldParam(1), SchattenIndex(p),
                             BallOrCone::cone, cfg, rng);
    for (int t = 0; t < 50; ++t) {
      MatrixSample s = sampler.next();
      CHECK(schatten_norm(s.entries, SchattenIndex(p)) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  {
    RngStream rng(61);
    SchattenPSampler sampler(MatShape(2, 3), FieldParam(2), SchattenIndex::inf(),
                             BallOrCone::cone, cfg, rng);
    for (int t = 0; t < 50; ++t) {
      MatrixSample s = sampler.next();
      CHECK(schatten_norm(s.entries, SchattenIndex::inf()) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  // p = 2 ball: uniform in the Euclidean ball of dimension beta m n,
  // E||X||^2 = d/(d+2)
  {
    const int m = 2, n = 3, beta = 1;
    RngStream rng(67);
    SchattenPSampler sampler(MatShape(m, n), FieldParam(beta), SchattenIndex(2.0),
                             BallOrCone::ball, cfg, rng);
    double acc = 0.0;
    const int draws = 8000;
    for (int t = 0; t < draws; ++t) acc += sampler.next().entries.squaredNorm();
    const double d = beta * m * n;
    CHECK(acc / draws == doctest::Approx(d / (d + 2.0)).epsilon(0.01));
  }

  // p = inf ball (direct form) agrees with the exact beta-matrix sampler
  {
    RngStream rng(71);
    SchattenPSampler sampler(MatShape(2, 4), FieldParam(1), SchattenIndex::inf(),
                             BallOrCone::ball, cfg, rng);
    std::vector<double> via_mcmc, via_exact;
    RngStream r2(73);
    for (int t = 0; t < 3000; ++t) {
      via_mcmc.push_back(schatten_norm(sampler.next().entries, SchattenIndex::inf()));
      via_exact.push_back(schatten_norm(
          schatten_inf_ball_uniform(MatShape(2, 4), FieldParam(1), r2).entries,
          SchattenIndex::inf()));
    }
    CHECK(ks_distance_two_sample(empirical_measure_from_values(via_mcmc),
                                 empirical_measure_from_values(via_exact)) <= 0.04);
  }
}

TEST_CASE("two_sided_invariant_sample") {
  RngStream rng(79);
  const std::vector<double> spec = {2.5, 1.0, 0.25};
  MatrixSample s = two_sided_invariant_sample(spec, 5, FieldParam(2), rng);
  auto sv = singular_values(s.entries);
  CHECK(sv[0] == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(sv[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sv[2] == doctest::Approx(0.25).epsilon(1e-10));
  CHECK_THROWS_AS(two_sided_invariant_sample({1.0, -0.5}, 3, FieldParam(1), rng),
                  std::domain_error);
  CHECK_THROWS_AS(two_sided_invariant_sample({1.0, 1.0}, 1, FieldParam(1), rng),
                  std::domain_error);

  // invariance under a fixed left rotation: entrywise first moments vanish
  Eigen::MatrixXcd rot = haar_unitary(2, FieldParam(1), rng);
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(2, 3);
  const int draws = 20000;
  for (int t = 0; t < draws; ++t) {
    MatrixSample x = two_sided_invariant_sample({1.0, 0.5}, 3, FieldParam(1), rng);
    mean += (rot * x.entries).real();
  }
  CHECK((mean / draws).cwiseAbs().maxCoeff() <= 0.02);

  // all-ones spectrum gives the orthonormal-row law
  std::vector<double> a_pool, b_pool;
  for (int t = 0; t < 10000; ++t) {
    MatrixSample x = two_sided_invariant_sample({1.0, 1.0}, 4, FieldParam(1), rng);
    a_pool.push_back(x.entries(0, 0).real());
    b_pool.push_back(stiefel_uniform(4, 2, FieldParam(1), rng).entries(0, 0).real());
  }
  CHECK(ks_distance_two_sample(empirical_measure_from_values(a_pool),
                               empirical_measure_from_values(b_pool)) <= 0.03);
}

TEST_CASE("sampler determinism across identical streams") {
  McmcConfig cfg;
  cfg.burn_in = 50;
  cfg.thinning = 2;
  RngStream a(97, 3), b(97, 3);
  MatrixSample s1 = schatten_p_sample(MatShape(2, 3), FieldParam(2), SchattenIndex(2.5),
                                      BallOrCone::ball, a, cfg);
  MatrixSample s2 = schatten_p_sample(MatShape(2, 3), FieldParam(2), SchattenIndex(2.5),
                                      BallOrCone::ball, b, cfg);
  CHECK(s1.entries == s2.entries);

  RngStream c(97, 3), d(97, 3);
  CHECK(schatten_inf_ball_uniform(MatShape(3, 4), FieldParam(1), c).entries ==
        schatten_inf_ball_uniform(MatShape(3, 4), FieldParam(1), d).entries);
}

TEST_CASE("matrix dump round trip") {
  RngStream rng(83);
  for (int beta = 1; beta <= 2; ++beta) {
    MatrixSample s = gaussian_matrix(MatShape(2, 3), FieldParam(beta), rng);
    std::stringstream ss;
    write_matrix_dump(s, ss);
    MatrixSample back = read_matrix_dump(ss);
    CHECK(back.shape.m == 2);
    CHECK(back.shape.n == 3);
    CHECK(back.beta.beta == beta);
    CHECK(back.label == "gaussian");
    CHECK((back.entries - s.entries).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("mcmc stationarity: doubling burn-in leaves the law unchanged") {
  const int m = 3, n = 7;
  std::vector<double> short_burn, long_burn;
  for (int which = 0; which < 2; ++which) {
    McmcConfig cfg;
    cfg.burn_in = which == 0 ? 300 : 600;
    cfg.thinning = 4;
    RngStream rng(89, which);
    SvSquaredChain chain(MatShape(m, n), FieldParam(1), SchattenIndex::inf(), cfg, rng);
    auto& pool = which == 0 ? short_burn : long_burn;
    for (int t = 0; t < 2000; ++t) {
      auto y = chain.next();
      pool.insert(pool.end(), y.begin(), y.end());
    }
  }
  CHECK(ks_distance_two_sample(empirical_measure_from_values(short_burn),
                               empirical_measure_from_values(long_burn)) <= 0.05);
}
