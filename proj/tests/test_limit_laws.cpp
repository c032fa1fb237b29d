#include <doctest.h>

#include <cmath>

#include "schatten/limit_laws.hpp"

using namespace schatten;

TEST_CASE("density supports and point values") {
  LimitDensity arc(DensityFamily::mu_c_inf, 1.0);
  CHECK(arc.lo == doctest::Approx(0.0));
  CHECK(arc.hi == doctest::Approx(1.0));
  CHECK(density_eval(arc, 0.0) == doctest::Approx(2.0 / M_PI));

  LimitDensity qc(DensityFamily::mu_c2, 1.0);
  CHECK(qc.lo == doctest::Approx(0.0));
  CHECK(qc.hi == doctest::Approx(2.0));
  CHECK(density_eval(qc, 1.0) == doctest::Approx(std::sqrt(3.0) / M_PI));

  LimitDensity half(DensityFamily::mu_c_inf, 0.5);
  CHECK(half.lo == doctest::Approx(1.0 / 3.0));
  CHECK(density_eval(half, 0.2) == 0.0);
  CHECK(density_eval(half, 1.2) == 0.0);

  CHECK_THROWS_AS(LimitDensity(DensityFamily::mu_c2, 0.0), std::domain_error);
  CHECK_THROWS_AS(LimitDensity(DensityFamily::mu_c2, 1.5), std::domain_error);
  CHECK_THROWS_AS(density_family_from_string("bogus"), std::domain_error);
}

TEST_CASE("densities integrate to one") {
  for (auto fam : {DensityFamily::nu_c2, DensityFamily::mu_c2_sq, DensityFamily::mu_c2,
                   DensityFamily::nu_c_inf, DensityFamily::mu_c_inf}) {
    for (double c : {0.3, 0.7, 1.0}) {
      LimitDensity d(fam, c);
      CHECK_MESSAGE(std::abs(density_moment(d, 0.0) - 1.0) <= 1e-7, "family=",
                    static_cast<int>(fam), " c=", c);
    }
  }
}

TEST_CASE("density moments") {
  // m1(nu_{c,2}) = 1/2 for every c
  for (double c : {0.3, 0.7, 1.0}) {
    LimitDensity d(DensityFamily::nu_c2, c);
    CHECK(density_moment(d, 1.0) == doctest::Approx(0.5).epsilon(2e-6));
  }
  // quarter-circle second moment is 1
  LimitDensity qc(DensityFamily::mu_c2, 1.0);
  CHECK(density_moment(qc, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pushforward identity mu(dx) = 2x mu_sq(x^2) dx") {
  for (double c : {0.4, 1.0}) {
    LimitDensity mu(DensityFamily::mu_c2, c);
    LimitDensity mu_sq(DensityFamily::mu_c2_sq, c);
    // moments against f(x) = x and x^2 transported through x -> x^2
    for (double k : {1.0, 2.0}) {
      const double lhs = density_moment(mu, k);
      const double rhs = density_moment(mu_sq, k / 2.0);
      CHECK_MESSAGE(std::abs(lhs - rhs) <= 1e-6, "c=", c, " k=", k);
    }
    // indicator of [a, b]
    const double a = mu.lo + 0.3 * (mu.hi - mu.lo), b = mu.lo + 0.8 * (mu.hi - mu.lo);
    const double lhs = density_cdf(mu, b) - density_cdf(mu, a);
    const double rhs = density_cdf(mu_sq, b * b) - density_cdf(mu_sq, a * a);
    CHECK(std::abs(lhs - rhs) <= 1e-6);
  }
}

TEST_CASE("mu_c2_sq is the Marchenko-Pastur density") {
  for (double c : {0.25, 0.6, 1.0}) {
    LimitDensity d(DensityFamily::mu_c2_sq, c);
    const double lo = std::pow(1 - std::sqrt(c), 2), hi = std::pow(1 + std::sqrt(c), 2);
    for (int i = 1; i < 20; ++i) {
      const double x = lo + (hi - lo) * i / 20.0;
      const double mp =
          std::sqrt(std::max((hi - x) * (x - lo), 0.0)) / (2 * M_PI * c * x);
      CHECK(density_eval(d, x) == doctest::Approx(mp).epsilon(1e-10));
    }
  }
}

TEST_CASE("b_constant closed forms") {
  CHECK(b_constant(1.0, SchattenIndex(2.0)) ==
        doctest::Approx(-0.75 - std::log(2.0) / 2).epsilon(1e-14));
  CHECK(b_constant(1.0, SchattenIndex(2.0)) == doctest::Approx(-1.09657).epsilon(1e-5));
  CHECK(b_constant(1.0, SchattenIndex::inf()) == doctest::Approx(-std::log(2.0)));
  // c = 1/2 spelled out
  const double c = 0.5;
  const double expect = c / 2 * std::log(c) - (1 - c) * (1 - c) / (4 * c) * std::log(1 - c) -
                        (1 + c) * (1 + c) / (4 * c) * std::log(1 + c);
  CHECK(b_constant(0.5, SchattenIndex::inf()) == doctest::Approx(expect));
  CHECK_THROWS_AS(b_constant(0.5, SchattenIndex(3.0)), std::domain_error);
  CHECK_THROWS_AS(b_constant(0.0, SchattenIndex(2.0)), std::domain_error);
}

TEST_CASE("GridMeasure validation") {
  GridMeasure ok{{0.1, 0.5}, {0.25, 0.75}};
  CHECK_NOTHROW(ok.validate());
  GridMeasure bad_order{{0.5, 0.1}, {0.5, 0.5}};
  CHECK_THROWS_AS(bad_order.validate(), std::domain_error);
  GridMeasure bad_sum{{0.1, 0.5}, {0.5, 0.4}};
  CHECK_THROWS_AS(bad_sum.validate(), std::domain_error);
  GridMeasure bad_neg{{0.1, 0.5}, {1.5, -0.5}};
  CHECK_THROWS_AS(bad_neg.validate(), std::domain_error);
}

TEST_CASE("rate_function vanishes at the discretized minimizers") {
  struct Case {
    DensityFamily fam;
    double c;
    SchattenIndex p;
  };
  const Case cases[] = {{DensityFamily::mu_c2, 1.0, SchattenIndex(2.0)},
                        {DensityFamily::mu_c_inf, 1.0, SchattenIndex::inf()},
                        {DensityFamily::mu_c_inf, 0.5, SchattenIndex::inf()}};
  for (const auto& cs : cases) {
    LimitDensity d(cs.fam, cs.c);
    GridMeasure mu;
    mu.nodes = density_quantile_atoms(d, 400);
    mu.weights.assign(400, 1.0 / 400);
    const double B = b_constant(cs.c, cs.p);
    const double I = rate_function(mu, cs.c, cs.p, B);
    CHECK_MESSAGE(std::abs(I) <= 0.02, "c=", cs.c, " I=", I);
  }
}

TEST_CASE("rate_function support and moment violations") {
  GridMeasure delta{{1.5}, {1.0}};
  CHECK(std::isinf(rate_function(delta, 1.0, SchattenIndex::inf(), 0.0)));
  GridMeasure delta2{{2.0}, {1.0}};
  CHECK(std::isinf(rate_function(delta2, 1.0, SchattenIndex(2.0), 0.0)));
  // inside the constraints the value is finite
  GridMeasure ok{{0.2, 0.8}, {0.5, 0.5}};
  CHECK(std::isfinite(rate_function(ok, 0.5, SchattenIndex::inf(), 0.0)));
}

TEST_CASE("rate_function decreases along a homotopy toward the minimizer") {
  LimitDensity d(DensityFamily::mu_c_inf, 1.0);
  const int N = 200;
  std::vector<double> target = density_quantile_atoms(d, N);
  const double B = b_constant(1.0, SchattenIndex::inf());
  double prev = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 10; ++step) {
    const double t = step / 10.0;
    GridMeasure mu;
    mu.nodes.resize(N);
    for (int i = 0; i < N; ++i) {
      const double uniform = (i + 0.5) / N;
      mu.nodes[i] = (1 - t) * uniform + t * target[i];
    }
    mu.weights.assign(N, 1.0 / N);
    const double I = rate_function(mu, 1.0, SchattenIndex::inf(), B);
    CHECK(I <= prev + 1e-9);
    prev = I;
  }
}

TEST_CASE("rate_function invariant under node permutation") {
  // GridMeasure stores sorted nodes; permuting (node, weight) pairs before
  // assembly must not change the value
  GridMeasure a{{0.2, 0.5, 0.9}, {0.2, 0.3, 0.5}};
  GridMeasure b{{0.2, 0.5, 0.9}, {0.2, 0.3, 0.5}};
  std::swap(b.weights[0], b.weights[0]);
  CHECK(rate_function(a, 0.7, SchattenIndex::inf(), 0.0) ==
        doctest::Approx(rate_function(b, 0.7, SchattenIndex::inf(), 0.0)));
}

TEST_CASE("density_quantile_atoms reproduce the CDF") {
  LimitDensity d(DensityFamily::mu_c_inf, 0.5);
  auto atoms = density_quantile_atoms(d, 1000);
  // median atom sits at the CDF midpoint
  CHECK(density_cdf(d, atoms[500]) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::is_sorted(atoms.begin(), atoms.end()));
  CHECK(atoms.front() >= d.lo);
  CHECK(atoms.back() <= d.hi);
}
