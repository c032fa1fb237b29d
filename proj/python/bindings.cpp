#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schatten/equilibrium.hpp"
#include "schatten/limit_laws.hpp"
#include "schatten/sampling.hpp"
#include "schatten/spectral.hpp"
#include "schatten/stats_checks.hpp"
#include "schatten/version.hpp"

namespace py = pybind11;
using namespace schatten;

namespace {

SchattenIndex to_index(double p) {
  return std::isinf(p) ? SchattenIndex::inf() : SchattenIndex(p);
}

py::dict solution_dict(const EqSolution& sol) {
  py::dict d;
  d["grid"] = sol.measure.nodes;
  d["weights"] = sol.measure.weights;
  d["energy"] = sol.energy;
  d["B"] = -sol.energy;
  d["endpoints"] = py::make_tuple(sol.endpoints.first, sol.endpoints.second);
  d["residual"] = sol.residual;
  d["iterations"] = sol.iterations;
  return d;
}

py::dict report_dict(const CheckReport& rep) {
  py::dict d;
  d["name"] = rep.name;
  d["sample_count"] = rep.sample_count;
  py::dict stats;
  for (const auto& [k, v] : rep.statistics) stats[py::str(k)] = v;
  d["statistics"] = stats;
  d["threshold"] = rep.threshold;
  d["pass"] = rep.pass;
  d["seed"] = rep.seed;
  d["threshold_provenance"] = rep.threshold_provenance;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact and asymptotic geometry, samplers and limit laws of "
            "rectangular Schatten-p balls";
  m.attr("__version__") = kVersion;

  // special functions
  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def(
      "multivariate_log_gamma",
      [](int mm, int beta, double z) { return multivariate_log_gamma(mm, FieldParam(beta), z); },
      py::arg("m"), py::arg("beta"), py::arg("z"));
  m.def(
      "stiefel_log_volume",
      [](int n, int mm, int beta) { return stiefel_log_volume(n, mm, FieldParam(beta)); },
      py::arg("n"), py::arg("m"), py::arg("beta"));
  m.def("selberg_log_integral", &selberg_log_integral, py::arg("m"), py::arg("a"),
        py::arg("b"), py::arg("g"));
  m.def(
      "gamma_product_log",
      [](int n, int beta, const std::string& mode) {
        return gamma_product_log(n, FieldParam(beta),
                                 mode == "exact" ? GammaProductMode::exact
                                                 : GammaProductMode::asymptotic);
      },
      py::arg("n"), py::arg("beta"), py::arg("mode") = "exact");
  m.def(
      "a_beta_constant", [](int beta) { return a_beta_constant(FieldParam(beta)); },
      py::arg("beta"));
  m.def("lp_ball_log_volume", &lp_ball_log_volume, py::arg("m"), py::arg("q"));

  // geometry
  m.def(
      "schatten_inf_log_volume",
      [](int mm, int n, int beta) {
        return schatten_inf_log_volume(MatShape(mm, n), FieldParam(beta)).log_mag;
      },
      py::arg("m"), py::arg("n"), py::arg("beta"));
  m.def(
      "volume_radius_limit_inf",
      [](double c, int beta) { return volume_radius_limit_inf(c, FieldParam(beta)); },
      py::arg("c"), py::arg("beta") = 1);
  m.def(
      "second_moment_ratio",
      [](int mm, int n, int beta) {
        const Rational r = second_moment_ratio(MatShape(mm, n), FieldParam(beta));
        return py::make_tuple(r.num, r.den);
      },
      py::arg("m"), py::arg("n"), py::arg("beta"));
  m.def(
      "isotropy_constant_sq",
      [](int mm, int n, int beta) {
        return isotropy_constant_sq(MatShape(mm, n), FieldParam(beta));
      },
      py::arg("m"), py::arg("n"), py::arg("beta"));
  m.def("isotropy_constant_sq_limit", &isotropy_constant_sq_limit, py::arg("c"));
  m.def(
      "cone_to_hausdorff_density",
      [](const Eigen::MatrixXcd& x, double p) {
        return cone_to_hausdorff_density(x, to_index(p));
      },
      py::arg("x"), py::arg("p"));
  m.def(
      "sphere_hausdorff_log_measure",
      [](int mm, int n, int beta, double p, py::object log_ball_volume) {
        std::optional<LogValue> lv;
        if (!log_ball_volume.is_none())
          lv = LogValue::from_log(log_ball_volume.cast<double>());
        return sphere_hausdorff_measure(MatShape(mm, n), FieldParam(beta), to_index(p), lv)
            .log_mag;
      },
      py::arg("m"), py::arg("n"), py::arg("beta"), py::arg("p"),
      py::arg("log_ball_volume") = py::none());
  m.def(
      "scaled_ball_log_volume",
      [](const std::vector<double>& r, int mm, int n, int beta) {
        return scaled_ball_log_volume(r, MatShape(mm, n), FieldParam(beta)).log_mag;
      },
      py::arg("r_singular_values"), py::arg("m"), py::arg("n"), py::arg("beta"));
  m.def(
      "scaled_stiefel_log_measure",
      [](const std::vector<double>& r, int mm, int n, int beta) {
        return scaled_stiefel_log_measure(r, MatShape(mm, n), FieldParam(beta)).log_mag;
      },
      py::arg("r_singular_values"), py::arg("m"), py::arg("n"), py::arg("beta"));
  m.def(
      "cone_measure_moment",
      [](int mm, double q, double alpha) { return cone_measure_moment(mm, q, alpha).log_mag; },
      py::arg("m"), py::arg("q"), py::arg("alpha"));
  m.def("schatten_p_volume_radius_asymptotic", &schatten_p_volume_radius_asymptotic,
        py::arg("c"), py::arg("p"), py::arg("B"));

  // sampling
  m.def(
      "gaussian_matrix",
      [](int mm, int n, int beta, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return gaussian_matrix(MatShape(mm, n), FieldParam(beta), rng).entries;
      },
      py::arg("m"), py::arg("n"), py::arg("beta"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "stiefel_uniform",
      [](int n, int mm, int beta, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return stiefel_uniform(n, mm, FieldParam(beta), rng).entries;
      },
      py::arg("n"), py::arg("m"), py::arg("beta"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "matrix_beta_sample",
      [](int mm, int n, int beta, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return matrix_beta_sample(mm, n, FieldParam(beta), rng);
      },
      py::arg("m"), py::arg("n"), py::arg("beta"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "schatten_inf_ball_uniform",
      [](int mm, int n, int beta, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return schatten_inf_ball_uniform(MatShape(mm, n), FieldParam(beta), rng).entries;
      },
      py::arg("m"), py::arg("n"), py::arg("beta"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "dirichlet_block_sample",
      [](int mm, int d, int beta, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return dirichlet_block_sample(mm, d, FieldParam(beta), rng).entries;
      },
      py::arg("m"), py::arg("d"), py::arg("beta"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "sv_squared_mcmc",
      [](int mm, int n, int beta, double p, int burn_in, int thinning, int count,
         std::uint64_t seed) {
        McmcConfig cfg;
        cfg.burn_in = burn_in;
        cfg.thinning = thinning;
        SvSquaredChain chain(MatShape(mm, n), FieldParam(beta), to_index(p), cfg,
                             RngStream(seed));
        std::vector<std::vector<double>> out;
        out.reserve(count);
        for (int i = 0; i < count; ++i) out.push_back(chain.next());
        return py::make_tuple(out, chain.converged());
      },
      py::arg("m"), py::arg("n"), py::arg("beta"), py::arg("p"), py::arg("burn_in") = 500,
      py::arg("thinning") = 10, py::arg("count") = 1, py::arg("seed") = 0);
  m.def(
      "schatten_p_sample",
      [](int mm, int n, int beta, double p, const std::string& mode, int burn_in,
         int thinning, std::uint64_t seed) {
        McmcConfig cfg;
        cfg.burn_in = burn_in;
        cfg.thinning = thinning;
        RngStream rng(seed);
        return schatten_p_sample(MatShape(mm, n), FieldParam(beta), to_index(p),
                                 mode == "cone" ? BallOrCone::cone : BallOrCone::ball, rng,
                                 cfg)
            .entries;
      },
      py::arg("m"), py::arg("n"), py::arg("beta"), py::arg("p"), py::arg("mode") = "ball",
      py::arg("burn_in") = 500, py::arg("thinning") = 10, py::arg("seed") = 0);
  m.def(
      "two_sided_invariant_sample",
      [](const std::vector<double>& spectrum, int n, int beta, std::uint64_t seed) {
        RngStream rng(seed);
        return two_sided_invariant_sample(spectrum, n, FieldParam(beta), rng).entries;
      },
      py::arg("spectrum"), py::arg("n"), py::arg("beta"), py::arg("seed"));

  // spectral
  m.def(
      "singular_values",
      [](const Eigen::MatrixXcd& x) { return singular_values(x).values; }, py::arg("x"));
  m.def(
      "schatten_norm",
      [](const Eigen::MatrixXcd& x, double p) { return schatten_norm(x, to_index(p)); },
      py::arg("x"), py::arg("p"));
  m.def(
      "ks_distance",
      [](const std::vector<double>& values, const std::function<double(double)>& cdf) {
        return ks_distance(empirical_measure_from_values(values), cdf);
      },
      py::arg("values"), py::arg("cdf"));
  m.def(
      "wasserstein1",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return wasserstein1(empirical_measure_from_values(a),
                            empirical_measure_from_values(b));
      },
      py::arg("a"), py::arg("b"));

  // limit laws
  m.def(
      "density_eval",
      [](const std::string& family, double c, double x) {
        return density_eval(LimitDensity(density_family_from_string(family), c), x);
      },
      py::arg("family"), py::arg("c"), py::arg("x"));
  m.def(
      "density_moment",
      [](const std::string& family, double c, double k) {
        return density_moment(LimitDensity(density_family_from_string(family), c), k);
      },
      py::arg("family"), py::arg("c"), py::arg("k"));
  m.def(
      "density_cdf",
      [](const std::string& family, double c, double x) {
        return density_cdf(LimitDensity(density_family_from_string(family), c), x);
      },
      py::arg("family"), py::arg("c"), py::arg("x"));
  m.def(
      "density_support",
      [](const std::string& family, double c) {
        LimitDensity d(density_family_from_string(family), c);
        return py::make_tuple(d.lo, d.hi);
      },
      py::arg("family"), py::arg("c"));
  m.def(
      "b_constant", [](double c, double p) { return b_constant(c, to_index(p)); },
      py::arg("c"), py::arg("p"));
  m.def(
      "rate_function",
      [](const std::vector<double>& nodes, const std::vector<double>& weights, double c,
         double p, double B) {
        return rate_function(GridMeasure{nodes, weights}, c, to_index(p), B);
      },
      py::arg("nodes"), py::arg("weights"), py::arg("c"), py::arg("p"), py::arg("B"));

  // equilibrium
  m.def(
      "solve_equilibrium",
      [](double c, double p, int grid_size, double domain_cap) {
        return solution_dict(solve_equilibrium(EqProblem{c, to_index(p), grid_size, domain_cap}));
      },
      py::arg("c"), py::arg("p"), py::arg("grid_size") = 400, py::arg("domain_cap") = 0.0);
  m.def(
      "support_endpoints",
      [](double c, double p) {
        auto [a, b] = support_endpoints(c, p);
        return py::make_tuple(a, b);
      },
      py::arg("c"), py::arg("p"));
  m.def(
      "b_numeric",
      [](double c, double p, int grid_size) {
        const BNumeric bn = b_numeric(c, to_index(p), grid_size);
        return py::make_tuple(bn.value, bn.error_estimate);
      },
      py::arg("c"), py::arg("p"), py::arg("grid_size") = 400);

  // statistical checks
  m.def(
      "pmb_check",
      [](int mm, int k, const std::vector<int>& n_list, int beta, const std::string& dist,
         int samples, std::uint64_t seed, double threshold, int threads) {
        RngStream rng(seed);
        return report_dict(pmb_check(mm, k, n_list, FieldParam(beta),
                                     uniform_family_from_string(dist), samples, rng,
                                     threshold, threads));
      },
      py::arg("m"), py::arg("k"), py::arg("n_list"), py::arg("beta"), py::arg("dist"),
      py::arg("samples"), py::arg("seed"), py::arg("threshold") = 0.03,
      py::arg("threads") = 1);
  m.def(
      "clt_inner_product_check",
      [](int mm, const std::vector<int>& n_list, int beta, const std::string& dist,
         int samples, std::uint64_t seed, double threshold, int threads) {
        RngStream rng(seed);
        return report_dict(clt_inner_product_check(mm, n_list, FieldParam(beta),
                                                   uniform_family_from_string(dist), samples,
                                                   rng, threshold, threads));
      },
      py::arg("m"), py::arg("n_list"), py::arg("beta"), py::arg("dist"), py::arg("samples"),
      py::arg("seed"), py::arg("threshold") = 0.03, py::arg("threads") = 1);
  m.def(
      "lln_check",
      [](double c, double p, const std::vector<int>& n_list, int beta,
         const std::string& dist, std::uint64_t seed, double threshold, int burn_in,
         int thinning, int threads) {
        RngStream rng(seed);
        McmcConfig cfg;
        cfg.burn_in = burn_in;
        cfg.thinning = thinning;
        return report_dict(lln_check(c, to_index(p), n_list, FieldParam(beta),
                                     dist == "cone" ? BallOrCone::cone : BallOrCone::ball,
                                     rng, threshold, cfg, threads));
      },
      py::arg("c"), py::arg("p"), py::arg("n_list"), py::arg("beta"),
      py::arg("dist") = "ball", py::arg("seed") = 0, py::arg("threshold") = 0.0,
      py::arg("burn_in") = 500, py::arg("thinning") = 10, py::arg("threads") = 1);
  m.def(
      "polar_independence_check",
      [](int mm, int n, int beta, const std::string& source, int samples,
         std::uint64_t seed) {
        RngStream rng(seed);
        return report_dict(polar_independence_check(MatShape(mm, n), FieldParam(beta),
                                                    polar_source_from_string(source), samples,
                                                    rng));
      },
      py::arg("m"), py::arg("n"), py::arg("beta"), py::arg("source"), py::arg("samples"),
      py::arg("seed"));
}
