// Command-line front end: every computation in the library with
// machine-readable output and reproducible seeding.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "schatten/equilibrium.hpp"
#include "schatten/limit_laws.hpp"
#include "schatten/sampling.hpp"
#include "schatten/spectral.hpp"
#include "schatten/stats_checks.hpp"
#include "schatten/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace schatten;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SCHATTEN_LAB_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

// timestamp honors SOURCE_DATE_EPOCH so fixed-seed runs are byte-identical
long long manifest_timestamp() {
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    return std::strtoll(env, nullptr, 10);
  }
  return static_cast<long long>(std::time(nullptr));
}

json make_manifest(const std::string& command, const json& params, std::uint64_t seed) {
  json m;
  m["schema"] = kOutputSchema;
  m["command"] = command;
  m["parameters"] = params;
  m["master_seed"] = seed;
  m["tool_version"] = kVersion;
  m["timestamp"] = manifest_timestamp();
  return m;
}

void write_manifest_file(const fs::path& target, const json& manifest) {
  std::ofstream os(target);
  os << manifest.dump(2) << '\n';
}

SchattenIndex parse_p(const std::string& p) {
  if (p == "inf" || p == "INF" || p == "infinity") return SchattenIndex::inf();
  return SchattenIndex(std::stod(p));
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

int cmd_volume(int m, int n, int beta, const std::string& p_str,
               const std::string& scaled_csv, bool asymptotic) {
  MatShape shape(m, n);
  FieldParam fp(beta);
  SchattenIndex p = parse_p(p_str);

  LogValue lv;
  if (p.is_inf()) {
    if (scaled_csv.empty()) {
      lv = schatten_inf_log_volume(shape, fp);
    } else {
      lv = scaled_ball_log_volume(parse_double_list(scaled_csv), shape, fp);
    }
  } else if (p.p == 2.0) {
    if (!scaled_csv.empty())
      throw CLI::ValidationError("--scaled", "scaling is defined for --p inf only");
    const double d = shape.dim(fp);
    lv = LogValue::from_log(d / 2.0 * std::log(M_PI) - log_gamma(d / 2.0 + 1.0));
  } else {
    throw CLI::ValidationError("--p", "closed-form volume requires p in {2, inf}");
  }

  json params = {{"m", m},           {"n", n},
                 {"beta", beta},     {"p", p_str},
                 {"scaled", scaled_csv}, {"asymptotic", asymptotic}};
  json out;
  out["manifest"] = make_manifest("volume", params, 0);
  out["log_volume"] = lv.log_mag;
  const double real = lv.to_real();
  // a nonzero value that overflowed or underflowed double range is reported
  // as unrepresentable rather than as inf/0
  if (std::isfinite(real) && (real != 0.0 || lv.is_zero()))
    out["volume_if_representable"] = real;
  else
    out["volume_if_representable"] = nullptr;
  if (asymptotic) {
    const double c = static_cast<double>(m) / n;
    if (p.is_inf()) {
      out["asymptotic_radius"] = volume_radius_limit_inf(c, fp);
    } else {
      out["asymptotic_radius"] =
          schatten_p_volume_radius_asymptotic(c, p.p, b_constant(c, p));
    }
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_sample(int m, int n, int beta, const std::string& p_str, const std::string& mode,
               int count, std::uint64_t seed, int burnin, int thin,
               const std::string& out_dir) {
  MatShape shape(m, n);
  FieldParam fp(beta);
  SchattenIndex p = parse_p(p_str);
  fs::create_directories(out_dir);

  McmcConfig cfg;
  cfg.burn_in = burnin;
  cfg.thinning = thin;

  bool mcmc_warning = false;
  std::vector<MatrixSample> samples;
  samples.reserve(count);
  RngStream rng(seed);
  if (mode == "stiefel") {
    for (int i = 0; i < count; ++i) {
      RngStream sub = rng.substream(i);
      samples.push_back(stiefel_uniform(n, m, fp, sub));
    }
  } else {
    const BallOrCone bc = mode == "ball" ? BallOrCone::ball : BallOrCone::cone;
    if (mode != "ball" && mode != "cone")
      throw CLI::ValidationError("--mode", "must be ball, cone or stiefel");
    if (p.is_inf() && bc == BallOrCone::ball) {
      // exact sampler, no chain needed
      for (int i = 0; i < count; ++i) {
        RngStream sub = rng.substream(i);
        samples.push_back(schatten_inf_ball_uniform(shape, fp, sub));
      }
    } else {
      SchattenPSampler sampler(shape, fp, p, bc, cfg, rng.substream(0));
      for (int i = 0; i < count; ++i) samples.push_back(sampler.next());
      mcmc_warning = !sampler.mcmc_converged();
    }
  }

  for (int i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "sample_%05d.txt", i);
    std::ofstream os(fs::path(out_dir) / name);
    write_matrix_dump(samples[i], os);
  }

  json params = {{"m", m},     {"n", n},         {"beta", beta},
                 {"p", p_str}, {"mode", mode},   {"count", count},
                 {"seed", seed}, {"mcmc_burnin", burnin}, {"mcmc_thin", thin}};
  json manifest = make_manifest("sample", params, seed);
  if (mcmc_warning)
    manifest["warning"] = "MCMC convergence diagnostic failed (PSRF >= 1.05)";
  write_manifest_file(fs::path(out_dir) / "manifest.json", manifest);
  if (mcmc_warning) std::cerr << "warning: MCMC convergence diagnostic failed\n";
  return kExitOk;
}

int cmd_spectrum(const std::string& in_file, const std::string& p_str,
                 const std::string& scaling, const std::string& out_file) {
  std::ifstream is(in_file);
  if (!is) throw std::runtime_error("cannot open " + in_file);
  MatrixSample s = read_matrix_dump(is);
  SchattenIndex p = parse_p(p_str);
  const SpectrumScaling sc =
      scaling == "m_pow" ? SpectrumScaling::m_pow : SpectrumScaling::none;
  if (scaling != "m_pow" && scaling != "none")
    throw CLI::ValidationError("--scaling", "must be none or m_pow");
  EmpiricalMeasure em = empirical_spectrum_measure(s.entries, p, sc);

  json params = {{"in", in_file}, {"p", p_str}, {"scaling", scaling}};
  if (out_file.empty()) {
    write_empirical_csv(em, std::cout);
  } else {
    std::ofstream os(out_file);
    write_empirical_csv(em, os);
    write_manifest_file(out_file + ".manifest.json",
                        make_manifest("spectrum", params, s.seed.master_seed));
  }
  return kExitOk;
}

int cmd_density(const std::string& family, double c, int points,
                const std::string& out_file) {
  LimitDensity d(density_family_from_string(family), c);
  std::ostringstream csv;
  csv.precision(17);
  csv << "x,density\n";
  for (int i = 0; i < points; ++i) {
    const double x = d.lo + (d.hi - d.lo) * i / (points - 1.0);
    csv << x << ',' << density_eval(d, x) << '\n';
  }
  json params = {{"family", family}, {"c", c}, {"points", points}};
  if (out_file.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream os(out_file);
    os << csv.str();
    write_manifest_file(out_file + ".manifest.json", make_manifest("density", params, 0));
  }
  return kExitOk;
}

int cmd_equilibrium(double c, const std::string& p_str, int grid, double cap,
                    const std::string& out_file) {
  SchattenIndex p = parse_p(p_str);
  EqProblem prob{c, p, grid, cap};
  EqSolution sol = solve_equilibrium(prob);
  json out;
  json params = {{"c", c}, {"p", p_str}, {"grid", grid}, {"cap", cap}};
  out["manifest"] = make_manifest("equilibrium", params, 0);
  out["c"] = c;
  out["p"] = p_str;
  out["grid"] = sol.measure.nodes;
  out["weights"] = sol.measure.weights;
  out["energy"] = sol.energy;
  out["B"] = -sol.energy;
  out["endpoints"] = {sol.endpoints.first, sol.endpoints.second};
  out["residual"] = sol.residual;
  out["iterations"] = sol.iterations;
  if (out_file.empty()) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::ofstream os(out_file);
    os << out.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_check(const std::string& name, int m, int k, double c, const std::string& p_str,
              int beta, const std::string& dist, int samples, const std::string& n_list_csv,
              std::uint64_t seed, double threshold, int threads, int burnin, int thin) {
  FieldParam fp(beta);
  RngStream rng(seed);
  std::vector<int> n_list = parse_int_list(n_list_csv);
  McmcConfig cfg;
  cfg.burn_in = burnin;
  cfg.thinning = thin;

  CheckReport rep;
  if (name == "pmb") {
    rep = pmb_check(m, k, n_list, fp, uniform_family_from_string(dist), samples, rng,
                    threshold > 0 ? threshold : 0.03, threads);
  } else if (name == "clt") {
    rep = clt_inner_product_check(m, n_list, fp, uniform_family_from_string(dist), samples,
                                  rng, threshold > 0 ? threshold : 0.03, threads);
  } else if (name == "lln") {
    const BallOrCone bc = dist == "cone" ? BallOrCone::cone : BallOrCone::ball;
    rep = lln_check(c, parse_p(p_str), n_list, fp, bc, rng, threshold, cfg, threads);
  } else if (name == "polar") {
    rep = polar_independence_check(MatShape(m, std::max(m, n_list.empty() ? m : n_list[0])),
                                   fp, polar_source_from_string(dist), samples, rng);
  } else {
    throw CLI::ValidationError("--name", "must be pmb, clt, lln or polar");
  }
  std::cout << rep.to_json() << '\n';
  return rep.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for rectangular Schatten-p balls"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  int threads = 1;
  app.add_option("--threads", threads, "worker-thread cap for checks");

  // volume
  auto* vol = app.add_subcommand("volume", "exact/asymptotic ball volumes");
  int vm = 1, vn = 1, vbeta = 1;
  std::string vp = "inf", vscaled;
  bool vasym = false;
  vol->add_option("--m", vm)->required();
  vol->add_option("--n", vn)->required();
  vol->add_option("--beta", vbeta)->required();
  vol->add_option("--p", vp, "inf or 2");
  vol->add_option("--scaled", vscaled, "singular values s1,s2,... of the scaling matrix");
  vol->add_flag("--asymptotic", vasym, "include the volume-radius limit");

  // sample
  auto* smp = app.add_subcommand("sample", "draw matrix samples to dump files");
  int sm = 1, sn = 1, sbeta = 1, scount = 1, sburn = 500, sthin = 10;
  std::string sp = "inf", smode = "ball", sout = ".";
  std::uint64_t sseed = default_seed();
  smp->add_option("--m", sm)->required();
  smp->add_option("--n", sn)->required();
  smp->add_option("--beta", sbeta)->required();
  smp->add_option("--p", sp, "Schatten index (positive real or inf)");
  smp->add_option("--mode", smode, "ball | cone | stiefel")->required();
  smp->add_option("--count", scount)->required();
  smp->add_option("--seed", sseed);
  smp->add_option("--mcmc-burnin", sburn);
  smp->add_option("--mcmc-thin", sthin);
  smp->add_option("--out", sout, "output directory");

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "empirical singular-value measure of a dump");
  std::string spin, spp = "inf", spscale = "none", spout;
  spec->add_option("--in", spin)->required();
  spec->add_option("--p", spp);
  spec->add_option("--scaling", spscale, "none | m_pow");
  spec->add_option("--out", spout);

  // density
  auto* den = app.add_subcommand("density", "closed-form limit density curve CSV");
  std::string dfam;
  double dc = 1.0;
  int dpoints = 1000;
  std::string dout;
  den->add_option("--family", dfam, "nu_c2 | mu_c2_sq | mu_c2 | nu_c_inf | mu_c_inf")
      ->required();
  den->add_option("--c", dc)->required();
  den->add_option("--points", dpoints);
  den->add_option("--out", dout);

  // equilibrium
  auto* eq = app.add_subcommand("equilibrium", "solve the discretized energy minimization");
  double ec = 1.0, ecap = 0.0;
  std::string ep = "2";
  int egrid = 400;
  std::string eout;
  eq->add_option("--c", ec)->required();
  eq->add_option("--p", ep)->required();
  eq->add_option("--grid", egrid);
  eq->add_option("--cap", ecap, "domain cap (0 = auto)");
  eq->add_option("--out", eout);

  // check
  auto* chk = app.add_subcommand("check", "statistical verification runs");
  std::string cname, cdist = "ball", cp = "inf", cnlist = "50,100,200";
  int cm = 2, ck = 1, cbeta = 1, csamples = 5000, cburn = 500, cthin = 10;
  double cc = 1.0, cthreshold = 0.0;
  std::uint64_t cseed = default_seed();
  chk->add_option("--name", cname, "pmb | clt | lln | polar")->required();
  chk->add_option("--m", cm);
  chk->add_option("--k", ck);
  chk->add_option("--c", cc);
  chk->add_option("--p", cp);
  chk->add_option("--beta", cbeta);
  chk->add_option("--dist", cdist, "ball | sphere | stiefel | cone | gaussian | control");
  chk->add_option("--samples", csamples);
  chk->add_option("--n-list", cnlist);
  chk->add_option("--seed", cseed);
  chk->add_option("--threshold", cthreshold);
  chk->add_option("--mcmc-burnin", cburn);
  chk->add_option("--mcmc-thin", cthin);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (vol->parsed()) return cmd_volume(vm, vn, vbeta, vp, vscaled, vasym);
    if (smp->parsed())
      return cmd_sample(sm, sn, sbeta, sp, smode, scount, sseed, sburn, sthin, sout);
    if (spec->parsed()) return cmd_spectrum(spin, spp, spscale, spout);
    if (den->parsed()) return cmd_density(dfam, dc, dpoints, dout);
    if (eq->parsed()) return cmd_equilibrium(ec, ep, egrid, ecap, eout);
    if (chk->parsed())
      return cmd_check(cname, cm, ck, cc, cp, cbeta, cdist, csamples, cnlist, cseed,
                       cthreshold, threads, cburn, cthin);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
