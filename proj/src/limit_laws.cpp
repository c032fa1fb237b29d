#include "schatten/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "schatten/quadrature.hpp"

namespace schatten {

LimitDensity::LimitDensity(DensityFamily f, double c_) : family(f), c(c_) {
  if (!(c > 0.0) || c > 1.0) throw std::domain_error("LimitDensity: c must lie in (0, 1]");
  const double sc = std::sqrt(c);
  switch (family) {
    case DensityFamily::nu_c2:
      lo = (1 - sc) * (1 - sc) / 2;
      hi = (1 + sc) * (1 + sc) / 2;
      break;
    case DensityFamily::mu_c2_sq:
      lo = (1 - sc) * (1 - sc);
      hi = (1 + sc) * (1 + sc);
      break;
    case DensityFamily::mu_c2:
      lo = 1 - sc;
      hi = 1 + sc;
      break;
    case DensityFamily::nu_c_inf:
      lo = std::pow((1 - c) / (1 + c), 2);
      hi = 1.0;
      break;
    case DensityFamily::mu_c_inf:
      lo = (1 - c) / (1 + c);
      hi = 1.0;
      break;
  }
}

DensityFamily density_family_from_string(const std::string& name) {
  if (name == "nu_c2") return DensityFamily::nu_c2;
  if (name == "mu_c2_sq") return DensityFamily::mu_c2_sq;
  if (name == "mu_c2") return DensityFamily::mu_c2;
  if (name == "nu_c_inf") return DensityFamily::nu_c_inf;
  if (name == "mu_c_inf") return DensityFamily::mu_c_inf;
  throw std::domain_error("unknown density family: " + name);
}

double density_eval(const LimitDensity& d, double x) {
  if (x < d.lo || x > d.hi) return 0.0;
  const double c = d.c;
  if (x == 0.0) {
    // only reachable at c = 1 where lo = 0; limits of the formulas below
    switch (d.family) {
      case DensityFamily::mu_c_inf:
      case DensityFamily::mu_c2:
        return 2.0 / M_PI;
      default:
        return std::numeric_limits<double>::infinity();
    }
  }
  switch (d.family) {
    case DensityFamily::nu_c2: {
      const double q = c - std::pow(x - (1 + c) / 2, 2);
      return std::sqrt(std::max(q, 0.0)) / (c * M_PI * x);
    }
    case DensityFamily::mu_c2_sq: {
      const double q = 4 * c - std::pow(x - 1 - c, 2);
      return std::sqrt(std::max(q, 0.0)) / (2 * M_PI * c * x);
    }
    case DensityFamily::mu_c2: {
      const double q = 4 * c - std::pow(x * x - 1 - c, 2);
      return std::sqrt(std::max(q, 0.0)) / (M_PI * c * x);
    }
    case DensityFamily::nu_c_inf: {
      const double num = std::max(x - d.lo, 0.0);
      const double den = 1.0 - x;
      if (den <= 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      return (1 + c) / (2 * c * M_PI * x) * std::sqrt(num / den);
    }
    case DensityFamily::mu_c_inf: {
      const double num = std::max(x * x - d.lo * d.lo, 0.0);
      const double den = (1.0 - x) * (1.0 + x);
      if (den <= 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      return (1 + c) / (c * M_PI * x) * std::sqrt(num / den);
    }
  }
  return 0.0;
}

double density_integral(const LimitDensity& d, const std::function<double(double)>& f) {
  // x = lo + (hi - lo) sin^2(theta) turns both inverse-square-root endpoint
  // singularities into smooth integrands of theta on (0, pi/2)
  auto g = [&](double th) {
    const double s = std::sin(th);
    const double x = d.lo + (d.hi - d.lo) * s * s;
    return f(x) * density_eval(d, x) * (d.hi - d.lo) * std::sin(2 * th);
  };
  double prev = gauss_legendre(g, 0.0, M_PI / 2, 128);
  for (int n = 256; n <= 2048; n *= 2) {
    const double cur = gauss_legendre(g, 0.0, M_PI / 2, n);
    if (std::abs(cur - prev) <= 5e-9) return cur;
    prev = cur;
  }
  return prev;
}

double density_moment(const LimitDensity& d, double k) {
  if (k < 0.0) throw std::domain_error("density_moment: k >= 0 required");
  return density_integral(d, [&](double x) { return k == 0.0 ? 1.0 : std::pow(x, k); });
}

double density_cdf(const LimitDensity& d, double x) {
  if (x <= d.lo) return 0.0;
  if (x >= d.hi) return 1.0;
  const double th_max = std::asin(std::sqrt((x - d.lo) / (d.hi - d.lo)));
  auto g = [&](double th) {
    const double s = std::sin(th);
    const double xx = d.lo + (d.hi - d.lo) * s * s;
    return density_eval(d, xx) * (d.hi - d.lo) * std::sin(2 * th);
  };
  const double raw = gauss_legendre(g, 0.0, th_max, 512);
  return std::clamp(raw, 0.0, 1.0);
}

std::vector<double> density_quantile_atoms(const LimitDensity& d, int n) {
  if (n < 1) throw std::domain_error("density_quantile_atoms: n >= 1 required");
  // cumulative midpoint table in theta, then monotone interpolation
  const int K = 16000;
  std::vector<double> xg(K + 1), Fg(K + 1, 0.0);
  for (int i = 0; i <= K; ++i) {
    const double th = M_PI / 2 * i / K;
    const double s = std::sin(th);
    xg[i] = d.lo + (d.hi - d.lo) * s * s;
  }
  for (int i = 0; i < K; ++i) {
    const double th = M_PI / 2 * (i + 0.5) / K;
    const double s = std::sin(th);
    const double x = d.lo + (d.hi - d.lo) * s * s;
    Fg[i + 1] = Fg[i] + density_eval(d, x) * (d.hi - d.lo) * std::sin(2 * th) * (M_PI / 2 / K);
  }
  for (auto& f : Fg) f /= Fg.back();
  std::vector<double> atoms(n);
  int j = 0;
  for (int i = 0; i < n; ++i) {
    const double q = (i + 0.5) / n;
    while (j < K && Fg[j + 1] < q) ++j;
    const double t = (q - Fg[j]) / std::max(Fg[j + 1] - Fg[j], 1e-300);
    atoms[i] = xg[j] + t * (xg[j + 1] - xg[j]);
  }
  return atoms;
}

double b_constant(double c, SchattenIndex p) {
  if (!(c > 0.0) || c > 1.0) throw std::domain_error("b_constant: c must lie in (0, 1]");
  const double edge = c == 1.0 ? 0.0 : (1 - c) * (1 - c) / (4 * c) * std::log(1 - c);
  if (p.is_inf())
    return c / 2 * std::log(c) - edge - (1 + c) * (1 + c) / (4 * c) * std::log(1 + c);
  if (p.p == 2.0) return -0.75 - std::log(2.0) / 2 + c / 4 * std::log(c) - edge;
  throw std::domain_error("b_constant: closed form only for p in {2, inf}");
}

void GridMeasure::validate() const {
  if (nodes.size() != weights.size() || nodes.empty())
    throw std::domain_error("GridMeasure: nodes/weights size mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0.0) throw std::domain_error("GridMeasure: negative node");
    if (i > 0 && nodes[i] <= nodes[i - 1])
      throw std::domain_error("GridMeasure: nodes must be strictly increasing");
    if (weights[i] < 0.0) throw std::domain_error("GridMeasure: negative weight");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::domain_error("GridMeasure: weights must sum to 1");
}

double rate_function(const GridMeasure& mu, double c, SchattenIndex p, double B) {
  mu.validate();
  const size_t n = mu.nodes.size();
  const double inf = std::numeric_limits<double>::infinity();
  if (p.is_inf()) {
    for (size_t i = 0; i < n; ++i)
      if (mu.weights[i] > 0.0 && mu.nodes[i] > 1.0 + 1e-12) return inf;
  } else {
    double mp = 0.0;
    for (size_t i = 0; i < n; ++i) mp += mu.weights[i] * std::pow(mu.nodes[i], p.p);
    if (mp > 1.0 + 1e-9) return inf;
  }
  auto spacing = [&](size_t i) {
    if (n == 1) return 1.0;
    if (i == 0) return mu.nodes[1] - mu.nodes[0];
    if (i == n - 1) return mu.nodes[n - 1] - mu.nodes[n - 2];
    return (mu.nodes[i + 1] - mu.nodes[i - 1]) / 2;
  };
  double dbl = 0.0, single = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (mu.weights[i] == 0.0) continue;
    if (mu.nodes[i] <= 0.0) return inf;  // log x and log|x^2-y^2| both blow up
    single += mu.weights[i] * std::log(mu.nodes[i]);
    dbl += mu.weights[i] * mu.weights[i] * std::log(spacing(i) / 2);
    for (size_t j = i + 1; j < n; ++j) {
      if (mu.weights[j] == 0.0) continue;
      dbl += 2 * mu.weights[i] * mu.weights[j] *
             std::log(std::abs(mu.nodes[i] * mu.nodes[i] - mu.nodes[j] * mu.nodes[j]));
    }
  }
  double val = -c / 2 * dbl - (1 - c) * single + B;
  if (!p.is_inf()) val += std::log(M_E * p.p) / p.p;
  return val;
}

}  // namespace schatten
