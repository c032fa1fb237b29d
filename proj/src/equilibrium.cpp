#include "schatten/equilibrium.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "schatten/quadrature.hpp"

namespace schatten {

namespace {

std::vector<double> cheb_nodes(int n, double lo, double hi) {
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j)
    x[j] = lo + (hi - lo) * (1.0 - std::cos(M_PI * (j + 0.5) / n)) / 2.0;
  return x;
}

double local_spacing(const std::vector<double>& x, int i) {
  const int n = static_cast<int>(x.size());
  if (i == 0) return x[1] - x[0];
  if (i == n - 1) return x[n - 1] - x[n - 2];
  return (x[i + 1] - x[i - 1]) / 2;
}

// derivative of the external field over c: p x^{p/2-1}/(2c) - (1-c)/(2cx)
double field_deriv(double x, double c, double p) {
  return p * std::pow(x, p / 2.0 - 1.0) / (2 * c) - (1 - c) / (2 * c * x);
}

// the two endpoint integrals after x = a cos^2(th) + b sin^2(th)
std::pair<double, double> endpoint_integrals(double a, double b, double c, double p) {
  auto h = [&](double th) {
    const double s2 = std::sin(th) * std::sin(th);
    return field_deriv(a + (b - a) * s2, c, p);
  };
  const int N = 400;
  auto f1 = [&](double th) {
    const double cth = std::cos(th);
    return h(th) * 2 * (b - a) * cth * cth;
  };
  auto f2 = [&](double th) {
    const double sth = std::sin(th);
    return h(th) * 2 * (b - a) * sth * sth;
  };
  return {gauss_legendre(f1, 0.0, M_PI / 2, N), gauss_legendre(f2, 0.0, M_PI / 2, N)};
}

}  // namespace

std::pair<double, double> support_endpoints(double c, double p) {
  if (!(c > 0.0) || c > 1.0) throw std::domain_error("support_endpoints: c must lie in (0, 1]");
  if (!(p > 0.0) || std::isinf(p))
    throw std::domain_error("support_endpoints: finite p > 0 required");

  if (c == 1.0) {
    // a = 0; solve the single equation int_0^b h (x/(b-x))^{1/2} dx = pi
    double b = std::pow(2.0 / p, 2.0 / p) * 2.0;  // crude scale guess
    b = std::max(b, 1e-3);
    for (int it = 0; it < 200; ++it) {
      const double f = endpoint_integrals(0.0, b, c, p).second - M_PI;
      const double db = 1e-7 * b;
      const double f2 = endpoint_integrals(0.0, b + db, c, p).second - M_PI;
      const double step = f / ((f2 - f) / db);
      b -= step;
      if (!(b > 0.0)) throw std::runtime_error("support_endpoints: diverged (b <= 0)");
      if (std::abs(f) < 1e-10) break;
    }
    const double resid = std::abs(endpoint_integrals(0.0, b, c, p).second - M_PI);
    if (resid > 1e-6)
      throw std::runtime_error("support_endpoints: residual " + std::to_string(resid));
    return {0.0, b};
  }

  double a = 0.05, b = 2.0;
  for (int it = 0; it < 400; ++it) {
    const auto [e1, e2] = endpoint_integrals(a, b, c, p);
    const double f1 = e1 + M_PI, f2 = e2 - M_PI;
    if (std::abs(f1) < 1e-10 && std::abs(f2) < 1e-10) break;
    const double da = 1e-7 * std::max(a, 1e-4), db = 1e-7 * b;
    const auto [e1a, e2a] = endpoint_integrals(a + da, b, c, p);
    const auto [e1b, e2b] = endpoint_integrals(a, b + db, c, p);
    const double j11 = (e1a - e1) / da, j12 = (e1b - e1) / db;
    const double j21 = (e2a - e2) / da, j22 = (e2b - e2) / db;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0)
      throw std::runtime_error("support_endpoints: singular Jacobian at a=" +
                               std::to_string(a) + " b=" + std::to_string(b));
    double sa = (j22 * f1 - j12 * f2) / det;
    double sb = (-j21 * f1 + j11 * f2) / det;
    // damped so the bracket 0 < a < b is kept
    double lam = 1.0;
    while (lam > 1e-6 && (a - lam * sa <= 0.0 || b - lam * sb <= a - lam * sa)) lam /= 2;
    a -= lam * sa;
    b -= lam * sb;
  }
  const auto [e1, e2] = endpoint_integrals(a, b, c, p);
  const double resid = std::max(std::abs(e1 + M_PI), std::abs(e2 - M_PI));
  if (resid > 1e-6)
    throw std::runtime_error("support_endpoints: residual " + std::to_string(resid) +
                             " (a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
  return {a, b};
}

void EqProblem::validate() const {
  if (!(c > 0.0) || c > 1.0) throw std::domain_error("EqProblem: c must lie in (0, 1]");
  if (grid_size < 50) throw std::domain_error("EqProblem: grid_size >= 50 required");
  if (domain_cap < 0.0) throw std::domain_error("EqProblem: domain_cap >= 0 required");
}

EqSolution solve_equilibrium(const EqProblem& prob) {
  prob.validate();
  const int N = prob.grid_size;
  double cap = prob.domain_cap;
  if (cap == 0.0) {
    if (prob.p.is_inf()) {
      cap = 1.0;
    } else {
      try {
        cap = 2.0 * support_endpoints(prob.c, prob.p.p).second;
      } catch (const std::runtime_error&) {
        cap = 4.0 / prob.c;
      }
    }
  }
  std::vector<double> x = cheb_nodes(N, 0.0, cap);

  // quadratic energy: E(w) = 1/2 w'Aw + V'w, A_ij = -c log|x_i-x_j|,
  // A_ii = -c log(Delta_i/2)
  Eigen::MatrixXd A(N, N);
  Eigen::VectorXd V(N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < i; ++j) {
      A(i, j) = A(j, i) = -prob.c * std::log(x[i] - x[j]);
    }
    A(i, i) = -prob.c * std::log(local_spacing(x, i) / 2);
    V(i) = -(1 - prob.c) / 2 * std::log(x[i]);
    if (!prob.p.is_inf()) V(i) += std::pow(x[i], prob.p.p / 2.0);
  }

  // active-set solve of min 1/2 w'Aw + V'w  s.t.  sum w = 1, w >= 0
  std::vector<bool> active(N, true);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(N, 1.0 / N);
  int iterations = 0;
  const int max_iter = 10000;
  for (; iterations < max_iter; ++iterations) {
    std::vector<int> idx;
    for (int i = 0; i < N; ++i)
      if (active[i]) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    if (k == 0) throw std::runtime_error("solve_equilibrium: empty active set");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k + 1, k + 1);
    Eigen::VectorXd rhs(k + 1);
    for (int r = 0; r < k; ++r) {
      for (int s = 0; s < k; ++s) M(r, s) = A(idx[r], idx[s]);
      M(r, k) = M(k, r) = 1.0;
      rhs(r) = -V(idx[r]);
    }
    rhs(k) = 1.0;
    Eigen::VectorXd sol = M.partialPivLu().solve(rhs);
    bool any_negative = false;
    for (int r = 0; r < k; ++r)
      if (sol(r) < 0.0) {
        active[idx[r]] = false;
        any_negative = true;
      }
    if (any_negative) continue;

    w.setZero();
    for (int r = 0; r < k; ++r) w(idx[r]) = sol(r);
    // KKT check on the inactive set: gradient must not undercut the multiplier
    Eigen::VectorXd g = A * w + V;
    double mu = 0.0;
    for (int r = 0; r < k; ++r) mu += g(idx[r]);
    mu /= k;
    int worst = -1;
    double worst_gap = 1e-10;
    for (int i = 0; i < N; ++i)
      if (!active[i] && mu - g(i) > worst_gap) {
        worst_gap = mu - g(i);
        worst = i;
      }
    if (worst >= 0) {
      active[worst] = true;
      continue;
    }
    EqSolution out;
    out.measure.nodes = x;
    out.measure.weights.assign(w.data(), w.data() + N);
    for (double& wv : out.measure.weights) wv = std::max(wv, 0.0);
    out.energy = 0.5 * w.dot(A * w) + V.dot(w);
    double resid = 0.0;
    for (int r = 0; r < k; ++r) resid = std::max(resid, std::abs(g(idx[r]) - mu));
    out.residual = resid;
    out.iterations = iterations + 1;
    const double thresh = 1e-6 / N;
    int first = 0, last = N - 1;
    while (first < N && out.measure.weights[first] <= thresh) ++first;
    while (last > first && out.measure.weights[last] <= thresh) --last;
    out.endpoints = {x[first], x[last]};
    if (out.residual > 1e-6)
      throw std::runtime_error("solve_equilibrium: KKT residual " +
                               std::to_string(out.residual));
    return out;
  }
  throw std::runtime_error("solve_equilibrium: no convergence after max iterations");
}

BNumeric b_numeric(double c, SchattenIndex p, int grid_size) {
  EqProblem prob{c, p, grid_size, 0.0};
  EqProblem half{c, p, std::max(grid_size / 2, 50), 0.0};
  const double full_val = -solve_equilibrium(prob).energy;
  const double half_val = -solve_equilibrium(half).energy;
  return BNumeric{full_val, std::abs(full_val - half_val)};
}

}  // namespace schatten
