#pragma once

#include <utility>

#include "schatten/limit_laws.hpp"

namespace schatten {

/// Discretized minimization of the squared-singular-value energy
///   J0(mu) = -(c/2) int int log|x-y| dmu dmu
///            + int (x^{p/2} - ((1-c)/2) log x) dmu,
/// over probability measures on a Chebyshev grid; for p = inf the x^{p/2}
/// term becomes the support constraint [0, 1]. B_{c,p} = -J0 at the
/// minimizer.
struct EqProblem {
  double c;
  SchattenIndex p;
  int grid_size = 400;
  double domain_cap = 0.0;  // 0 = auto: 1 for p = inf, else 2x endpoint guess

  void validate() const;
};

struct EqSolution {
  GridMeasure measure;
  double energy = 0.0;             // J0 at the minimizer (B-free)
  std::pair<double, double> endpoints{0.0, 0.0};  // effective support
  int iterations = 0;
  double residual = 0.0;           // first-order (KKT) optimality residual
};

EqSolution solve_equilibrium(const EqProblem& prob);

/// Support endpoints [a, b] of the continuum minimizer for finite p, from the
/// two simultaneous integral equations with (x-a)^{-1/2}(b-x)^{1/2} and
/// (x-a)^{1/2}(b-x)^{-1/2} weights; a = 0 exactly when c = 1. Residuals of
/// both equations are driven below 1e-6.
std::pair<double, double> support_endpoints(double c, double p);

struct BNumeric {
  double value;
  double error_estimate;  // |value - half-grid value|
};

/// -J0 at the solve_equilibrium minimizer, with a grid-refinement error
/// estimate.
BNumeric b_numeric(double c, SchattenIndex p, int grid_size = 400);

}  // namespace schatten
