#pragma once

#include <functional>
#include <vector>

namespace schatten {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]
/// (Newton on the Legendre recurrence; cached per n).
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre_rule(int n);

double gauss_legendre(const std::function<double(double)>& f, double lo, double hi, int n);

/// Tanh-sinh (double-exponential) quadrature on (lo, hi); robust against
/// integrable endpoint singularities. Levels are doubled until the change
/// drops below tol.
double tanh_sinh(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12);

}  // namespace schatten
