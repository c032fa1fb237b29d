#include "schatten/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace schatten {

SingularSpectrum singular_values(const Eigen::MatrixXcd& x) {
  if (!x.allFinite()) throw std::domain_error("singular_values: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(x);
  SingularSpectrum s;
  s.values.assign(svd.singularValues().data(),
                  svd.singularValues().data() + svd.singularValues().size());
  std::sort(s.values.begin(), s.values.end(), std::greater<double>());
  return s;
}

double schatten_norm(const SingularSpectrum& s, SchattenIndex p) {
  if (s.values.empty()) return 0.0;
  if (p.is_inf()) return s.values.front();
  double acc = 0.0;
  for (double v : s.values) acc += std::pow(v, p.p);
  return std::pow(acc, 1.0 / p.p);
}

double schatten_norm(const Eigen::MatrixXcd& x, SchattenIndex p) {
  return schatten_norm(singular_values(x), p);
}

EmpiricalMeasure empirical_spectrum_measure(const Eigen::MatrixXcd& x, SchattenIndex p,
                                            SpectrumScaling scaling) {
  if (scaling == SpectrumScaling::m_pow && p.is_inf())
    throw std::domain_error("empirical_spectrum_measure: m_pow scaling needs finite p");
  SingularSpectrum s = singular_values(x);
  const double scale =
      scaling == SpectrumScaling::m_pow ? std::pow(static_cast<double>(s.size()), 1.0 / p.p) : 1.0;
  std::vector<double> atoms(s.values.size());
  for (size_t i = 0; i < atoms.size(); ++i) atoms[i] = scale * s.values[i];
  return empirical_measure_from_values(std::move(atoms));
}

EmpiricalMeasure empirical_measure_from_values(std::vector<double> values) {
  if (values.empty()) throw std::domain_error("EmpiricalMeasure: needs at least one atom");
  std::sort(values.begin(), values.end());
  return EmpiricalMeasure{std::move(values)};
}

double ks_distance(const EmpiricalMeasure& emp, const std::function<double(double)>& cdf) {
  const double w = emp.weight();
  double d = 0.0;
  for (size_t i = 0; i < emp.atoms.size(); ++i) {
    // right side at the atom and left limits of both CDFs just below it, so a
    // reference cdf with a jump at the atom is matched side by side
    const double x = emp.atoms[i];
    d = std::max(d, std::abs((i + 1) * w - cdf(x)));
    d = std::max(d, std::abs(i * w - cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()))));
  }
  return d;
}

double ks_distance_two_sample(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  double d = 0.0;
  size_t i = 0, j = 0;
  const double wa = a.weight(), wb = b.weight();
  while (i < a.atoms.size() || j < b.atoms.size()) {
    if (j >= b.atoms.size() || (i < a.atoms.size() && a.atoms[i] <= b.atoms[j]))
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(i * wa - j * wb));
  }
  return d;
}

double wasserstein1_weighted(const std::vector<double>& xa, const std::vector<double>& wa,
                             const std::vector<double>& xb, const std::vector<double>& wb) {
  struct Ev {
    double x, da, db;
  };
  std::vector<Ev> ev;
  ev.reserve(xa.size() + xb.size());
  for (size_t i = 0; i < xa.size(); ++i) ev.push_back({xa[i], wa[i], 0.0});
  for (size_t i = 0; i < xb.size(); ++i) ev.push_back({xb[i], 0.0, wb[i]});
  std::sort(ev.begin(), ev.end(), [](const Ev& l, const Ev& r) { return l.x < r.x; });
  // integral of |F_a - F_b| over the merged support
  double Fa = 0.0, Fb = 0.0, total = 0.0;
  for (size_t k = 0; k + 1 < ev.size(); ++k) {
    Fa += ev[k].da;
    Fb += ev[k].db;
    total += std::abs(Fa - Fb) * (ev[k + 1].x - ev[k].x);
  }
  return total;
}

double wasserstein1(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  std::vector<double> wa(a.atoms.size(), a.weight());
  std::vector<double> wb(b.atoms.size(), b.weight());
  return wasserstein1_weighted(a.atoms, wa, b.atoms, wb);
}

void write_empirical_csv(const EmpiricalMeasure& emp, std::ostream& os) {
  os << "location,weight\n";
  const double w = emp.weight();
  os.precision(17);
  for (double x : emp.atoms) os << x << ',' << w << '\n';
}

}  // namespace schatten
