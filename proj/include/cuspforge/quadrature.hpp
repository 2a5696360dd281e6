#pragma once

#include <functional>
#include <vector>

namespace cuspforge {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int points);

  /// Integral of fn over [lo, hi].
  double integrate(const std::function<double(double)>& fn, double lo, double hi) const;
  /// Composite rule with `panels` equal subintervals.
  double integrate(const std::function<double(double)>& fn, double lo, double hi, int panels) const;
};

/// The standard bump exp(-1 / (1 - x^2)) on (-1, 1), zero outside.
double bump(double x);

}  // namespace cuspforge
