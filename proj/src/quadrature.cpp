#include "cuspforge/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cuspforge {

GaussLegendre::GaussLegendre(int points) {
  if (points < 1) throw std::invalid_argument("GaussLegendre: need at least one point");
  nodes.resize(points);
  weights.resize(points);
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2 / ((1 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0;
}

double GaussLegendre::integrate(const std::function<double(double)>& fn, double lo,
                                double hi) const {
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double sum = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * fn(mid + half * nodes[i]);
  return half * sum;
}

double GaussLegendre::integrate(const std::function<double(double)>& fn, double lo, double hi,
                                int panels) const {
  const double step = (hi - lo) / panels;
  double sum = 0;
  for (int k = 0; k < panels; ++k) sum += integrate(fn, lo + k * step, lo + (k + 1) * step);
  return sum;
}

double bump(double x) {
  const double q = 1 - x * x;
  return q > 0 ? std::exp(-1 / q) : 0.0;
}

}  // namespace cuspforge
