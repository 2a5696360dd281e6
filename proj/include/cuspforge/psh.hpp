#pragma once

// Plurisubharmonic building blocks: a regularized maximum, convex
// reparametrizations dominating an exhaustion, a numeric i dd-bar, and the
// gluing of two exhaustions across a band.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cuspforge/cusp_bundle.hpp"

namespace cuspforge {

struct RegMaxParams {
  double eta = 0.5;
  /// Gauss-Legendre nodes per axis of the kernel quadrature.
  int resolution = 33;
  void validate() const;
};

/// Mollified max with the bump kernel exp(-1 / (1 - h^2)) scaled by eta on each
/// argument. Equals max(x, y) exactly once |x - y| >= 2 eta.
double reg_max(double x, double y, const RegMaxParams& p = {});

/// Nonnegative correction reg_max(x, y) - max(x, y) as a function of x - y.
double reg_max_excess(double delta, const RegMaxParams& p = {});

/// Smooth convex increasing function: linear part plus smoothed kinks.
class ChiFunction {
 public:
  /// slopes[0] applies left of breakpoints[0]; slopes[j] right of breakpoints[j-1].
  ChiFunction(std::vector<double> breakpoints, std::vector<double> slopes, double radius);

  double operator()(double t) const;
  /// Piecewise-linear majorant before smoothing.
  double piecewise(double t) const;
  double derivative(double t) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double radius() const { return radius_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  double radius_;
};

struct ChiSample {
  double phi;
  double psi;
};

/// chi with chi(0) = 0 and chi(psi) >= phi + safety at every sample (up to the
/// level rounding of phi); throws std::domain_error if min psi <= 0.
ChiFunction build_chi(const std::vector<ChiSample>& samples, double safety = 0.5);

using ScalarField = std::function<double(const Eigen::VectorXcd&)>;

struct HessianReport {
  Eigen::VectorXcd point;
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd eigenvalues;
  double min_eigenvalue = 0;
  /// max |H - H^*| before symmetrization.
  double hermitian_defect = 0;
};

/// d^2 fn / dz_j dz-bar_k by central differences with one Richardson step.
/// h <= 0 selects 1e-4 (1 + |z0|).
HessianReport complex_hessian(const ScalarField& fn, const Eigen::VectorXcd& z0, double h = 0);

/// |v|^2 + lambda(t0)^{-2} exp(2 pi |v|^2 / l) |a|^2.
double phi_cusp(std::complex<double> a, const Eigen::VectorXcd& v, const CuspParams<double>& cp);

struct GlueDomain {
  /// Membership in the neighbourhood V' where both functions are defined.
  std::function<bool(const Eigen::VectorXcd&)> inside;
  /// Samples of the outer band of V' (needs psi2 >= phi2 + 2 eta).
  std::vector<Eigen::VectorXcd> outer_band;
  /// Samples near the zero locus (needs phi2 >= psi2 + 2 eta).
  std::vector<Eigen::VectorXcd> inner_core;
};

struct BandWitness {
  Eigen::VectorXcd point;
  double phi2;
  double psi2;
  std::string condition;
};

class GluedExhaustion {
 public:
  GluedExhaustion(ScalarField phi2, ScalarField psi2, GlueDomain domain, RegMaxParams p);

  double operator()(const Eigen::VectorXcd& z) const;
  bool band_ok() const { return witnesses_.empty(); }
  const std::vector<BandWitness>& witnesses() const { return witnesses_; }
  const ScalarField& phi2() const { return phi2_; }
  const ScalarField& psi2() const { return psi2_; }
  const GlueDomain& domain() const { return domain_; }

  /// Points with value <= C that escape {psi2 <= C outside} U {phi2 <= C inside}.
  std::vector<Eigen::VectorXcd> sublevel_escapes(double C,
                                                 const std::vector<Eigen::VectorXcd>& samples) const;

 private:
  ScalarField phi2_, psi2_;
  GlueDomain domain_;
  RegMaxParams params_;
  std::vector<BandWitness> witnesses_;
};

/// lambda = reg_max(phi2, psi2) on V', psi2 outside. Band violations are recorded, not thrown.
GluedExhaustion glue_exhaustion(ScalarField phi2, ScalarField psi2, GlueDomain domain,
                                const RegMaxParams& p = {});

}  // namespace cuspforge
