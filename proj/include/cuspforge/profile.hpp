#pragma once

// Warping profile f of the cusp-closing metric: f = cosh near 0, f = exp near
// A, and f, f', f'', f''' > 0 on (0, A]. Built as f = cosh + w sinh with a
// smooth step w, so both end jets are exact (cosh + sinh = exp).

#include <array>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cuspforge {

/// (f, f', f'', f''') at a point.
using Jet = Eigen::Vector4d;

enum class ProfileRegion { Cosh, Transition, Exp };

/// Smooth step S on [0,1]: normalized integral of exp(-1 / (x (1 - x))).
/// Returns (S, S', S'', S''').
Eigen::Vector4d smooth_step(double x);

struct CutoffOptions {
  int grid_points = 10000;
  /// Smallest admissible A; 0 disables the check.
  double min_A = 0;
};

class CutoffConstructionError : public std::runtime_error {
 public:
  CutoffConstructionError(int derivative, double location, double value);
  int derivative;
  double location;
  double value;
};

class CutoffProfile {
 public:
  CutoffProfile(double A, std::pair<double, double> window, const CutoffOptions& opts = {});

  double A() const { return A_; }
  std::pair<double, double> window() const { return window_; }
  const Eigen::VectorXd& grid() const { return grid_; }
  /// Row k holds the jet at grid()(k).
  const Eigen::Matrix<double, Eigen::Dynamic, 4>& jets() const { return jets_; }

  /// Exact jet at any t in [0, A].
  Jet jet(double t) const;
  ProfileRegion region(double t) const;

  /// Minimum of each derivative over the grid points in (0, A], with location.
  std::array<std::pair<double, double>, 4> positivity_margins() const;

 private:
  double A_;
  std::pair<double, double> window_;
  Eigen::VectorXd grid_;
  Eigen::Matrix<double, Eigen::Dynamic, 4> jets_;
};

CutoffProfile build_cutoff(double A, std::pair<double, double> window,
                           const CutoffOptions& opts = {});

/// (g, g', g'') for g = f f'.
Eigen::Vector3d g_of(const CutoffProfile& p, double t);
Eigen::Vector3d g_of_jet(const Jet& j);

/// Smallest A (to `tol`) whose window (A/6, 5A/6) passes all positivity grids.
double search_working_c0(double lo, double hi, int grid_points = 2000, double tol = 1e-3);

/// |central difference of f^(order-1) at step h - f^(order)| at t.
double jet_fd_error(const CutoffProfile& p, int order, double t, double h);

void write_profile_csv(std::ostream& os, const CutoffProfile& p);

struct PsiOptions {
  /// Largest step; defaults to A / 10^4.
  double max_step = 0;
  /// Relative step bound h <= kappa t near the singular end.
  double kappa = 2e-3;
};

class PsiIntegrationError : public std::runtime_error {
 public:
  PsiIntegrationError(double reached, const std::string& what);
  double smallest_reached;
};

struct PsiSolution {
  Eigen::VectorXd grid;       // increasing, grid(0) = t_min, grid(last) = A
  Eigen::VectorXd values;
  Eigen::VectorXd residuals;  // |psi' - e^{2 psi}/g|; zero at the two points at each end
  double max_residual() const { return residuals.cwiseAbs().maxCoeff(); }
};

/// Solves psi' = e^{2 psi} / g, psi(A) = A backward on [t_min, A].
PsiSolution solve_psi(const CutoffProfile& p, double t_min, const PsiOptions& opts = {});
/// Same ODE for an arbitrary positive g on (0, A].
PsiSolution solve_psi(const std::function<double(double)>& g, double A, double t_min,
                      const PsiOptions& opts = {});

}  // namespace cuspforge
