#pragma once

// Curvature of the warped Heisenberg metric dt^2 + f^2 mu|r + g^2 mu|RZ,
// g = f f'. Two independent routes: the closed forms (hs_blocks, bisectional,
// ricci) and a brute-force tensor built from the Koszul formula on the
// orthonormal frame {d/dt, X_k / f, JX_k / f, Z / g}.
//
// Convention: R(X,Y) = nabla_[X,Y] - [nabla_X, nabla_Y], so that
// R(X,Y,X,Y) = K |X ^ Y|^2.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cuspforge/profile.hpp"

namespace cuspforge {

struct MetricPoint {
  double t = 0;
  double f = 1, f1 = 0, f2 = 1, f3 = 0;
  double g = 0, g1 = 0, g2 = 0;
  int n = 2;

  static MetricPoint from_jet(double t, const Jet& j, int n);
  /// f = exp: the complex hyperbolic metric.
  static MetricPoint hyperbolic(double t, int n);
  static MetricPoint cosh_region(double t, int n);
  static MetricPoint from_profile(const CutoffProfile& p, double t, int n);

  /// Throws std::domain_error unless f, f', f'', f''' > 0 and n >= 2.
  void validate() const;
  int real_dim() const { return 2 * n; }
};

/// Tangent vector u + beta Z + gamma JZ, u in C^{n-1}.
struct FrameVector {
  Eigen::VectorXcd u;
  double beta = 0;
  double gamma = 0;

  FrameVector() = default;
  FrameVector(Eigen::VectorXcd u_, double beta_, double gamma_)
      : u(std::move(u_)), beta(beta_), gamma(gamma_) {}
  static FrameVector zero(int n) { return {Eigen::VectorXcd::Zero(n - 1), 0, 0}; }

  FrameVector J() const;
  /// Coordinates in the orthonormal frame: index 0 is d/dt (= JZ / g),
  /// 1..2n-2 interleave Re/Im of f u, 2n-1 is Z / g.
  Eigen::VectorXd components(const MetricPoint& mp) const;
  static FrameVector from_components(const Eigen::VectorXd& c, const MetricPoint& mp);

  FrameVector& operator+=(const FrameVector& o);
  FrameVector& operator-=(const FrameVector& o);
  FrameVector& operator*=(double s);
};

FrameVector operator+(FrameVector a, const FrameVector& b);
FrameVector operator-(FrameVector a, const FrameVector& b);
FrameVector operator*(double s, FrameVector a);

/// mu_{f,g}(X, Y).
double metric_inner(const FrameVector& X, const FrameVector& Y, const MetricPoint& mp);
double metric_norm2(const FrameVector& X, const MetricPoint& mp);

/// Independent standard normal coordinates, optionally rescaled to unit length.
template <typename Rng>
FrameVector random_frame_vector(int n, Rng& rng, const MetricPoint* unit_at = nullptr);

struct CurvatureBlocks {
  Eigen::Matrix2d G;
  Eigen::Matrix2d F;
};

CurvatureBlocks hs_blocks(const MetricPoint& mp);

/// R(Y, JY, Xi, JXi) from the closed form.
double bisectional(const FrameVector& Y, const FrameVector& Xi, const MetricPoint& mp);

/// Ric(Xi, Xi) from the closed form.
double ricci(const FrameVector& Xi, const MetricPoint& mp);

/// R(U ^ Z, U~ ^ Z) for U, U~ in r.
double rz_plane_curvature(const Eigen::VectorXcd& U, const Eigen::VectorXcd& Ut,
                          const MetricPoint& mp);

using CurvatureEvaluator = std::function<double(const FrameVector&, const FrameVector&,
                                                const FrameVector&, const FrameVector&)>;

/// Full (0,4) tensor in the orthonormal frame, from structure constants and
/// their exact t-derivatives.
class OracleCurvature {
 public:
  explicit OracleCurvature(const MetricPoint& mp);

  const MetricPoint& point() const { return mp_; }
  int dim() const { return dim_; }
  double frame(int a, int b, int c, int d) const {
    return r_[((static_cast<std::size_t>(a) * dim_ + b) * dim_ + c) * dim_ + d];
  }
  double operator()(const FrameVector& X, const FrameVector& Y, const FrameVector& Z,
                    const FrameVector& W) const;
  double on_components(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                       const Eigen::VectorXd& Z, const Eigen::VectorXd& W) const;
  CurvatureEvaluator evaluator() const;

  /// Largest violation of the algebraic symmetries and of the first Bianchi identity.
  struct SymmetryDefects {
    double first_pair, last_pair, pair_swap, bianchi;
  };
  SymmetryDefects symmetry_defects() const;

  /// Normalized R(E_i, E_j) on E1 = X^JX, E2 = Z^JZ, E3 = X^Z, E4 = JX^JZ,
  /// E5 = JX^Z, E6 = JZ^X for X the first unit vector of r.
  Eigen::Matrix<double, 6, 6> block_matrix() const;

  /// Ric(Xi, Xi) as the trace over the 2n frame directions.
  double ricci_trace(const FrameVector& Xi) const;

 private:
  MetricPoint mp_;
  int dim_;
  std::vector<double> r_;
};

double oracle_curvature(const FrameVector& Y, const FrameVector& Z, const FrameVector& W,
                        const FrameVector& V, const MetricPoint& mp);

/// Constant holomorphic curvature -4 tensor written through mu_{f,g}; equals the
/// true curvature only where f = exp.
CurvatureEvaluator constant_holomorphic_evaluator(const MetricPoint& mp);

/// R(X,Y,X,Y) / |X ^ Y|^2.
double sectional(const CurvatureEvaluator& Rt, const FrameVector& X, const FrameVector& Y,
                 const MetricPoint& mp);

/// |R(X,JX,Y,JY) - R(X,Y,X,Y) - R(X,JY,X,JY)|.
double bianchi_check(const CurvatureEvaluator& Rt, const FrameVector& X, const FrameVector& Y);

/// (R(p,q,p,q), P(a^2)) with p = a v + w, q = J(a v - w).
std::pair<double, double> poly_P(const FrameVector& v, const FrameVector& w, double a,
                                 const CurvatureEvaluator& Rt);

/// R(v,Jv,w,Jw)^2 <= R(v,Jv,v,Jv) R(w,Jw,w,Jw) + 1e-10.
bool discriminant_inequality(const FrameVector& v, const FrameVector& w,
                             const CurvatureEvaluator& Rt);

struct HbcRegionRow {
  ProfileRegion region;
  int samples = 0;
  /// Largest R(Y,JY,Xi,JXi) / (|Y|^2 |Xi|^2); negative means strict.
  double max_normalized = -std::numeric_limits<double>::infinity();
  double min_normalized = std::numeric_limits<double>::infinity();
};

struct HbcReport {
  int samples = 0;
  int n = 2;
  bool passed = true;
  double max_value = -std::numeric_limits<double>::infinity();
  double max_normalized = -std::numeric_limits<double>::infinity();
  /// max of |2 a alpha (...)| / (a^2 (beta^2+gamma^2) + alpha^2 (b^2+c^2)).
  double max_cauchy_schwarz_ratio = 0;
  std::array<HbcRegionRow, 3> regions{HbcRegionRow{ProfileRegion::Cosh},
                                      HbcRegionRow{ProfileRegion::Transition},
                                      HbcRegionRow{ProfileRegion::Exp}};
  std::string witness;
};

/// Samples (t, Y, Xi) with t in [A/grid, A] and unit Y, Xi, plus zero-vector probes.
HbcReport hbc_certificate(const CutoffProfile& p, int samples, std::uint64_t seed, int n = 2);

struct CurvatureSummary {
  double t;
  double min_hbc, max_hbc;
  double min_ricci;
  double min_sectional, max_sectional;
};

/// Normalized extremes over `samples` random unit pairs at mp.
CurvatureSummary curvature_summary(const MetricPoint& mp, int samples, std::uint64_t seed);

void write_curvature_csv(std::ostream& os, const std::vector<CurvatureSummary>& rows);

const char* to_string(ProfileRegion r);

template <typename Rng>
FrameVector random_frame_vector(int n, Rng& rng, const MetricPoint* unit_at) {
  std::normal_distribution<double> normal;
  FrameVector v = FrameVector::zero(n);
  for (Eigen::Index k = 0; k < v.u.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v.u(k) = {re, im};
  }
  v.beta = normal(rng);
  v.gamma = normal(rng);
  if (unit_at) v *= 1 / std::sqrt(metric_norm2(v, *unit_at));
  return v;
}


}  // namespace cuspforge
