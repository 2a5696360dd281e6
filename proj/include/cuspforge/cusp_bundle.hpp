#pragma once

// Punctured disk bundle model of a cusp. A point (a, v) lives in the trivial
// line bundle C x C^{n-1} -> C^{n-1}; the cusp itself is the open set
// 0 < |(a,v)|_h < 1, and the zero section a = 0 compactifies it.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "cuspforge/heisenberg.hpp"

namespace cuspforge {

template <typename Scalar = double>
struct BundlePoint {
  std::complex<Scalar> a;
  CVector<Scalar> v;
};

template <typename Scalar = double>
struct CuspParams {
  Scalar l{2 * std::numbers::pi_v<Scalar>};
  Scalar t0{0};
  Eigen::Index n{2};

  void validate() const {
    if (!(l > Scalar(0))) throw std::domain_error("CuspParams: l must be positive");
    if (n < 2) throw std::domain_error("CuspParams: n must be at least 2");
  }
  Scalar lambda() const { return lambda_const(t0, l); }
};

struct CoverDegree {
  int d{1};
  explicit CoverDegree(int degree) : d(degree) {
    if (d < 1) throw std::domain_error("CoverDegree: d must be >= 1");
  }
};

/// Action of the lattice element g on the quotient coordinates:
/// g.(a, v) = (exp((2 pi / l)(-|v_g|^2/2 - i s_g - <v, v_g>)) a, v_g + v).
template <typename Scalar>
BundlePoint<Scalar> lattice_act(const HeisenbergElement<Scalar>& g, const BundlePoint<Scalar>& p,
                                const CuspParams<Scalar>& cp) {
  using C = std::complex<Scalar>;
  if (g.dim() != p.v.size()) throw std::invalid_argument("lattice_act: dimension mismatch");
  const Scalar k = Scalar(2) * std::numbers::pi_v<Scalar> / cp.l;
  const C exponent = k * (C(-g.v.squaredNorm() / Scalar(2), -g.s) - hermitian_dot<Scalar>(p.v, g.v));
  return {std::exp(exponent) * p.a, g.v + p.v};
}

/// |(a,v)|_h = lambda(t0)^{-1} exp(pi |v|^2 / l) |a|.
template <typename Scalar>
Scalar h_norm(const BundlePoint<Scalar>& p, const CuspParams<Scalar>& cp) {
  return std::exp(std::numbers::pi_v<Scalar> * p.v.squaredNorm() / cp.l) * std::abs(p.a) /
         cp.lambda();
}

template <typename Scalar>
bool in_punctured_disk_bundle(const BundlePoint<Scalar>& p, const CuspParams<Scalar>& cp) {
  const Scalar r = h_norm(p, cp);
  return r > Scalar(0) && r < Scalar(1);
}

/// The defining inequality of Omega_{t0}: 0 < |a| < lambda(t0) exp(-pi |v|^2 / l).
template <typename Scalar>
bool in_omega(const BundlePoint<Scalar>& p, const CuspParams<Scalar>& cp) {
  const Scalar r = std::abs(p.a);
  return r > Scalar(0) &&
         r < cp.lambda() * std::exp(-std::numbers::pi_v<Scalar> * p.v.squaredNorm() / cp.l);
}

/// Curvature coefficients of (L, h): the constant matrix -(2 pi / l) Id.
template <typename Scalar>
CMatrix<Scalar> bundle_curvature(const CuspParams<Scalar>& cp) {
  cp.validate();
  const Eigen::Index m = cp.n - 1;
  return CMatrix<Scalar>::Identity(m, m) * std::complex<Scalar>(-2 * std::numbers::pi_v<Scalar> / cp.l);
}

/// (a, v) -> (a^d, v).
template <typename Scalar>
BundlePoint<Scalar> power_cover(const BundlePoint<Scalar>& p, CoverDegree d) {
  return {std::pow(p.a, d.d), p.v};
}

/// Polar identification of (0, A) x N / <n_(2 pi, 0)> with D*(0, A) x C^{n-1}.
template <typename Scalar>
std::pair<std::complex<Scalar>, CVector<Scalar>> cusp_to_disk(Scalar t,
                                                              const HeisenbergElement<Scalar>& g,
                                                              Scalar A) {
  if (!(t > Scalar(0) && t < A)) throw std::domain_error("cusp_to_disk: t outside (0, A)");
  return {std::polar(t, g.s), g.v};
}

}  // namespace cuspforge
