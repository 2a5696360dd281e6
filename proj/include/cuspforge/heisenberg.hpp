#pragma once

// Heisenberg group N = {n_(s,v)} acting on the Siegel model of complex
// hyperbolic space. The ambient basis is (f1, f2, f3, ..., f_{n+1}) with
// f1, f2 isotropic, <f1, f2> = 1 and (f3, ...) orthonormal.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace cuspforge {

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Standard Hermitian product, linear in the first slot: <u, w> = sum u_j conj(w_j).
template <typename Scalar>
std::complex<Scalar> hermitian_dot(const CVector<Scalar>& u, const CVector<Scalar>& w) {
  if (u.size() != w.size()) throw std::invalid_argument("hermitian_dot: dimension mismatch");
  // Eigen's dot() conjugates its first argument.
  return w.dot(u);
}

/// The element n_(s,v); v lives in C^{n-1}.
template <typename Scalar = double>
struct HeisenbergElement {
  Scalar s{0};
  CVector<Scalar> v;

  HeisenbergElement() = default;
  HeisenbergElement(Scalar s_, CVector<Scalar> v_) : s(s_), v(std::move(v_)) {}

  static HeisenbergElement identity(Eigen::Index dim) {
    return {Scalar(0), CVector<Scalar>::Zero(dim)};
  }
  static HeisenbergElement central(Scalar s, Eigen::Index dim) {
    return {s, CVector<Scalar>::Zero(dim)};
  }
  Eigen::Index dim() const { return v.size(); }
};

template <typename Scalar = double>
struct SiegelPoint {
  std::complex<Scalar> a;
  CVector<Scalar> v;

  /// Membership in the Siegel domain 2 Re(a) + |v|^2 < 0.
  bool in_domain() const { return Scalar(2) * a.real() + v.squaredNorm() < Scalar(0); }
};

template <typename Scalar = double>
struct HoroballParams {
  Scalar t0{0};
  Scalar l{2 * std::numbers::pi_v<Scalar>};
};

/// n_(s,v) n_(s',v') = n_(s + s' + Im<v',v>, v + v').
template <typename Scalar>
HeisenbergElement<Scalar> compose(const HeisenbergElement<Scalar>& g,
                                  const HeisenbergElement<Scalar>& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("compose: dimension mismatch");
  return {g.s + h.s + hermitian_dot<Scalar>(h.v, g.v).imag(), g.v + h.v};
}

template <typename Scalar>
HeisenbergElement<Scalar> inverse(const HeisenbergElement<Scalar>& g) {
  // Im<-v, v> = 0, so the central part simply negates.
  return {-g.s, -g.v};
}

/// Matrix of n_(s,v) in the basis (f1, ..., f_{n+1}).
template <typename Scalar>
CMatrix<Scalar> to_matrix(const HeisenbergElement<Scalar>& g) {
  using C = std::complex<Scalar>;
  const Eigen::Index m = g.dim();
  CMatrix<Scalar> M = CMatrix<Scalar>::Identity(m + 2, m + 2);
  M(0, 1) = C(-g.v.squaredNorm() / Scalar(2), -g.s);
  M.block(0, 2, 1, m) = -g.v.adjoint();
  M.block(2, 1, m, 1) = g.v;
  return M;
}

/// Matrix of the signature (n,1) form: H(u,w) = u^T H conj(w).
template <typename Scalar>
CMatrix<Scalar> siegel_form_matrix(Eigen::Index ambient_dim) {
  CMatrix<Scalar> H = CMatrix<Scalar>::Identity(ambient_dim, ambient_dim);
  H(0, 0) = H(1, 1) = 0;
  H(0, 1) = H(1, 0) = 1;
  return H;
}

/// H(u, w) = a conj(b') + b conj(a') + <v, v'> for u = a f1 + b f2 + v.
template <typename Scalar>
std::complex<Scalar> hermitian_form(const CVector<Scalar>& u, const CVector<Scalar>& w) {
  if (u.size() != w.size() || u.size() < 3)
    throw std::invalid_argument("hermitian_form: vectors must share an ambient dimension >= 3");
  const Eigen::Index m = u.size() - 2;
  return u(0) * std::conj(w(1)) + u(1) * std::conj(w(0)) +
         hermitian_dot<Scalar>(u.tail(m), w.tail(m));
}

/// Siegel coordinates of n_(s,v) a_t o.
template <typename Scalar>
SiegelPoint<Scalar> orbit_coords(Scalar s, const CVector<Scalar>& v, Scalar t) {
  using C = std::complex<Scalar>;
  return {C(-v.squaredNorm() / Scalar(2) - std::exp(Scalar(-2) * t), -s), v};
}

template <typename Scalar>
bool horoball_contains(const SiegelPoint<Scalar>& p, const HoroballParams<Scalar>& hb) {
  return p.a.real() < -p.v.squaredNorm() / Scalar(2) - std::exp(Scalar(-2) * hb.t0);
}

/// lambda(t0) = exp(-2 pi e^{-2 t0} / l).
template <typename Scalar>
Scalar lambda_const(Scalar t0, Scalar l) {
  if (!(l > Scalar(0))) throw std::domain_error("lambda_const: l must be positive");
  return std::exp(Scalar(-2) * std::numbers::pi_v<Scalar> * std::exp(Scalar(-2) * t0) / l);
}

/// Image of p under the quotient by <n_(l,0)>: (exp(2 pi a / l), v).
template <typename Scalar>
std::pair<std::complex<Scalar>, CVector<Scalar>> quotient_to_omega(const SiegelPoint<Scalar>& p,
                                                                   Scalar l) {
  if (!(l > Scalar(0))) throw std::domain_error("quotient_to_omega: l must be positive");
  if (!p.in_domain()) throw std::domain_error("quotient_to_omega: point outside the Siegel domain");
  return {std::exp(Scalar(2) * std::numbers::pi_v<Scalar> * p.a / l), p.v};
}

/// The automorphism n_(s,v) -> n_(2 pi s / l, sqrt(2 pi / l) v) normalizing the
/// central period to 2 pi.
template <typename Scalar>
HeisenbergElement<Scalar> rescale(const HeisenbergElement<Scalar>& g, Scalar l) {
  if (!(l > Scalar(0))) throw std::domain_error("rescale: l must be positive");
  const Scalar k = Scalar(2) * std::numbers::pi_v<Scalar> / l;
  return {k * g.s, std::sqrt(k) * g.v};
}

}  // namespace cuspforge
