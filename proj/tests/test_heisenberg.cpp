#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cuspforge/heisenberg.hpp"

using namespace cuspforge;
using C = std::complex<double>;
using N = HeisenbergElement<double>;

namespace {

Eigen::VectorXcd random_v(Eigen::Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double re = g(rng), im = g(rng);
    v(k) = C(re, im);
  }
  return v;
}

N random_n(Eigen::Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const double s = g(rng);
  return {s, random_v(m, rng)};
}

// Read (s, v) back from the first row of the matrix.
N from_matrix(const Eigen::MatrixXcd& M) {
  const Eigen::Index m = M.rows() - 2;
  return {-M(0, 1).imag(), -M.block(0, 2, 1, m).adjoint()};
}

}  // namespace

TEST_CASE("central elements add") {
  const N g = compose(N::central(1, 2), N::central(2, 2));
  CHECK(g.s == 3);
  CHECK(g.v.isZero());
}

TEST_CASE("twisted product read off the matrix product") {
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2);
  e1(0) = 1;
  const N a(0, e1), b(0, C(0, 1) * e1);
  const N viaMatrix = from_matrix(to_matrix(a) * to_matrix(b));
  const N viaLaw = compose(a, b);
  CHECK(viaMatrix.s == doctest::Approx(1));
  CHECK(viaLaw.s == doctest::Approx(1));
  CHECK((viaLaw.v - C(1, 1) * e1).norm() < 1e-15);
  CHECK((viaMatrix.v - viaLaw.v).norm() < 1e-15);
}

TEST_CASE("inverse and identity") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const N g = random_n(3, rng);
    const N e = compose(g, inverse(g));
    CHECK(std::abs(e.s) < 1e-14);
    CHECK(e.v.norm() < 1e-14);
  }
  CHECK(to_matrix(N::identity(3)).isIdentity());
}

TEST_CASE("central matrix") {
  const Eigen::MatrixXcd M = to_matrix(N::central(2.5, 2));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(4, 4);
  expected(0, 1) = C(0, -2.5);
  CHECK((M - expected).norm() == 0);
}

TEST_CASE("to_matrix is a homomorphism") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const N g = random_n(3, rng), h = random_n(3, rng);
    CHECK((to_matrix(compose(g, h)) - to_matrix(g) * to_matrix(h)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hermitian form values") {
  Eigen::VectorXcd f1 = Eigen::VectorXcd::Zero(4), f2 = f1, f3 = f1;
  f1(0) = 1;
  f2(1) = 1;
  f3(2) = 1;
  CHECK(hermitian_form<double>(f1 - f2, f1 - f2) == C(-2));
  CHECK(hermitian_form<double>(f1, f1) == C(0));
  CHECK(hermitian_form<double>(f3, f3) == C(1));
  CHECK_THROWS_AS(hermitian_form<double>(f1, Eigen::VectorXcd::Zero(3)), std::invalid_argument);

  // Agrees with the matrix u^T H conj(w) and is preserved by N.
  std::mt19937_64 rng(3);
  const Eigen::MatrixXcd H = siegel_form_matrix<double>(4);
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXcd u = random_v(4, rng), w = random_v(4, rng);
    const C viaMatrix = (u.transpose() * H * w.conjugate())(0, 0);
    CHECK(std::abs(hermitian_form<double>(u, w) - viaMatrix) < 1e-12);
    const Eigen::MatrixXcd M = to_matrix(random_n(2, rng));
    CHECK(std::abs(hermitian_form<double>(M * u, M * w) - hermitian_form<double>(u, w)) < 1e-10);
  }
}

TEST_CASE("orbit coordinates") {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
  SiegelPoint<double> p = orbit_coords(0.0, zero, 0.0);
  CHECK(p.a == C(-1, 0));
  p = orbit_coords(1.0, zero, 0.0);
  CHECK(p.a == C(-1, -1));
  Eigen::VectorXcd v(2);
  v << C(1, 0), C(0, 1);
  p = orbit_coords(0.0, v, 0.0);
  CHECK(p.a == C(-2, 0));
  CHECK(p.v == v);
}

TEST_CASE("horoball membership") {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(1);
  const HoroballParams<double> hb{0, 2 * std::numbers::pi};
  CHECK(horoball_contains(SiegelPoint<double>{-2.0, zero}, hb));
  CHECK_FALSE(horoball_contains(SiegelPoint<double>{-1.0, zero}, hb));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 200; ++k) {
    const double t0 = u(rng), t = t0 - 0.01 - std::abs(u(rng));
    const auto p = orbit_coords(u(rng), random_v(2, rng), t);
    CHECK(horoball_contains(p, HoroballParams<double>{t0, 1.0}));
    CHECK_FALSE(horoball_contains(orbit_coords(0.0, p.v, t0 + 0.01), HoroballParams<double>{t0, 1.0}));
  }
}

TEST_CASE("quotient to omega") {
  const double l = 2 * std::numbers::pi;
  const auto [w, v] = quotient_to_omega(SiegelPoint<double>{-1.0, Eigen::VectorXcd::Zero(1)}, l);
  CHECK(std::abs(w - std::exp(-1.0)) < 1e-16);
  CHECK(v.isZero());

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 3);
  for (int k = 0; k < 200; ++k) {
    const double ll = u(rng), t0 = u(rng) - 1.5;
    const auto p = orbit_coords(u(rng), random_v(2, rng), t0 - u(rng));
    const auto q = quotient_to_omega(p, ll);
    const auto q2 = quotient_to_omega(SiegelPoint<double>{p.a - C(0, ll), p.v}, ll);
    CHECK(std::abs(q.first - q2.first) <= 1e-12 * std::abs(q.first));
    CHECK(std::abs(q.first) < lambda_const(t0, ll) * std::exp(-std::numbers::pi * p.v.squaredNorm() / ll));
  }
  CHECK_THROWS_AS(quotient_to_omega(SiegelPoint<double>{1.0, Eigen::VectorXcd::Zero(1)}, l), std::domain_error);
}

TEST_CASE("lambda constant") {
  const double two_pi = 2 * std::numbers::pi;
  CHECK(lambda_const(0.0, two_pi) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(lambda_const(40.0, 1.0) == doctest::Approx(1.0));
  CHECK(lambda_const(1.0, 1.0) < lambda_const(2.0, 1.0));
  // e^{-2 t0} = l.
  CHECK(lambda_const(-0.5 * std::log(2.0), 2.0) == doctest::Approx(std::exp(-two_pi)).epsilon(1e-14));
  CHECK_THROWS_AS(lambda_const(0.0, 0.0), std::domain_error);
}

TEST_CASE("rescale") {
  const double l = 3.7;
  const N r = rescale(N::central(l, 2), l);
  CHECK(r.s == doctest::Approx(2 * std::numbers::pi));
  CHECK(r.v.isZero());
  const N e = rescale(N::identity(2), l);
  CHECK(e.s == 0);
  CHECK(e.v.isZero());

  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    const N g = random_n(2, rng), h = random_n(2, rng);
    const N a = rescale(compose(g, h), l), b = compose(rescale(g, l), rescale(h, l));
    CHECK(std::abs(a.s - b.s) < 1e-12);
    CHECK((a.v - b.v).norm() < 1e-12);
  }
}
