#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cuspforge/curvature.hpp"
#include "cuspforge/profile.hpp"

using namespace cuspforge;

namespace {

const CutoffProfile& default_profile() {
  static const CutoffProfile p = build_cutoff(6, {1, 5});
  return p;
}

FrameVector unit_r(int n) {
  FrameVector v = FrameVector::zero(n);
  v.u(0) = 1;
  return v;
}

FrameVector pure_z(int n) {
  FrameVector v = FrameVector::zero(n);
  v.beta = 1;
  return v;
}

}  // namespace

TEST_CASE("frame vectors") {
  std::mt19937_64 rng(21);
  const MetricPoint mp = MetricPoint::from_profile(default_profile(), 2.7, 3);
  for (int k = 0; k < 20; ++k) {
    const FrameVector X = random_frame_vector(3, rng), Y = random_frame_vector(3, rng);
    const FrameVector JJ = X.J().J();
    CHECK((JJ + X).components(mp).norm() < 1e-14);
    CHECK(metric_inner(X.J(), Y.J(), mp) == doctest::Approx(metric_inner(X, Y, mp)));
    CHECK(std::abs(metric_inner(X, X.J(), mp)) < 1e-12 * metric_norm2(X, mp));
    const Eigen::VectorXd c = X.components(mp);
    CHECK(c.squaredNorm() == doctest::Approx(metric_norm2(X, mp)));
    CHECK((FrameVector::from_components(c, mp).components(mp) - c).norm() < 1e-12);
  }
  const FrameVector u = random_frame_vector(3, rng, &mp);
  CHECK(metric_norm2(u, mp) == doctest::Approx(1));
}

TEST_CASE("hyperbolic blocks") {
  for (double t : {0.0, 1.0, 3.3}) {
    const CurvatureBlocks b = hs_blocks(MetricPoint::hyperbolic(t, 3));
    CHECK(b.G(0, 0) == doctest::Approx(-4).epsilon(1e-12));
    CHECK(b.G(1, 1) == doctest::Approx(-4).epsilon(1e-12));
    CHECK(b.G(0, 1) == doctest::Approx(-2).epsilon(1e-12));
    CHECK(b.G(1, 0) == doctest::Approx(-2).epsilon(1e-12));
    CHECK((b.F + Eigen::Matrix2d::Ones()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("cosh blocks") {
  for (double t : {0.05, 0.4, 0.9}) {
    const CurvatureBlocks b = hs_blocks(MetricPoint::cosh_region(t, 2));
    const double th = std::tanh(t);
    CHECK(b.G(0, 0) == doctest::Approx(-4 * th * th).epsilon(1e-12));
    CHECK(b.G(1, 1) == doctest::Approx(-4).epsilon(1e-12));
    CHECK(b.G(0, 1) == doctest::Approx(-2).epsilon(1e-12));
    CHECK((b.F + Eigen::Matrix2d::Ones()).cwiseAbs().maxCoeff() < 1e-12);
  }
  const CurvatureBlocks b = hs_blocks(MetricPoint::cosh_region(1e-6, 2));
  CHECK(std::abs(b.G(0, 0)) < 1e-10);
}

TEST_CASE("blocks against the oracle") {
  for (double t : {0.3, 1.5, 2.5, 3.5, 4.5, 5.5}) {
    const MetricPoint mp = MetricPoint::from_profile(default_profile(), t, 3);
    const Eigen::Matrix<double, 6, 6> M = OracleCurvature(mp).block_matrix();
    const CurvatureBlocks b = hs_blocks(mp);
    CHECK((M.block<2, 2>(0, 0) - b.G).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((M.block<2, 2>(2, 2) - b.F).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((M.block<2, 2>(4, 4) - b.F).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(M.block<2, 4>(0, 2).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(M.block<2, 2>(2, 4).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("hyperbolic oracle") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1, 2);
  for (int k = 0; k < 300; ++k) {
    const MetricPoint mp = MetricPoint::hyperbolic(u(rng), 2 + k % 3);
    const OracleCurvature R(mp);
    const CurvatureEvaluator Rt = R.evaluator(), Hc = constant_holomorphic_evaluator(mp);
    const FrameVector X = random_frame_vector(mp.n, rng, &mp), Y = random_frame_vector(mp.n, rng, &mp),
                      Z = random_frame_vector(mp.n, rng, &mp), W = random_frame_vector(mp.n, rng, &mp);
    CHECK(Rt(X, X.J(), X, X.J()) == doctest::Approx(-4).epsilon(1e-8));
    const double s = sectional(Rt, X, Y, mp);
    CHECK(s >= -4 - 1e-8);
    CHECK(s <= -1 + 1e-8);
    CHECK(Rt(X, Y, Z, W) == doctest::Approx(Hc(X, Y, Z, W)).epsilon(1e-8));
    CHECK(bianchi_check(Rt, X, Y) < 1e-8);
    CHECK(discriminant_inequality(X, Y, Rt));
    const auto [lhs, rhs] = poly_P(X, Y, u(rng), Rt);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("poly_P special cases") {
  std::mt19937_64 rng(23);
  const MetricPoint mp = MetricPoint::hyperbolic(0.7, 3);
  const CurvatureEvaluator Rt = OracleCurvature(mp).evaluator();
  const FrameVector v = random_frame_vector(3, rng, &mp), w = random_frame_vector(3, rng, &mp);
  const auto [l0, r0] = poly_P(v, w, 0, Rt);
  CHECK(l0 == doctest::Approx(Rt(w, w.J(), w, w.J())));
  CHECK(r0 == doctest::Approx(Rt(w, w.J(), w, w.J())));
  const auto [l1, r1] = poly_P(v, v, 1, Rt);
  CHECK(std::abs(l1) < 1e-12);
  CHECK(std::abs(r1) < 1e-12);
  CHECK(discriminant_inequality(v, v, Rt));
}

TEST_CASE("oracle tensor symmetries") {
  for (double t : {0.2, 1.7, 3.0, 4.4, 5.9}) {
    const auto s = OracleCurvature(MetricPoint::from_profile(default_profile(), t, 3)).symmetry_defects();
    CHECK(s.first_pair < 1e-8);
    CHECK(s.last_pair < 1e-8);
    CHECK(s.pair_swap < 1e-8);
    CHECK(s.bianchi < 1e-8);
  }
}

TEST_CASE("bisectional formula against the oracle") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> ut(6e-4, 6);
  for (int n : {2, 3, 4}) {
    for (int k = 0; k < 300; ++k) {
      const MetricPoint mp = MetricPoint::from_profile(default_profile(), ut(rng), n);
      const FrameVector Y = random_frame_vector(n, rng), Xi = random_frame_vector(n, rng);
      const double o = OracleCurvature(mp)(Y, Y.J(), Xi, Xi.J());
      CHECK(std::abs(bisectional(Y, Xi, mp) - o) <= 1e-6 * (1 + metric_norm2(Y, mp) * metric_norm2(Xi, mp)));
    }
  }
}

TEST_CASE("bisectional special values") {
  const CutoffProfile& p = default_profile();
  std::mt19937_64 rng(25);
  for (double t : {0.5, 2.2, 5.5}) {
    const MetricPoint mp = MetricPoint::from_profile(p, t, 3);
    const FrameVector Z = pure_z(3);
    CHECK(bisectional(Z, Z, mp) == doctest::Approx(hs_blocks(mp).G(1, 1) * std::pow(mp.g, 4)).epsilon(1e-10));
    CHECK(bisectional(FrameVector::zero(3), random_frame_vector(3, rng), mp) == 0);
    CHECK(bisectional(random_frame_vector(3, rng), FrameVector::zero(3), mp) == 0);
    CHECK(ricci(FrameVector::zero(3), mp) == 0);
  }
  const MetricPoint e = MetricPoint::from_profile(p, 5.5, 3);
  CHECK(bisectional(unit_r(3), unit_r(3), e) == doctest::Approx(-4 * std::pow(e.f, 4)).epsilon(1e-10));
}

TEST_CASE("ricci") {
  std::mt19937_64 rng(26);
  const CutoffProfile& p = default_profile();
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 3;
    const MetricPoint cosh = MetricPoint::from_profile(p, 6e-4 + 0.99 * u(rng), n);
    const FrameVector Xi = random_frame_vector(n, rng);
    CHECK(ricci(Xi, cosh) <= -2 * metric_norm2(Xi, cosh) + 1e-10);
    const MetricPoint ex = MetricPoint::from_profile(p, 5 + u(rng), n);
    CHECK(ricci(Xi, ex) == doctest::Approx(-(2 * n + 2) * metric_norm2(Xi, ex)).epsilon(1e-8));
    const MetricPoint mid = MetricPoint::from_profile(p, 1 + 4 * u(rng), n);
    CHECK(ricci(Xi, mid) == doctest::Approx(OracleCurvature(mid).ricci_trace(Xi)).epsilon(1e-8));
  }
}

TEST_CASE("rz plane curvature") {
  std::mt19937_64 rng(27);
  std::normal_distribution<double> g;
  for (double t : {0.5, 2.0, 4.0}) {
    const MetricPoint mp = MetricPoint::from_profile(default_profile(), t, 3);
    const OracleCurvature R(mp);
    Eigen::VectorXcd U(2), V(2), W(2);
    U << 1, 0;
    CHECK(rz_plane_curvature(U, U, mp) == doctest::Approx(-mp.f * mp.g * mp.g * mp.f2));
    V << std::complex<double>(0, 1), 0;
    CHECK(rz_plane_curvature(U, V, mp) == 0);
    for (int k = 0; k < 20; ++k) {
      for (auto* x : {&U, &V, &W})
        for (int j = 0; j < 2; ++j) (*x)(j) = {g(rng), g(rng)};
      const double a = g(rng);
      CHECK(rz_plane_curvature(U + a * W, V, mp) ==
            doctest::Approx(rz_plane_curvature(U, V, mp) + a * rz_plane_curvature(W, V, mp)));
      const double o = R(FrameVector(U, 0, 0), pure_z(3), FrameVector(V, 0, 0), pure_z(3));
      CHECK(rz_plane_curvature(U, V, mp) == doctest::Approx(o).epsilon(1e-8));
    }
  }
}

TEST_CASE("holomorphic bisectional certificate") {
  const HbcReport rep = hbc_certificate(default_profile(), 2000, 7, 3);
  CHECK(rep.passed);
  CHECK(rep.max_normalized < -1e-10);
  CHECK(rep.max_cauchy_schwarz_ratio <= 1 + 1e-12);
  int total = 0;
  for (const auto& row : rep.regions) {
    CHECK(row.samples > 0);
    total += row.samples;
  }
  CHECK(total == rep.samples);
  // Same seed, same report.
  const HbcReport again = hbc_certificate(default_profile(), 2000, 7, 3);
  CHECK(again.max_normalized == rep.max_normalized);
}

TEST_CASE("curvature summary and csv") {
  const CurvatureSummary s = curvature_summary(MetricPoint::hyperbolic(1, 3), 200, 1);
  CHECK(s.min_hbc >= -4 - 1e-8);
  CHECK(s.max_hbc <= -2 + 1e-8);
  CHECK(s.min_ricci == doctest::Approx(-8));
  CHECK(s.min_sectional >= -4 - 1e-8);
  CHECK(s.max_sectional <= -1 + 1e-8);
  std::ostringstream os;
  write_curvature_csv(os, {s, s});
  CHECK(os.str().rfind("t,min_hbc,max_hbc,min_ricci,min_sectional,max_sectional\n", 0) == 0);
}
