// Acceptance run: one PASS/FAIL line per criterion.
//
// usage: cuspforge_acceptance [path-to-cuspforge-cli]
// Without the CLI path, criterion 12 compares two in-process runs instead.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cuspforge/cayley.hpp"
#include "cuspforge/curvature.hpp"
#include "cuspforge/cusp_bundle.hpp"
#include "cuspforge/profile.hpp"
#include "cuspforge/psh.hpp"
#include "cuspforge/suites.hpp"

using namespace cuspforge;
using C = std::complex<double>;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const CutoffProfile& default_profile() {
  static const CutoffProfile p = build_cutoff(6, {1, 5});
  return p;
}

Eigen::VectorXcd random_cvector(Eigen::Index m, std::mt19937_64& rng, double scale = 1) {
  std::normal_distribution<double> g(0, scale);
  Eigen::VectorXcd v(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double re = g(rng), im = g(rng);
    v(k) = C(re, im);
  }
  return v;
}

Outcome hyperbolic_limit() {
  const auto start = Clock::now();
  const CurvatureBlocks b = hs_blocks(MetricPoint::hyperbolic(0.8, 3));
  Eigen::Matrix2d G, F;
  G << -4, -2, -2, -4;
  F.setConstant(-1);
  const double block_err = std::max((b.G - G).cwiseAbs().maxCoeff(), (b.F - F).cwiseAbs().maxCoeff());

  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ut(-1, 3);
  double hol = 0, pinch = 0;
  for (int k = 0; k < 1000; ++k) {
    const MetricPoint mp = MetricPoint::hyperbolic(ut(rng), 2 + k % 3);
    const CurvatureEvaluator Rt = OracleCurvature(mp).evaluator();
    const FrameVector X = random_frame_vector(mp.n, rng, &mp), Y = random_frame_vector(mp.n, rng, &mp);
    hol = std::max(hol, std::abs(Rt(X, X.J(), X, X.J()) + 4));
    const double s = sectional(Rt, X, Y, mp);
    pinch = std::max({pinch, -4 - s, s + 1});
  }
  const double secs = seconds_since(start);
  return {block_err <= 1e-12 && hol <= 1e-8 && pinch <= 1e-8 && secs < 10,
          "blocks " + fmt(block_err) + ", |hol + 4| " + fmt(hol) + ", pinching excess " + fmt(pinch) + ", " +
              fmt(secs) + " s"};
}

Outcome formula_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> ut(6e-4, 6);
  double worst = 0;
  for (int n : {2, 3, 4})
    for (int k = 0; k < 1000; ++k) {
      const MetricPoint mp = MetricPoint::from_profile(default_profile(), ut(rng), n);
      const FrameVector Y = random_frame_vector(n, rng), Xi = random_frame_vector(n, rng);
      const double o = OracleCurvature(mp)(Y, Y.J(), Xi, Xi.J());
      // Relative to the natural scale |Y|^2 |Xi|^2 of a quartic form.
      const double scale = metric_norm2(Y, mp) * metric_norm2(Xi, mp);
      worst = std::max(worst, std::abs(bisectional(Y, Xi, mp) - o) / scale);
    }
  const double secs = seconds_since(start);
  return {worst <= 1e-6 && secs < 60, "max relative defect " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome hbc_certificate_run() {
  const HbcReport r2 = hbc_certificate(default_profile(), 10000, 7, 2);
  const HbcReport r3 = hbc_certificate(default_profile(), 10000, 7, 3);
  const bool ok = r2.passed && r3.passed && r2.max_normalized < -1e-10 && r3.max_normalized < -1e-10;
  return {ok, "max normalized HBC " + fmt(std::max(r2.max_normalized, r3.max_normalized)) +
                  (r2.witness.empty() ? "" : ", " + r2.witness) + (r3.witness.empty() ? "" : ", " + r3.witness)};
}

Outcome ricci_remark() {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> u(0, 1);
  double cosh_excess = -1e300, einstein = 0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 2 + k % 3;
    const FrameVector Xi = random_frame_vector(n, rng);
    const MetricPoint c = MetricPoint::from_profile(default_profile(), 6e-4 + (1 - 6e-4) * u(rng), n);
    cosh_excess = std::max(cosh_excess, ricci(Xi, c) + 2 * metric_norm2(Xi, c) - 1e-10);
    const MetricPoint e = MetricPoint::from_profile(default_profile(), 5 + u(rng), n);
    einstein = std::max(einstein, std::abs(ricci(Xi, e) + (2 * n + 2) * metric_norm2(Xi, e)) / metric_norm2(Xi, e));
  }
  return {cosh_excess <= 0 && einstein <= 1e-8,
          "cosh max(Ric + 2|Xi|^2) " + fmt(cosh_excess + 1e-10) + ", Einstein defect " + fmt(einstein)};
}

Outcome section3_algebra() {
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> ua(-2, 2), ut(0, 3);
  double defect = 0;
  bool disc = true;
  for (int k = 0; k < 1000; ++k) {
    const MetricPoint mp = MetricPoint::hyperbolic(ut(rng), 2 + k % 3);
    const CurvatureEvaluator Rt = OracleCurvature(mp).evaluator();
    const FrameVector v = random_frame_vector(mp.n, rng, &mp), w = random_frame_vector(mp.n, rng, &mp);
    const auto [lhs, rhs] = poly_P(v, w, ua(rng), Rt);
    defect = std::max(defect, std::abs(lhs - rhs));
    disc = disc && discriminant_inequality(v, w, Rt);
  }
  return {defect <= 1e-8 && disc, "poly_P defect " + fmt(defect) + (disc ? "" : ", discriminant violated")};
}

Outcome cutoff_instance() {
  const CutoffProfile& p = default_profile();
  const auto m = p.positivity_margins();
  double lowest = m[0].first;
  for (const auto& x : m) lowest = std::min(lowest, x.first);
  // volatile keeps the references on the runtime libm path instead of compile-time folding.
  volatile double lo = 0.9, hi = 5.1, end = 6.0;
  const double c = std::cosh(lo), s = std::sinh(lo), e = std::exp(hi), e6 = std::exp(end);
  const bool jets = p.jet(0) == Jet(1, 0, 1, 0) && p.jet(6) == Jet(e6, e6, e6, e6) &&
                    p.jet(0.9) == Jet(c, s, c, s) && p.jet(5.1) == Jet(e, e, e, e);
  return {lowest > 0 && jets && p.grid().size() == 10001,
          "smallest margin " + fmt(lowest) + (jets ? ", endpoint jets exact" : ", endpoint jets differ")};
}

Outcome psi_ode() {
  const PsiSolution s = solve_psi(default_profile(), 0.01);
  double id = 0;
  for (Eigen::Index k = 0; k < s.grid.size(); ++k)
    if (s.grid(k) >= 5) id = std::max(id, std::abs(s.values(k) - s.grid(k)));
  return {s.max_residual() <= 1e-8 && id <= 1e-10,
          "residual " + fmt(s.max_residual()) + ", identity defect " + fmt(id)};
}

Outcome bundle_invariance() {
  std::mt19937_64 rng(108);
  std::normal_distribution<double> g;
  CuspParams<double> cp;
  cp.n = 3;
  double err = 0;
  for (int k = 0; k < 1000; ++k) {
    const HeisenbergElement<double> h(g(rng), random_cvector(2, rng));
    const BundlePoint<double> p{C(0.05, -0.03), random_cvector(2, rng)};
    err = std::max(err, std::abs(h_norm(lattice_act(h, p, cp), cp) - h_norm(p, cp)) / h_norm(p, cp));
  }
  bool negative = true;
  for (double l : {0.1, 1.0, 2 * std::numbers::pi, 17.0, 1000.0}) {
    CuspParams<double> q = cp;
    q.l = l;
    negative = negative &&
               Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(bundle_curvature(q)).eigenvalues().maxCoeff() < 0;
  }
  return {err <= 1e-12 && negative, "h_norm relative defect " + fmt(err) + (negative ? ", curvature negative" : "")};
}

Outcome cayley_density() {
  const auto start = Clock::now();
  std::mt19937_64 rng(109);
  double worst = 0;
  bool exact = true;
  for (int m : {2, 3}) {
    std::vector<mpq_class> diag;
    for (int i = 0; i < m; ++i) diag.emplace_back(1 + i, 1 + (i % 2));
    const HermitianDiagForm B(diag);
    const QuadMatrix Bm = B.matrix();
    for (long d : {1L, 2L, 3L, 7L})
      for (int k = 0; k < 100; ++k) {
        const UlApproximation a = approximate_in_Ul(random_unitary(B, rng), B, d, 1e-6);
        exact = exact && is_zero(QuadMatrix(a.M.transpose() * Bm * conj(a.M) - Bm));
        worst = std::max(worst, a.error);
      }
  }
  const double secs = seconds_since(start);
  return {exact && worst <= 1e-6 && secs < 120,
          std::string(exact ? "all exact" : "inexact output") + ", max error " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome parabolic_rationality() {
  std::mt19937_64 rng(110);
  std::uniform_int_distribution<int> coeff(-3, 3), den(1, 5);
  int cases = 0;
  bool ok = true;
  for (long d : {1L, 2L, 3L, 7L})
    for (int m = 1; m <= 3; ++m) {
      const QuadMatrix H = siegel_form(m + 2, d);
      for (int k = 0; k < 10; ++k) {
        QuadVector v(m);
        for (int j = 0; j < m; ++j) v(j) = k == 0 ? QuadElem(0) : QuadElem(coeff(rng), coeff(rng), d);
        const QuadMatrix M = heisenberg_matrix(mpq_class(coeff(rng), den(rng)), v, d);
        const QuadVector x = unipotent_fixed_vector(M, H);
        const QuadElem h = form_value(x, H, x);
        ok = ok && is_zero(QuadMatrix(M * x - x)) && h.is_rational() && sgn(h.re()) <= 0;
        ++cases;
      }
    }
  return {ok, std::to_string(cases) + " Heisenberg matrices"};
}

Outcome psh_suite() {
  const RegMaxParams p{0.5, 33};
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> u(-3, 3), r(0, 3), unit(0, 1);
  double sym = 0, larger = 0, dominance = 0;
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng), y = u(rng);
    sym = std::max(sym, std::abs(reg_max(x, y, p) - reg_max(y, x, p)));
    const double far = x + 2 * p.eta + std::abs(u(rng));
    larger = std::max(larger, std::abs(reg_max(x, far, p) - far));
    dominance = std::max(dominance, std::max(x, y) - reg_max(x, y, p));
  }
  const bool regmax_ok = sym <= 1e-9 && larger <= 1e-9 && dominance <= 1e-9;

  CuspParams<double> cp;
  cp.n = 3;
  double min_eig = 1e300;
  for (int k = 0; k < 100; ++k) {
    Eigen::VectorXcd v = random_cvector(2, rng);
    v *= r(rng) / v.norm();
    Eigen::VectorXcd z(3);
    z << 0, v;
    min_eig = std::min(min_eig, complex_hessian([&](const Eigen::VectorXcd& w) {
                                  return phi_cusp(w(0), Eigen::VectorXcd(w.tail(2)), cp);
                                }, z).min_eigenvalue);
  }

  std::vector<ChiSample> samples;
  for (int k = 0; k < 10000; ++k) {
    const double dist = 1e-6 + 2 * unit(rng);
    samples.push_back({1 / dist, 1 / dist});
  }
  const ChiFunction chi = build_chi(samples);
  bool dominates = true;
  for (const auto& s : samples) dominates = dominates && chi(s.psi) > s.phi;

  const auto polar = [](double rad, double ang) {
    Eigen::VectorXcd z(1);
    z(0) = std::polar(rad, ang);
    return z;
  };
  std::vector<ChiSample> band;
  for (int k = 0; k < 1000; ++k) {
    const double rad = 0.5 + 0.5 * unit(rng);
    band.push_back({4 * rad * rad + 3, rad * rad});
  }
  const ChiFunction chi2 = build_chi(band);
  GlueDomain dom;
  dom.inside = [](const Eigen::VectorXcd& z) { return z.norm() < 1; };
  for (int k = 0; k < 500; ++k) {
    dom.outer_band.push_back(polar(0.5 + 0.5 * unit(rng), 6.3 * unit(rng)));
    dom.inner_core.push_back(polar(0.05 * unit(rng), 6.3 * unit(rng)));
  }
  const ScalarField phi2 = [](const Eigen::VectorXcd& z) { return 4 * z.squaredNorm() + 2; };
  const ScalarField psi2 = [chi2](const Eigen::VectorXcd& z) { return chi2(z.squaredNorm()); };
  const GluedExhaustion lam = glue_exhaustion(phi2, psi2, dom, p);
  bool exact = lam.band_ok();
  for (const auto& z : dom.outer_band) exact = exact && lam(z) == psi2(z);

  return {regmax_ok && min_eig > 0 && dominates && exact,
          "reg_max defects " + fmt(std::max({sym, larger, dominance})) + ", min Hessian eigenvalue " + fmt(min_eig) +
              (dominates ? ", chi dominates" : ", chi fails") + (exact ? ", band exact" : ", band mismatch")};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) {
    SuiteConfig cfg;
    cfg.seed = 7;
    const std::string a = run_suite(cfg).to_json(false).dump(), b = run_suite(cfg).to_json(false).dump();
    return {a == b, "in-process runs, " + std::to_string(a.size()) + " bytes"};
  }
  const std::string first = "acceptance_run1.json", second = "acceptance_run2.json";
  for (const auto& out : {first, second}) {
    const std::string cmd = "\"" + cli + "\" verify all --seed 7 --out " + out + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) return {false, "cli exited with status " + std::to_string(rc)};
  }
  auto a = nlohmann::json::parse(read_file(first)), b = nlohmann::json::parse(read_file(second));
  a.erase("timings");
  b.erase("timings");
  const bool same = a.dump() == b.dump();
  return {same && a["passed"].get<bool>(), "two CLI runs, " + std::to_string(a.dump().size()) + " bytes" +
                                               (same ? ", identical" : ", differ")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"hyperbolic limit", hyperbolic_limit},
      {"formula-oracle equivalence", formula_oracle},
      {"bisectional certificate", hbc_certificate_run},
      {"Ricci remark", ricci_remark},
      {"curvature algebra", section3_algebra},
      {"cutoff instance", cutoff_instance},
      {"psi ODE", psi_ode},
      {"bundle invariance", bundle_invariance},
      {"Cayley density", cayley_density},
      {"parabolic rationality", parabolic_rationality},
      {"PSH suite", psh_suite},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::printf("[%s] %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
