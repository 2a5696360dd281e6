#include <algorithm>
#include <cmath>
#include <random>
#include <numbers>
#include <ostream>

#include "cuspforge/curvature.hpp"
#include "cuspforge/cusp_bundle.hpp"
#include "cuspforge/profile.hpp"
#include "cuspforge/suites.hpp"

namespace cuspforge {

namespace {

constexpr int kSummarySamples = 200;

void summary_columns(std::ostream& os, const CurvatureSummary& s) {
  os << s.min_hbc << ',' << s.max_hbc << ',' << s.min_ricci << ',' << s.min_sectional << ','
     << s.max_sectional;
}

}  // namespace

void sweep(const SuiteConfig& cfg, const std::string& axis, double from, double to, int steps,
           std::ostream& os) {
  if (axis != "t" && axis != "A" && axis != "l" && axis != "n")
    throw UsageError("unknown sweep axis '" + axis + "' (expected t, A, l or n)");
  if (steps < 1 || !(from <= to) || !std::isfinite(from) || !std::isfinite(to))
    throw UsageError("empty sweep range");
  SuiteConfig base = cfg;
  base.suite = "all";
  base.validate();

  const auto point = [&](int k) { return steps == 1 ? from : from + (to - from) * k / (steps - 1); };
  os.precision(12);

  if (axis == "t") {
    if (!(from > 0 && to <= base.A)) throw UsageError("t range must lie in (0, A]");
    const CutoffProfile prof = build_cutoff(base.A, base.window(), {base.grid_points, 0});
    os << "t,region,min_hbc,max_hbc,min_ricci,min_sectional,max_sectional,max_ricci,ricci_bound\n";
    for (int k = 0; k < steps; ++k) {
      const double t = point(k);
      const MetricPoint mp = MetricPoint::from_profile(prof, t, base.n);
      std::mt19937_64 rng(base.seed);
      double max_ricci = -1e300;
      for (int j = 0; j < kSummarySamples; ++j)
        max_ricci = std::max(max_ricci, ricci(random_frame_vector(base.n, rng, &mp), mp));
      os << t << ',' << to_string(prof.region(t)) << ',';
      summary_columns(os, curvature_summary(mp, kSummarySamples, base.seed));
      os << ',' << max_ricci << ',';
      if (prof.region(t) == ProfileRegion::Cosh) os << -2;
      else if (prof.region(t) == ProfileRegion::Exp) os << -(2 * base.n + 2);
      os << '\n';
    }
  } else if (axis == "A") {
    if (!(from > 0)) throw UsageError("A range must be positive");
    os << "A,passed,min_margin,derivative,at,psi_residual\n";
    for (int k = 0; k < steps; ++k) {
      SuiteConfig c = base;
      c.A = point(k);
      c.window_lo.reset();
      c.window_hi.reset();
      os << c.A << ',';
      try {
        const CutoffProfile prof = build_cutoff(c.A, c.window(), {c.grid_points, 0});
        const auto margins = prof.positivity_margins();
        int worst = 0;
        for (int j = 1; j < 4; ++j)
          if (margins[j].first < margins[worst].first) worst = j;
        const PsiSolution psi = solve_psi(prof, std::min(c.psi_t_min, c.window().first / 2));
        os << "1," << margins[worst].first << ',' << worst << ',' << margins[worst].second << ','
           << psi.max_residual() << '\n';
      } catch (const CutoffConstructionError& e) {
        os << "0," << e.value << ',' << e.derivative << ',' << e.location << ",\n";
      } catch (const std::exception&) {
        os << "0,,,,\n";
      }
    }
  } else if (axis == "l") {
    if (!(from > 0)) throw UsageError("l range must be positive");
    os << "l,lambda,lambda_closed_form,curvature_eigenvalue\n";
    for (int k = 0; k < steps; ++k) {
      CuspParams<double> cp;
      cp.l = point(k);
      cp.t0 = base.t0;
      cp.n = base.n;
      const double closed = std::exp(-2 * std::numbers::pi * std::exp(-2 * cp.t0) / cp.l);
      os << cp.l << ',' << cp.lambda() << ',' << closed << ',' << bundle_curvature(cp)(0, 0).real()
         << '\n';
    }
  } else {
    const int lo = static_cast<int>(std::ceil(from)), hi = static_cast<int>(std::floor(to));
    if (lo < 2 || hi > 8 || lo > hi) throw UsageError("n range must contain integers in [2, 8]");
    const CutoffProfile prof = build_cutoff(base.A, base.window(), {base.grid_points, 0});
    const double t = 0.5 * (base.window().first + base.window().second);
    os << "n,t,min_hbc,max_hbc,min_ricci,min_sectional,max_sectional\n";
    const int count = std::min(steps, hi - lo + 1);
    for (int k = 0; k < count; ++k) {
      const int n = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
      os << n << ',' << t << ',';
      summary_columns(os, curvature_summary(MetricPoint::from_profile(prof, t, n), kSummarySamples, base.seed));
      os << '\n';
    }
  }
}

}  // namespace cuspforge
