#include "cuspforge/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "cuspforge/cayley.hpp"
#include "cuspforge/curvature.hpp"
#include "cuspforge/cusp_bundle.hpp"
#include "cuspforge/heisenberg.hpp"
#include "cuspforge/profile.hpp"
#include "cuspforge/psh.hpp"

namespace cuspforge {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

std::pair<double, double> SuiteConfig::window() const {
  return {window_lo.value_or(A / 6), window_hi.value_or(5 * A / 6)};
}

void SuiteConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw UsageError("unknown suite '" + suite + "'");
  if (n < 2 || n > 8) throw UsageError("n must lie in [2, 8]");
  if (d != 0) {
    try {
      check_field(d);
    } catch (const std::domain_error& e) {
      throw UsageError(std::string("d: ") + e.what());
    }
  }
  if (!(A > 0)) throw UsageError("A must be positive");
  const auto [lo, hi] = window();
  if (!(0 < lo && lo < hi && hi < A)) throw UsageError("window must satisfy 0 < lo < hi < A");
  if (!(l > 0)) throw UsageError("l must be positive");
  if (!std::isfinite(t0)) throw UsageError("t0 must be finite");
  if (!(eps >= 1e-12 && eps <= 1e-2)) throw UsageError("eps must lie in [1e-12, 1e-2]");
  if (samples < 1 || grid_points < 10 || hbc_samples < 1 || cayley_samples < 1)
    throw UsageError("sample counts must be positive (grid_points >= 10)");
  if (!(psi_t_min > 0 && psi_t_min < lo)) throw UsageError("psi_t_min must lie in (0, window lo)");
  if (!(eta > 0)) throw UsageError("eta must be positive");
  if (!(c0 > 0)) throw UsageError("c0 must be positive");
}

json SuiteConfig::to_json() const {
  json j = {{"suite", suite},   {"n", n},
            {"d", d},           {"A", A},
            {"l", l},           {"t0", t0},
            {"eps", eps},       {"samples", samples},
            {"seed", seed},     {"grid_points", grid_points},
            {"hbc_samples", hbc_samples}, {"cayley_samples", cayley_samples},
            {"psi_t_min", psi_t_min},     {"eta", eta},
            {"c0", c0}};
  const auto [lo, hi] = window();
  j["window"] = {lo, hi};
  return j;
}

void SuiteConfig::merge_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a flat JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "suite") suite = value.get<std::string>();
      else if (key == "n") n = value.get<int>();
      else if (key == "d") d = value.get<long>();
      else if (key == "A") A = value.get<double>();
      else if (key == "window") {
        if (value.is_null()) {
          window_lo.reset();
          window_hi.reset();
        } else {
          const auto w = value.get<std::vector<double>>();
          if (w.size() != 2) throw UsageError("window must have two entries");
          window_lo = w[0];
          window_hi = w[1];
        }
      } else if (key == "l") l = value.get<double>();
      else if (key == "t0") t0 = value.get<double>();
      else if (key == "eps") eps = value.get<double>();
      else if (key == "samples") samples = value.get<int>();
      else if (key == "seed") seed = value.get<std::uint64_t>();
      else if (key == "grid_points") grid_points = value.get<int>();
      else if (key == "hbc_samples") hbc_samples = value.get<int>();
      else if (key == "cayley_samples") cayley_samples = value.get<int>();
      else if (key == "psi_t_min") psi_t_min = value.get<double>();
      else if (key == "eta") eta = value.get<double>();
      else if (key == "c0") c0 = value.get<double>();
      else throw UsageError("unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

std::string SuiteConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  SuiteConfig cfg;
  try {
    cfg.merge_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  return cfg;
}

namespace {

json optional_number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

}  // namespace

json Report::to_json(bool with_timings) const {
  json checks_json = json::array();
  for (const CheckRecord& c : checks) {
    json r = {{"suite", c.suite},
              {"name", c.name},
              {"passed", c.passed},
              {"value", optional_number(c.value)},
              {"tolerance", optional_number(c.tolerance)},
              {"margin", optional_number(c.margin)}};
    if (!c.witness.empty()) r["witness"] = c.witness;
    if (!c.details.is_null()) r["details"] = c.details;
    checks_json.push_back(std::move(r));
  }
  json j = {{"suite", suite}, {"passed", passed}, {"config_hash", config_hash},
            {"config", config}, {"checks", checks_json}};
  if (with_timings) j["timings"] = timings;
  return j;
}

const CheckRecord* Report::find(const std::string& s, const std::string& name) const {
  for (const CheckRecord& c : checks)
    if (c.suite == s && c.name == name) return &c;
  return nullptr;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"profile", "curvature", "cayley", "psh", "bundle", "all"};
  return names;
}

// ---------------------------------------------------------------------------
// Check bookkeeping

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

class Checks {
 public:
  Checks(std::string suite, std::vector<CheckRecord>& out) : suite_(std::move(suite)), out_(out) {}

  /// Passes iff value <= tol.
  void le(const std::string& name, double value, double tol, std::string witness = {},
          json details = nullptr) {
    const bool ok = value <= tol;
    push(name, ok, value, tol, tol - value, ok ? std::string{} : std::move(witness), std::move(details));
  }

  /// Passes iff value > bound.
  void gt(const std::string& name, double value, double bound, std::string witness = {},
          json details = nullptr) {
    const bool ok = value > bound;
    push(name, ok, value, bound, value - bound, ok ? std::string{} : std::move(witness),
         std::move(details));
  }

  void truth(const std::string& name, bool ok, std::string witness = {}, json details = nullptr) {
    push(name, ok, std::nullopt, std::nullopt, std::nullopt, ok ? std::string{} : std::move(witness),
         std::move(details));
  }

  /// Runs body; an escaping exception becomes a failed check named `name`.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      truth(name, false, std::string("exception: ") + e.what());
    }
  }

 private:
  void push(const std::string& name, bool ok, std::optional<double> value, std::optional<double> tol,
            std::optional<double> margin, std::string witness, json details) {
    CheckRecord r;
    r.suite = suite_;
    r.name = name;
    r.passed = ok;
    r.value = value;
    r.tolerance = tol;
    r.margin = margin;
    r.witness = std::move(witness);
    r.details = std::move(details);
    out_.push_back(std::move(r));
  }

  std::string suite_;
  std::vector<CheckRecord>& out_;
};

using Rng = std::mt19937_64;

Eigen::VectorXcd random_cvector(Eigen::Index m, Rng& rng, double scale = 1) {
  std::normal_distribution<double> normal(0, scale);
  Eigen::VectorXcd v(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = {re, im};
  }
  return v;
}

HeisenbergElement<double> random_element(Eigen::Index m, Rng& rng) {
  std::normal_distribution<double> normal;
  const double s = normal(rng);
  return {s, random_cvector(m, rng)};
}

double rel_err(double a, double b) { return std::abs(a - b) / (1 + std::abs(b)); }

// ---------------------------------------------------------------------------
// profile

void profile_suite(const SuiteConfig& cfg, Checks& c) {
  const auto window = cfg.window();
  std::optional<CutoffProfile> prof;
  c.guard("cutoff_positivity", [&] {
    prof.emplace(build_cutoff(cfg.A, window, {cfg.grid_points, 0}));
    const auto margins = prof->positivity_margins();
    json details = json::object();
    double lowest = margins[0].first;
    const char* names[] = {"f", "df", "d2f", "d3f"};
    for (int k = 0; k < 4; ++k) {
      details[names[k]] = {{"min", margins[k].first}, {"at", margins[k].second}};
      lowest = std::min(lowest, margins[k].first);
    }
    c.gt("cutoff_positivity", lowest, 0, "nonpositive derivative on the grid", details);
  });

  if (!cfg.window_lo && !cfg.window_hi)
    c.truth("A_at_least_working_c0", cfg.A >= cfg.c0,
            "A = " + num(cfg.A) + " is below the working C0 " + num(cfg.c0));

  c.guard("working_c0_reproducible", [&] {
    const double found = search_working_c0(4, 8, cfg.grid_points, 1e-4);
    c.le("working_c0_reproducible", std::abs(found - cfg.c0), 1e-4,
         "search found " + num(found) + ", config has " + num(cfg.c0), json{{"found", found}});
  });

  c.guard("construction_failure_reported", [&] {
    try {
      build_cutoff(2, {2.0 / 6, 10.0 / 6}, {cfg.grid_points, 0});
      c.truth("construction_failure_reported", false, "A = 2 unexpectedly passed");
    } catch (const CutoffConstructionError& e) {
      c.truth("construction_failure_reported", e.derivative >= 0 && e.derivative <= 3, e.what(),
              json{{"derivative", e.derivative}, {"location", e.location}, {"value", e.value}});
    }
  });

  if (!prof) return;
  const CutoffProfile& p = *prof;
  const auto [lo, hi] = window;

  c.guard("endpoint_jets_exact", [&] {
    Rng rng(cfg.seed);
    bool ok = p.jet(0) == Jet(1, 0, 1, 0);
    const double eA = std::exp(cfg.A);
    ok = ok && p.jet(cfg.A) == Jet(eA, eA, eA, eA);
    std::uniform_real_distribution<double> in_cosh(0, lo), in_exp(hi, cfg.A);
    for (int k = 0; k < 100; ++k) {
      const double t = in_cosh(rng), u = in_exp(rng);
      const double ch = std::cosh(t), sh = std::sinh(t), e = std::exp(u);
      ok = ok && p.jet(t) == Jet(ch, sh, ch, sh) && p.jet(u) == Jet(e, e, e, e);
    }
    c.truth("endpoint_jets_exact", ok, "jet differs from cosh/exp in an end region");
  });

  c.guard("window_blend", [&] {
    const double len = hi - lo, a = lo + 1e-3 * len, b = hi - 1e-3 * len;
    const Jet ca(std::cosh(a), std::sinh(a), std::cosh(a), std::sinh(a));
    const double eb = std::exp(b);
    const double err = std::max(((p.jet(a) - ca).array() / ca.array().abs()).abs().maxCoeff(),
                                ((p.jet(b) - Jet(eb, eb, eb, eb)) / eb).cwiseAbs().maxCoeff());
    c.le("window_blend", err, 1e-12, "jets jump at the window edges");
  });

  c.guard("g_closed_forms", [&] {
    const Eigen::Vector3d g0 = g_of(p, 0);
    bool exact0 = g0(0) == 0 && g0(1) == 1;
    double err = 0;
    for (double t : {0.25 * lo, 0.75 * lo}) err = std::max(err, rel_err(g_of(p, t)(0), std::sinh(2 * t) / 2));
    for (double t : {hi, 0.5 * (hi + cfg.A), cfg.A}) {
      const Eigen::Vector3d g = g_of(p, t);
      err = std::max({err, rel_err(g(0), std::exp(2 * t)) , rel_err(g(1), 2 * std::exp(2 * t))});
    }
    c.truth("g_at_zero", exact0, "g(0) = " + num(g0(0)) + ", g'(0) = " + num(g0(1)));
    c.le("g_closed_forms", err, 1e-14);
  });

  c.guard("jet_richardson", [&] {
    double worst = 0;
    json ratios = json::array();
    for (double x : {0.35, 0.5, 0.65}) {
      const double t = lo + x * (hi - lo);
      for (int order = 1; order <= 3; ++order) {
        const double e1 = jet_fd_error(p, order, t, 0.02), e2 = jet_fd_error(p, order, t, 0.01);
        const double r = e1 / e2;
        ratios.push_back(r);
        worst = std::max(worst, std::abs(r - 4));
      }
    }
    c.le("jet_richardson", worst, 0.5, "finite-difference ratio outside 4 +- 0.5", json{{"ratios", ratios}});
  });

  std::optional<PsiSolution> psi;
  c.guard("psi_residual", [&] {
    psi.emplace(solve_psi(p, cfg.psi_t_min));
    c.le("psi_residual", psi->max_residual(), 1e-8, "ODE residual too large",
         json{{"points", psi->grid.size()}, {"t_min", cfg.psi_t_min}});
  });
  if (psi) {
    double id_err = 0, below = -1e300;
    bool increasing = true;
    // Comparison with psi = t holds on the final stretch where g <= e^{2t}.
    Eigen::Index tail = psi->grid.size() - 1;
    while (tail > 0 && g_of(p, psi->grid(tail - 1))(0) <= std::exp(2 * psi->grid(tail - 1)) * (1 + 1e-12)) --tail;
    for (Eigen::Index k = 0; k < psi->grid.size(); ++k) {
      const double t = psi->grid(k), v = psi->values(k);
      if (t >= hi) id_err = std::max(id_err, std::abs(v - t));
      if (k >= tail) below = std::max(below, v - t);
      if (k > 0 && !(v > psi->values(k - 1))) increasing = false;
    }
    c.le("psi_identity_on_exp", id_err, 1e-10);
    c.truth("psi_at_A", psi->values(psi->values.size() - 1) == cfg.A);
    c.truth("psi_increasing", increasing);
    c.le("psi_below_identity", below, 1e-10, {}, json{{"from", psi->grid(tail)}});

    c.guard("psi_cosh_oracle", [&] {
      // In the cosh region 1/g integrates to log tanh.
      Eigen::Index k2 = 0;
      while (k2 + 1 < psi->grid.size() && psi->grid(k2 + 1) <= lo) ++k2;
      const double t1 = psi->grid(0), t2 = psi->grid(k2);
      const double lhs = std::exp(-2 * psi->values(0)) - std::exp(-2 * psi->values(k2));
      const double rhs = 2 * (std::log(std::tanh(t2)) - std::log(std::tanh(t1)));
      c.le("psi_cosh_oracle", std::abs(lhs - rhs) / std::abs(rhs), 1e-8,
           "t1 = " + num(t1) + ", t2 = " + num(t2));
    });
  }

  c.guard("psi_exp_profile", [&] {
    const PsiSolution s = solve_psi([](double t) { return std::exp(2 * t); }, cfg.A, cfg.psi_t_min);
    c.le("psi_exp_profile", (s.values - s.grid).cwiseAbs().maxCoeff(), 1e-10);
  });

  c.guard("psi_rejects_nonpositive_tmin", [&] {
    bool threw = false;
    try {
      solve_psi(p, 0);
    } catch (const std::domain_error&) {
      threw = true;
    }
    c.truth("psi_rejects_nonpositive_tmin", threw);
  });
}

// ---------------------------------------------------------------------------
// curvature

void curvature_suite(const SuiteConfig& cfg, Checks& c) {
  Rng rng(cfg.seed + 1);
  const int n = cfg.n;
  std::uniform_real_distribution<double> unit(0, 1);

  c.guard("hyperbolic_blocks", [&] {
    const CurvatureBlocks b = hs_blocks(MetricPoint::hyperbolic(1.3, n));
    Eigen::Matrix2d G, F;
    G << -4, -2, -2, -4;
    F.setConstant(-1);
    c.le("hyperbolic_blocks", std::max((b.G - G).cwiseAbs().maxCoeff(), (b.F - F).cwiseAbs().maxCoeff()),
         1e-12);
  });

  c.guard("hyperbolic_holomorphic_sectional", [&] {
    double hol = 0, sec_lo = 0, sec_hi = -1e300, sec_min = 1e300;
    for (int k = 0; k < cfg.samples; ++k) {
      const MetricPoint mp = MetricPoint::hyperbolic(-1 + 3 * unit(rng), n);
      const OracleCurvature R(mp);
      const CurvatureEvaluator Rt = R.evaluator();
      const FrameVector X = random_frame_vector(n, rng, &mp), Y = random_frame_vector(n, rng, &mp);
      hol = std::max(hol, std::abs(Rt(X, X.J(), X, X.J()) + 4));
      const double s = sectional(Rt, X, Y, mp);
      sec_min = std::min(sec_min, s);
      sec_hi = std::max(sec_hi, s);
      sec_lo = std::max({sec_lo, -4 - s, s + 1});
    }
    c.le("hyperbolic_holomorphic_sectional", hol, 1e-8);
    c.le("hyperbolic_pinching", sec_lo, 1e-8, "sectional outside [-4, -1]",
         json{{"min", sec_min}, {"max", sec_hi}});
  });

  c.guard("oracle_matches_constant_holomorphic", [&] {
    double err = 0;
    for (int k = 0; k < 100; ++k) {
      const MetricPoint mp = MetricPoint::hyperbolic(2 * unit(rng), n);
      const CurvatureEvaluator Rt = OracleCurvature(mp).evaluator();
      const CurvatureEvaluator Hc = constant_holomorphic_evaluator(mp);
      FrameVector v[4];
      for (auto& x : v) x = random_frame_vector(n, rng, &mp);
      err = std::max(err, rel_err(Rt(v[0], v[1], v[2], v[3]), Hc(v[0], v[1], v[2], v[3])));
    }
    c.le("oracle_matches_constant_holomorphic", err, 1e-8);
  });

  const CutoffProfile prof = build_cutoff(cfg.A, cfg.window(), {cfg.grid_points, 0});
  const double t_lo = cfg.A / cfg.grid_points;
  std::uniform_real_distribution<double> unif_t(t_lo, cfg.A);

  c.guard("blocks_match_oracle", [&] {
    double err = 0;
    for (int k = 0; k < 50; ++k) {
      const MetricPoint mp = MetricPoint::from_profile(prof, unif_t(rng), n);
      const Eigen::Matrix<double, 6, 6> M = OracleCurvature(mp).block_matrix();
      const CurvatureBlocks b = hs_blocks(mp);
      const double scale = 1 + b.G.cwiseAbs().maxCoeff();
      err = std::max({err, (M.block<2, 2>(0, 0) - b.G).cwiseAbs().maxCoeff() / scale,
                      (M.block<2, 2>(2, 2) - b.F).cwiseAbs().maxCoeff() / scale,
                      (M.block<2, 2>(4, 4) - b.F).cwiseAbs().maxCoeff() / scale});
    }
    c.le("blocks_match_oracle", err, 1e-8);
  });

  c.guard("formula_oracle_equivalence", [&] {
    std::vector<int> dims{2, 3, 4};
    if (std::find(dims.begin(), dims.end(), n) == dims.end()) dims.push_back(n);
    json per_n = json::object();
    double worst = 0;
    std::string witness;
    for (int m : dims) {
      double err = 0;
      for (int k = 0; k < cfg.samples; ++k) {
        const double t = unif_t(rng);
        const MetricPoint mp = MetricPoint::from_profile(prof, t, m);
        const FrameVector Y = random_frame_vector(m, rng), Xi = random_frame_vector(m, rng);
        const double o = OracleCurvature(mp)(Y, Y.J(), Xi, Xi.J());
        const double e = std::abs(bisectional(Y, Xi, mp) - o) /
                         (1 + metric_norm2(Y, mp) * metric_norm2(Xi, mp));
        if (e > err) {
          err = e;
          if (e > 1e-6) witness = "n = " + std::to_string(m) + ", t = " + num(t);
        }
      }
      per_n[std::to_string(m)] = err;
      worst = std::max(worst, err);
    }
    c.le("formula_oracle_equivalence", worst, 1e-6, witness, per_n);
  });

  c.guard("tensor_symmetries", [&] {
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      const auto s = OracleCurvature(MetricPoint::from_profile(prof, unif_t(rng), n)).symmetry_defects();
      worst = std::max({worst, s.first_pair, s.last_pair, s.pair_swap, s.bianchi});
    }
    c.le("tensor_symmetries", worst, 1e-8);
  });

  c.guard("kahler_bianchi", [&] {
    double worst = 0;
    for (int k = 0; k < cfg.samples / 4 + 1; ++k) {
      const MetricPoint mp = (k % 2) ? MetricPoint::hyperbolic(2 * unit(rng), n)
                                     : MetricPoint::from_profile(prof, unif_t(rng), n);
      const FrameVector X = random_frame_vector(n, rng, &mp), Y = random_frame_vector(n, rng, &mp);
      worst = std::max(worst, bianchi_check(OracleCurvature(mp).evaluator(), X, Y));
    }
    c.le("kahler_bianchi", worst, 1e-8);
  });

  c.guard("ricci_trace", [&] {
    double err_trace = 0, err_bis = 0;
    for (int k = 0; k < 200; ++k) {
      const MetricPoint mp = MetricPoint::from_profile(prof, unif_t(rng), n);
      const OracleCurvature R(mp);
      const FrameVector Xi = random_frame_vector(n, rng, &mp);
      const double ric = ricci(Xi, mp);
      err_trace = std::max(err_trace, rel_err(R.ricci_trace(Xi), ric));
      // Unitary frame: X_k / f and Z / g.
      double sum = 0;
      for (int j = 0; j < n; ++j) {
        FrameVector E = FrameVector::zero(n);
        if (j < n - 1) E.u(j) = 1 / mp.f;
        else E.beta = 1 / mp.g;
        sum += bisectional(Xi, E, mp);
      }
      err_bis = std::max(err_bis, rel_err(sum, ric));
    }
    c.le("ricci_trace", err_trace, 1e-8);
    c.le("ricci_bisectional_trace", err_bis, 1e-8);
  });

  c.guard("ricci_cosh_bound", [&] {
    const double lo = cfg.window().first;
    double worst = -1e300;
    for (int k = 0; k < cfg.samples; ++k) {
      const MetricPoint mp = MetricPoint::from_profile(prof, t_lo + (lo - t_lo) * unit(rng), n);
      const FrameVector Xi = random_frame_vector(n, rng);
      worst = std::max(worst, ricci(Xi, mp) + 2 * metric_norm2(Xi, mp) - 1e-10 * metric_norm2(Xi, mp));
    }
    c.le("ricci_cosh_bound", worst, 0, "Ric > -2 mu on the cosh region");
  });

  c.guard("einstein_exp_region", [&] {
    const double hi = cfg.window().second;
    double worst = 0;
    for (int k = 0; k < cfg.samples; ++k) {
      const MetricPoint mp = MetricPoint::from_profile(prof, hi + (cfg.A - hi) * unit(rng), n);
      const FrameVector Xi = random_frame_vector(n, rng, &mp);
      worst = std::max(worst, std::abs(ricci(Xi, mp) + (2 * n + 2)));
    }
    c.le("einstein_exp_region", worst, 1e-8);
  });

  c.guard("poly_P", [&] {
    double worst = 0;
    bool disc = true;
    std::uniform_real_distribution<double> ua(-2, 2);
    for (int k = 0; k < cfg.samples; ++k) {
      const MetricPoint mp = MetricPoint::hyperbolic(2 * unit(rng), n);
      const CurvatureEvaluator Rt = OracleCurvature(mp).evaluator();
      const FrameVector v = random_frame_vector(n, rng, &mp), w = random_frame_vector(n, rng, &mp);
      const auto [lhs, rhs] = poly_P(v, w, ua(rng), Rt);
      worst = std::max(worst, std::abs(lhs - rhs));
      disc = disc && discriminant_inequality(v, w, Rt);
    }
    c.le("poly_P", worst, 1e-8);
    c.truth("discriminant_inequality", disc);
  });

  c.guard("rz_plane_curvature", [&] {
    double err = 0;
    for (int k = 0; k < 100; ++k) {
      const MetricPoint mp = MetricPoint::from_profile(prof, unif_t(rng), n);
      const OracleCurvature R(mp);
      const Eigen::VectorXcd U = random_cvector(n - 1, rng), Ut = random_cvector(n - 1, rng);
      FrameVector Z = FrameVector::zero(n);
      Z.beta = 1;
      const double o = R(FrameVector(U, 0, 0), Z, FrameVector(Ut, 0, 0), Z);
      err = std::max(err, std::abs(o - rz_plane_curvature(U, Ut, mp)) / (1 + std::abs(o)));
    }
    c.le("rz_plane_curvature", err, 1e-8);
  });

  c.guard("homogeneity", [&] {
    double err = 0;
    for (int k = 0; k < 100; ++k) {
      const MetricPoint mp = MetricPoint::from_profile(prof, unif_t(rng), n);
      const FrameVector Y = random_frame_vector(n, rng), Xi = random_frame_vector(n, rng);
      const double s = 0.5 + 2 * unit(rng);
      const double base = bisectional(Y, Xi, mp);
      err = std::max(err, std::abs(bisectional(s * Y, s * Xi, mp) - std::pow(s, 4) * base) /
                              std::abs(std::pow(s, 4) * base));
    }
    c.le("homogeneity", err, 1e-10);
  });

  c.guard("hbc_certificate", [&] {
    const HbcReport rep = hbc_certificate(prof, cfg.hbc_samples, cfg.seed, n);
    json table = json::array();
    for (const HbcRegionRow& r : rep.regions)
      table.push_back({{"region", to_string(r.region)},
                       {"samples", r.samples},
                       {"max_normalized", r.samples ? json(r.max_normalized) : json(nullptr)},
                       {"min_normalized", r.samples ? json(r.min_normalized) : json(nullptr)}});
    c.truth("hbc_certificate", rep.passed, rep.witness,
            json{{"samples", rep.samples},
                 {"max_normalized", rep.max_normalized},
                 {"max_cauchy_schwarz_ratio", rep.max_cauchy_schwarz_ratio},
                 {"margin_table", table}});
    c.le("hbc_strict_margin", rep.max_normalized, -1e-10);
  });
}

// ---------------------------------------------------------------------------
// cayley

QuadElem random_small(Rng& rng, long d) {
  std::uniform_int_distribution<int> num_dist(-5, 5), den_dist(1, 4);
  mpq_class a(num_dist(rng), den_dist(rng)), b(num_dist(rng), den_dist(rng));
  return QuadElem(a, b, d);
}

QuadElem random_integral(Rng& rng, long d) {
  std::uniform_int_distribution<int> dist(-3, 3);
  return QuadElem(dist(rng), dist(rng), d);
}

void cayley_suite(const SuiteConfig& cfg, Checks& c) {
  Rng rng(cfg.seed + 2);
  const std::vector<long> fields = cfg.d ? std::vector<long>{cfg.d} : std::vector<long>{1, 2, 3, 7};

  c.guard("field_arithmetic", [&] {
    bool ok = QuadElem(1, 1, 1) * QuadElem(1, -1, 1) == QuadElem(2);
    for (long d : fields) {
      const QuadElem r = QuadElem::sqrt_neg(d);
      ok = ok && QuadElem(1) / r == QuadElem(0, mpq_class(-1, d), d);
      for (int k = 0; k < 50; ++k) {
        const QuadElem x = random_small(rng, d), y = random_small(rng, d);
        ok = ok && (x * y).norm() == x.norm() * y.norm();
        if (!y.is_zero()) ok = ok && (x / y) * y == x;
      }
    }
    bool threw = false;
    try {
      QuadElem(1) / QuadElem(0);
    } catch (const std::domain_error&) {
      threw = true;
    }
    c.truth("field_arithmetic", ok && threw);
    c.truth("ring_of_integers",
            is_integral(QuadElem(mpq_class(1, 2), mpq_class(1, 2), 3)) &&
                !is_integral(QuadElem(mpq_class(1, 2), mpq_class(1, 2), 1)) &&
                !is_integral(QuadElem(mpq_class(1, 2), 0, 3)) && is_integral(QuadElem(0, 1, 1)));
  });

  c.guard("cayley_examples", [&] {
    const QuadMatrix Z = QuadMatrix::Constant(3, 3, QuadElem(0));
    c.truth("cayley_examples", is_zero(QuadMatrix(cayley(Z) - identity(3))) && is_zero(cayley(identity(3))));
  });

  c.guard("cayley_involution", [&] {
    bool ok = true;
    int tried = 0;
    for (long d : fields)
      for (int k = 0; k < 20; ++k) {
        QuadMatrix N(3, 3);
        for (Eigen::Index i = 0; i < 3; ++i)
          for (Eigen::Index j = 0; j < 3; ++j) N(i, j) = random_small(rng, d);
        if (determinant(QuadMatrix(identity(3) + N)).is_zero()) continue;
        ++tried;
        ok = ok && is_zero(QuadMatrix(cayley(cayley(N)) - N));
      }
    c.truth("cayley_involution", ok && tried > 0, {}, json{{"matrices", tried}});
  });

  c.guard("cayley_exchanges_groups", [&] {
    double worst = 0;
    bool exact = true;
    for (int m : {2, 3}) {
      std::vector<mpq_class> diag;
      for (int i = 0; i < m; ++i) diag.emplace_back(i + 1, 1 + (i % 2));
      const HermitianDiagForm B(diag);
      for (int k = 0; k < 50; ++k) {
        const Eigen::MatrixXcd M = random_unitary(B, rng);
        const Eigen::MatrixXcd S = cayley(M);
        worst = std::max(worst, anti_defect(S, B) / (1 + S.cwiseAbs2().sum()));
      }
      for (long d : fields) {
        AntiFreeData data{QuadMatrix::Constant(m, m, QuadElem(0)), QuadMatrix::Constant(m, m, QuadElem(0))};
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j) {
            data.X(i, j) = random_small(rng, d).re();
            data.Y(i, j) = random_small(rng, d).re();
          }
        const QuadMatrix S = constraint_fill(data, B, d);
        exact = exact && in_anti(S, B) && in_unitary(cayley(S), B);
      }
    }
    c.le("cayley_unitary_to_anti", worst, 1e-12);
    c.truth("cayley_anti_to_unitary_exact", exact);
  });

  c.guard("constraint_fill_identity_form", [&] {
    const HermitianDiagForm B({1, 1, 1});
    bool ok = true;
    for (long d : fields) {
      AntiFreeData data{QuadMatrix::Constant(3, 3, QuadElem(0)), QuadMatrix::Constant(3, 3, QuadElem(0))};
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
          data.X(i, j) = random_small(rng, d).re();
          data.Y(i, j) = random_small(rng, d).re();
        }
      const QuadMatrix S = constraint_fill(data, B, d);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          ok = ok && S(j, i).re() == -S(i, j).re() && S(j, i).coeff() == S(i, j).coeff();
      AntiFreeData zero{QuadMatrix::Constant(3, 3, QuadElem(0)), QuadMatrix::Constant(3, 3, QuadElem(0))};
      ok = ok && is_zero(constraint_fill(zero, B, d));
    }
    c.truth("constraint_fill_identity_form", ok);
  });

  c.guard("approximate_in_Ul", [&] {
    json per = json::object();
    double worst = 0;
    bool exact = true;
    std::string witness;
    for (int m : {2, 3}) {
      std::vector<mpq_class> diag;
      for (int i = 0; i < m; ++i) diag.emplace_back(i + 1, 1 + 2 * (i % 2));
      const HermitianDiagForm B(diag);
      for (long d : fields) {
        double err = 0;
        for (int k = 0; k < cfg.cayley_samples; ++k) {
          const Eigen::MatrixXcd M = random_unitary(B, rng);
          const UlApproximation a = approximate_in_Ul(M, B, d, cfg.eps);
          err = std::max(err, a.error);
          if (!in_unitary(a.M, B)) {
            exact = false;
            witness = "m = " + std::to_string(m) + ", d = " + std::to_string(d) + ", sample " + std::to_string(k);
          }
        }
        per[std::to_string(m) + "x" + std::to_string(m) + "_d" + std::to_string(d)] = err;
        worst = std::max(worst, err);
      }
    }
    c.truth("approximate_in_Ul_exact", exact, witness);
    c.le("approximate_in_Ul_error", worst, cfg.eps, {}, per);
  });

  c.guard("approximate_special_inputs", [&] {
    const HermitianDiagForm B({1, 2});
    bool ok = true;
    json thetas = json::object();
    for (long d : fields) {
      const UlApproximation id = approximate_in_Ul(Eigen::MatrixXcd::Identity(2, 2), B, d, cfg.eps);
      ok = ok && is_zero(QuadMatrix(id.M - identity(2))) && id.theta == 0;
      const UlApproximation neg = approximate_in_Ul(-Eigen::MatrixXcd::Identity(2, 2), B, d, cfg.eps);
      ok = ok && in_unitary(neg.M, B) && neg.error <= cfg.eps && neg.theta > 0;
      thetas[std::to_string(d)] = neg.theta;
    }
    c.truth("approximate_special_inputs", ok, {}, json{{"minus_identity_theta", thetas}});
  });

  c.guard("parabolic_fixed_vector", [&] {
    bool ok = true;
    int battery = 0;
    for (long d : fields)
      for (int dim = 1; dim <= 3; ++dim) {
        const QuadMatrix H = siegel_form(dim + 2, d);
        for (int k = 0; k < 10; ++k) {
          QuadVector v(dim);
          for (int j = 0; j < dim; ++j) v(j) = (k == 0) ? QuadElem(0, 0, d) : random_integral(rng, d);
          const QuadMatrix M = heisenberg_matrix(random_small(rng, d).re(), v, d);
          const QuadVector x = unipotent_fixed_vector(M, H);
          const QuadElem h = form_value(x, H, x);
          ok = ok && is_zero(QuadMatrix(M * x - x)) && h.is_rational() && sgn(h.re()) <= 0;
          ++battery;
        }
        const QuadVector e = unipotent_fixed_vector(identity(dim + 2), H);
        ok = ok && sgn(form_value(e, H, e).re()) <= 0;
      }
    // 3x3 over Q(i): fixed space of n_(s, v), v != 0, is the isotropic line f1.
    QuadVector v(1);
    v << QuadElem(1, 1, 1);
    const QuadMatrix M = heisenberg_matrix(mpq_class(2), v, 1);
    const QuadMatrix K = kernel(QuadMatrix(M - identity(3)));
    ok = ok && rank(QuadMatrix(M - identity(3))) == 2 && K.cols() == 1 && !K(0, 0).is_zero() &&
         K(1, 0).is_zero() && K(2, 0).is_zero();
    c.truth("parabolic_fixed_vector", ok, {}, json{{"battery", battery}});
  });

  c.guard("root_of_unity_power", [&] {
    QuadVector x(2);
    x << 1, 0;
    const auto k_of = [&](const QuadElem& alpha) { return root_of_unity_power(identity(2) * alpha, x); };
    bool ok = k_of(QuadElem(1)) == 1 && k_of(QuadElem(-1)) == 2 && k_of(QuadElem(0, 1, 1)) == 4 &&
              k_of(QuadElem(mpq_class(1, 2), mpq_class(1, 2), 3)) == 6;
    bool threw = false;
    try {
      k_of(QuadElem(2));
    } catch (const std::domain_error&) {
      threw = true;
    }
    c.truth("root_of_unity_power", ok && threw);
  });

  c.guard("json_roundtrip", [&] {
    bool ok = true;
    for (long d : fields) {
      QuadMatrix N(2, 3);
      for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) N(i, j) = random_small(rng, d);
      ok = ok && is_zero(QuadMatrix(quad_matrix_from_json(json::parse(to_json(N).dump())) - N));
    }
    c.truth("json_roundtrip", ok);
  });
}

// ---------------------------------------------------------------------------
// psh

void psh_suite(const SuiteConfig& cfg, Checks& c) {
  Rng rng(cfg.seed + 3);
  RegMaxParams rp;
  rp.eta = cfg.eta;
  const double eta = cfg.eta;

  c.guard("reg_max_properties", [&] {
    std::uniform_real_distribution<double> u(-3, 3);
    double below_max = 0, gap = 0, sym = 0;
    bool diag = true;
    double mono = 0, conv = 0;
    for (int k = 0; k < cfg.samples; ++k) {
      const double x = u(rng), y = u(rng), x2 = u(rng), y2 = u(rng);
      below_max = std::max(below_max, std::max(x, y) - reg_max(x, y, rp));
      const double far = x + 2 * eta + std::abs(y);
      gap = std::max(gap, std::abs(reg_max(x, far, rp) - far));
      sym = std::max(sym, std::abs(reg_max(x, y, rp) - reg_max(y, x, rp)));
      const double e = reg_max(x, x, rp) - x;
      diag = diag && e > 0 && e < 2 * eta;
      const double h = 1e-6;
      mono = std::max({mono, reg_max(x, y, rp) - reg_max(x + h, y, rp), reg_max(x, y, rp) - reg_max(x, y + h, rp)});
      conv = std::max(conv, reg_max((x + x2) / 2, (y + y2) / 2, rp) - (reg_max(x, y, rp) + reg_max(x2, y2, rp)) / 2);
    }
    c.le("reg_max_dominates_max", below_max, 1e-9);
    c.le("reg_max_equals_larger_beyond_gap", gap, 1e-9);
    c.le("reg_max_symmetric", sym, 1e-9);
    c.truth("reg_max_diagonal_excess", diag);
    c.le("reg_max_monotone", mono, 1e-10);
    c.le("reg_max_convex", conv, 1e-10);
  });

  c.guard("complex_hessian_known", [&] {
    Eigen::VectorXcd z = random_cvector(2, rng, 0.5);
    const HessianReport a = complex_hessian([](const Eigen::VectorXcd& w) { return w.squaredNorm(); }, z);
    const HessianReport b = complex_hessian(
        [](const Eigen::VectorXcd& w) { return (w(0) * w(0)).real(); }, z);
    const HessianReport e = complex_hessian(
        [](const Eigen::VectorXcd& w) { return std::exp(w.squaredNorm()); }, Eigen::VectorXcd::Zero(2));
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2, 2);
    c.le("complex_hessian_known",
         std::max({(a.matrix - I).cwiseAbs().maxCoeff(), b.matrix.cwiseAbs().maxCoeff(),
                   (e.matrix - I).cwiseAbs().maxCoeff()}),
         1e-6);
  });

  CuspParams<double> cp;
  cp.l = cfg.l;
  cp.t0 = cfg.t0;
  cp.n = cfg.n;

  c.guard("phi_cusp_values", [&] {
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(cfg.n - 1);
    const double one = phi_cusp(cp.lambda(), zero, cp);
    c.truth("phi_cusp_values", phi_cusp(0.0, zero, cp) == 0 && std::abs(one - 1) <= 1e-15,
            "phi(lambda, 0) = " + num(one));
  });

  c.guard("phi_cusp_hessian", [&] {
    double lowest = 1e300;
    std::uniform_real_distribution<double> radius(0, 3);
    const int count = std::min(cfg.samples, 100);
    for (int k = 0; k < count; ++k) {
      Eigen::VectorXcd v = random_cvector(cfg.n - 1, rng);
      v *= radius(rng) / v.norm();
      Eigen::VectorXcd z(cfg.n);
      z << 0, v;
      const HessianReport h = complex_hessian(
          [&](const Eigen::VectorXcd& w) {
            const Eigen::VectorXcd tail = w.tail(cfg.n - 1);
            return phi_cusp(w(0), tail, cp);
          },
          z);
      lowest = std::min(lowest, h.min_eigenvalue);
    }
    c.gt("phi_cusp_hessian", lowest, 0);
  });

  c.guard("phi_cusp_fiber_invariance", [&] {
    double err = 0;
    for (int k = 0; k < 100; ++k) {
      const HeisenbergElement<double> g = random_element(cfg.n - 1, rng);
      BundlePoint<double> p{std::complex<double>(0.1, 0.05), random_cvector(cfg.n - 1, rng)};
      const BundlePoint<double> q = lattice_act(g, p, cp);
      const double before = phi_cusp(p.a, p.v, cp) - p.v.squaredNorm();
      const double after = phi_cusp(q.a, q.v, cp) - q.v.squaredNorm();
      err = std::max(err, rel_err(after, before));
    }
    c.le("phi_cusp_fiber_invariance", err, 1e-10);
  });

  c.guard("build_chi", [&] {
    // Bounded phi on a single level: the linear (C + 1) / m t is dominated.
    std::vector<ChiSample> flat;
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 200; ++k) flat.push_back({0.2 + 0.5 * u(rng), 1 + u(rng)});
    const ChiFunction lin = build_chi(flat);
    double C = 0, m = 1e300;
    for (const ChiSample& s : flat) {
      C = std::max(C, s.phi);
      m = std::min(m, s.psi);
    }
    bool ok = lin.breakpoints().empty() && lin(0) == 0;
    for (double t : {0.5, 1.0, 2.0, 10.0}) ok = ok && lin(t) >= (C + 1) / m * t;
    c.truth("build_chi_bounded", ok);

    // phi = psi = 1 / dist on the annulus 1 < |z| < 3 (distance to the inner circle).
    std::vector<ChiSample> ann;
    std::uniform_real_distribution<double> r(1, 3);
    for (int k = 0; k < 10000; ++k) {
      double rad = r(rng);
      if (rad <= 1 + 1e-6) rad = 1 + 1e-6;
      ann.push_back({1 / (rad - 1), 1 / (rad - 1)});
    }
    const ChiFunction chi = build_chi(ann);
    int bad = 0;
    for (const ChiSample& s : ann) bad += !(chi(s.psi) > s.phi);
    bool convex = true;
    for (std::size_t j = 1; j < chi.slopes().size(); ++j) convex = convex && chi.slopes()[j] >= chi.slopes()[j - 1];
    c.truth("build_chi_dominates", bad == 0, std::to_string(bad) + " samples not dominated",
            json{{"breakpoints", chi.breakpoints().size()}});
    c.truth("build_chi_convex_origin", convex && chi(0) == 0);

    bool threw = false;
    try {
      build_chi({{1, 0.5}, {2, 0}});
    } catch (const std::domain_error&) {
      threw = true;
    }
    c.truth("build_chi_requires_positive_m", threw);
  });

  c.guard("glue_exhaustion", [&] {
    // X = C, psi = |z|^2, phi = 4 |z|^2 + 1, U = {|z| < 1/2}, V' = {|z| < 1}.
    const auto psi = [](const Eigen::VectorXcd& z) { return z.squaredNorm(); };
    const auto phi = [](const Eigen::VectorXcd& z) { return 4 * z.squaredNorm() + 1; };
    std::vector<ChiSample> band;
    std::uniform_real_distribution<double> u(0, 1);
    const auto polar = [](double rad, double ang) {
      Eigen::VectorXcd z(1);
      z(0) = std::polar(rad, ang);
      return z;
    };
    for (int k = 0; k < 2000; ++k) {
      const Eigen::VectorXcd z = polar(0.5 + 0.5 * u(rng), 2 * std::numbers::pi * u(rng));
      band.push_back({phi(z) + 2, psi(z)});
    }
    const ChiFunction chi = build_chi(band);
    GlueDomain dom;
    dom.inside = [](const Eigen::VectorXcd& z) { return z.norm() < 1; };
    for (int k = 0; k < 500; ++k) {
      dom.outer_band.push_back(polar(0.5 + 0.5 * u(rng), 2 * std::numbers::pi * u(rng)));
      dom.inner_core.push_back(polar(0.05 * u(rng), 2 * std::numbers::pi * u(rng)));
    }
    const ScalarField phi2 = [phi](const Eigen::VectorXcd& z) { return phi(z) + 1; };
    const ScalarField psi2 = [psi, chi](const Eigen::VectorXcd& z) { return chi(psi(z)); };
    RegMaxParams gp;
    gp.eta = 0.5;
    const GluedExhaustion lam = glue_exhaustion(phi2, psi2, dom, gp);
    std::string witness;
    if (!lam.band_ok()) witness = lam.witnesses().front().condition;
    c.truth("glue_band_conditions", lam.band_ok(), witness,
            json{{"violations", lam.witnesses().size()}});

    bool outer_exact = true, inner_above = true;
    for (const auto& z : dom.outer_band) outer_exact = outer_exact && lam(z) == psi2(z);
    for (const auto& z : dom.inner_core) inner_above = inner_above && lam(z) >= phi2(z);
    c.truth("glue_outer_band_exact", outer_exact);
    c.truth("glue_inner_dominates_phi2", inner_above);

    double jump = 0;
    for (int k = 0; k < 100; ++k) {
      const double ang = 2 * std::numbers::pi * u(rng);
      jump = std::max(jump, std::abs(lam(polar(1 - 1e-12, ang)) - lam(polar(1 + 1e-12, ang))));
    }
    c.le("glue_continuity", jump, 1e-9);

    double lowest = 1e300;
    for (int k = 0; k < 50; ++k) {
      const Eigen::VectorXcd z = polar(0.05 + 1.3 * u(rng), 2 * std::numbers::pi * u(rng));
      lowest = std::min(lowest, complex_hessian([&](const Eigen::VectorXcd& w) { return lam(w); }, z).min_eigenvalue);
    }
    c.gt("glue_hessian_positive", lowest, 0);

    std::vector<Eigen::VectorXcd> cloud;
    for (int k = 0; k < 2000; ++k) cloud.push_back(polar(2 * u(rng), 2 * std::numbers::pi * u(rng)));
    bool contained = true;
    for (double C : {2.5, 5.0, 20.0}) contained = contained && lam.sublevel_escapes(C, cloud).empty();
    c.truth("glue_sublevel_containment", contained);
  });
}

// ---------------------------------------------------------------------------
// bundle (Siegel model, Heisenberg group, disk bundle)

void bundle_suite(const SuiteConfig& cfg, Checks& c) {
  Rng rng(cfg.seed + 4);
  const Eigen::Index m = cfg.n - 1;
  using C = std::complex<double>;
  CuspParams<double> cp;
  cp.l = cfg.l;
  cp.t0 = cfg.t0;
  cp.n = cfg.n;

  c.guard("heisenberg_group_law", [&] {
    double assoc = 0, hom = 0, central = 0;
    for (int k = 0; k < cfg.samples; ++k) {
      const auto g = random_element(m, rng), h = random_element(m, rng), q = random_element(m, rng);
      const auto l1 = compose(compose(g, h), q), r1 = compose(g, compose(h, q));
      assoc = std::max(assoc, std::abs(l1.s - r1.s) + (l1.v - r1.v).cwiseAbs().maxCoeff());
      hom = std::max(hom, (to_matrix(compose(g, h)) - to_matrix(g) * to_matrix(h)).cwiseAbs().maxCoeff());
      const auto z = HeisenbergElement<double>::central(g.s, m);
      const auto a = compose(z, h), b = compose(h, z);
      central = std::max(central, std::abs(a.s - b.s) + (a.v - b.v).cwiseAbs().maxCoeff());
    }
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(m);
    e1(0) = 1;
    const auto ex = compose(HeisenbergElement<double>(0, e1), HeisenbergElement<double>(0, C(0, 1) * e1));
    const bool example = std::abs(ex.s - 1) <= 1e-15 && (ex.v - C(1, 1) * e1).norm() <= 1e-15;
    c.le("heisenberg_associativity", assoc, 1e-12);
    c.le("heisenberg_matrix_homomorphism", hom, 1e-12);
    c.le("heisenberg_central_commutation", central, 1e-12);
    c.truth("heisenberg_twisted_example", example);
  });

  c.guard("siegel_form_preserved", [&] {
    double err = 0;
    for (int k = 0; k < 200; ++k) {
      const Eigen::MatrixXcd M = to_matrix(random_element(m, rng));
      const Eigen::VectorXcd x = random_cvector(m + 2, rng), y = random_cvector(m + 2, rng);
      const C before = hermitian_form<double>(x, y);
      err = std::max(err, std::abs(hermitian_form<double>(M * x, M * y) - before) / (1 + std::abs(before)));
    }
    Eigen::VectorXcd o = Eigen::VectorXcd::Zero(m + 2);
    o(0) = 1;
    o(1) = -1;
    c.le("siegel_form_preserved", err, 1e-10);
    c.truth("siegel_basepoint_negative", hermitian_form<double>(o, o) == C(-2, 0));
  });

  c.guard("horoball_orbits", [&] {
    bool ok = true;
    double ident = 0;
    std::normal_distribution<double> normal;
    for (int k = 0; k < cfg.samples; ++k) {
      const double s = normal(rng), t = cfg.t0 - std::abs(normal(rng)) - 1e-3;
      const Eigen::VectorXcd v = random_cvector(m, rng);
      const SiegelPoint<double> p = orbit_coords(s, v, t);
      ident = std::max(ident, std::abs(2 * p.a.real() + p.v.squaredNorm() + 2 * std::exp(-2 * t)));
      ok = ok && p.in_domain() && horoball_contains(p, HoroballParams<double>{cfg.t0, cfg.l});
      const auto [w, vv] = quotient_to_omega(p, cfg.l);
      const auto [w2, vv2] = quotient_to_omega(SiegelPoint<double>{p.a - C(0, cfg.l), p.v}, cfg.l);
      ok = ok && std::abs(w - w2) <= 1e-12 * std::abs(w) &&
           std::abs(w) < cp.lambda() * std::exp(-std::numbers::pi * v.squaredNorm() / cfg.l);
    }
    c.truth("horoball_orbits", ok);
    c.le("orbit_coords_identity", ident, 1e-12);
  });

  c.guard("lambda_and_rescale", [&] {
    const double two_pi = 2 * std::numbers::pi;
    bool ok = std::abs(lambda_const(0.0, two_pi) - std::exp(-1.0)) <= 1e-15 &&
              std::abs(lambda_const(-0.5 * std::log(3.0), 3.0) - std::exp(-two_pi)) <= 1e-15;
    const auto r = rescale(HeisenbergElement<double>::central(cfg.l, m), cfg.l);
    ok = ok && std::abs(r.s - two_pi) <= 1e-12;
    double hom = 0;
    for (int k = 0; k < 200; ++k) {
      const auto g = random_element(m, rng), h = random_element(m, rng);
      const auto a = rescale(compose(g, h), cfg.l), b = compose(rescale(g, cfg.l), rescale(h, cfg.l));
      hom = std::max(hom, std::abs(a.s - b.s) + (a.v - b.v).cwiseAbs().maxCoeff());
    }
    c.truth("lambda_const_examples", ok);
    c.le("rescale_automorphism", hom, 1e-12);
  });

  c.guard("lattice_action", [&] {
    double law = 0, period = 0;
    for (int k = 0; k < 200; ++k) {
      const auto g = random_element(m, rng), h = random_element(m, rng);
      const BundlePoint<double> p{C(0.01, 0.02), random_cvector(m, rng)};
      const auto a = lattice_act(compose(g, h), p, cp), b = lattice_act(g, lattice_act(h, p, cp), cp);
      law = std::max(law, std::abs(a.a - b.a) / std::abs(a.a) + (a.v - b.v).cwiseAbs().maxCoeff());
      const auto z = lattice_act(HeisenbergElement<double>::central(cfg.l, m), p, cp);
      period = std::max(period, std::abs(z.a - p.a) / std::abs(p.a));
    }
    c.le("lattice_action_law", law, 1e-12);
    c.le("central_period_fixes", period, 1e-12);
  });

  c.guard("h_norm_invariance", [&] {
    // Words of length <= 6 in a fixed generating set.
    std::vector<HeisenbergElement<double>> gens;
    for (int k = 0; k < 2 * m + 1; ++k) gens.push_back(random_element(m, rng));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1), len(1, 6);
    double err = 0;
    for (int k = 0; k < 1000; ++k) {
      HeisenbergElement<double> g = HeisenbergElement<double>::identity(m);
      for (int j = len(rng); j > 0; --j) {
        const auto& x = gens[pick(rng)];
        g = compose(g, (j % 2) ? x : inverse(x));
      }
      const BundlePoint<double> p{C(0.05, -0.02), random_cvector(m, rng)};
      err = std::max(err, rel_err(h_norm(lattice_act(g, p, cp), cp), h_norm(p, cp)));
    }
    c.le("h_norm_invariance", err, 1e-12);
  });

  c.guard("disk_bundle_equivalence", [&] {
    bool ok = true;
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 1000; ++k) {
      const Eigen::VectorXcd v = random_cvector(m, rng, 0.5);
      const BundlePoint<double> p{std::polar(2 * cp.lambda() * u(rng), 6.3 * u(rng)), v};
      ok = ok && in_punctured_disk_bundle(p, cp) == in_omega(p, cp);
    }
    const BundlePoint<double> zero{0.0, Eigen::VectorXcd::Zero(m)};
    ok = ok && !in_punctured_disk_bundle(zero, cp) && h_norm(zero, cp) == 0;
    c.truth("disk_bundle_equivalence", ok);
  });

  c.guard("bundle_curvature_negative", [&] {
    bool neg = true;
    for (double l : {0.5, 1.0, 2 * std::numbers::pi, 10.0, 100.0}) {
      CuspParams<double> q = cp;
      q.l = l;
      const Eigen::MatrixXcd K = bundle_curvature(q);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K);
      neg = neg && es.eigenvalues().maxCoeff() < 0;
    }
    c.truth("bundle_curvature_negative", neg);
    // -log h(e, e) for the frame e = (1, v): its i dd-bar equals the curvature matrix.
    const HessianReport h = complex_hessian(
        [&](const Eigen::VectorXcd& v) {
          const double lam = cp.lambda();
          return -std::log(std::exp(2 * std::numbers::pi * v.squaredNorm() / cp.l) / (lam * lam));
        },
        random_cvector(m, rng, 0.5));
    c.le("bundle_curvature_hessian", (h.matrix - bundle_curvature(cp)).cwiseAbs().maxCoeff(), 1e-6);
  });

  c.guard("power_cover", [&] {
    bool ok = true;
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 1000; ++k) {
      const int d = 1 + k % 4;
      const Eigen::VectorXcd v = random_cvector(m, rng, 0.5);
      const double bound = std::exp(-std::numbers::pi * v.squaredNorm() / (d * cfg.l));
      const BundlePoint<double> p{std::polar(bound * u(rng), 6.3 * u(rng)), v};
      const auto q = power_cover(p, CoverDegree(d));
      ok = ok && std::abs(q.a) < std::exp(-std::numbers::pi * v.squaredNorm() / cfg.l);
      const auto a = power_cover(power_cover(p, CoverDegree(2)), CoverDegree(d));
      const auto b = power_cover(p, CoverDegree(2 * d));
      ok = ok && std::abs(a.a - b.a) <= 1e-14 * (1 + std::abs(b.a));
    }
    c.truth("power_cover", ok);
  });

  c.guard("cusp_to_disk", [&] {
    bool ok = true;
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 200; ++k) {
      const double t = cfg.A * (0.01 + 0.98 * u(rng));
      const auto g = random_element(m, rng);
      const auto [w, v] = cusp_to_disk(t, g, cfg.A);
      const auto [w2, v2] = cusp_to_disk(t, HeisenbergElement<double>(g.s + 2 * std::numbers::pi, g.v), cfg.A);
      ok = ok && std::abs(std::abs(w) - t) <= 1e-12 * t && std::abs(w - w2) <= 1e-12 * t && v == g.v;
    }
    c.truth("cusp_to_disk", ok);
  });
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.suite = cfg.suite;
  rep.config = cfg.to_json();
  rep.config_hash = cfg.hash();

  const std::vector<std::pair<std::string, void (*)(const SuiteConfig&, Checks&)>> table{
      {"profile", profile_suite},
      {"curvature", curvature_suite},
      {"cayley", cayley_suite},
      {"psh", psh_suite},
      {"bundle", bundle_suite}};
  for (const auto& [name, fn] : table) {
    if (cfg.suite != "all" && cfg.suite != name) continue;
    Checks checks(name, rep.checks);
    const auto start = std::chrono::steady_clock::now();
    checks.guard(name, [&] { fn(cfg, checks); });
    rep.timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  for (const CheckRecord& c : rep.checks) rep.passed = rep.passed && c.passed;
  return rep;
}

}  // namespace cuspforge
