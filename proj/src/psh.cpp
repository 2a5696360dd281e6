#include "cuspforge/psh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "cuspforge/quadrature.hpp"

namespace cuspforge {

namespace {

struct KernelRule {
  GaussLegendre rule;
  double mass;  // integral of bump over [-1, 1] under the same rule
  explicit KernelRule(int n) : rule(n), mass(rule.integrate(bump, -1, 1)) {}
};

const KernelRule& kernel_rule(int n) {
  static const KernelRule common(33);
  if (n == 33) return common;
  thread_local std::map<int, KernelRule> cache;
  return cache.try_emplace(n, n).first->second;
}

}  // namespace

void RegMaxParams::validate() const {
  if (!(eta > 0)) throw std::domain_error("RegMaxParams: eta must be positive");
  if (resolution < 2) throw std::domain_error("RegMaxParams: resolution must be at least 2");
}

double reg_max_excess(double delta, const RegMaxParams& p) {
  p.validate();
  const double s = std::abs(delta) / p.eta;
  if (s >= 2) return 0;
  const KernelRule& k = kernel_rule(p.resolution);
  // E[max(u1 - u2 - s, 0)] for independent u1, u2 with density bump / mass.
  const auto outer = [&](double u2) {
    const auto inner = [&](double u1) { return (u1 - u2 - s) * bump(u1); };
    return bump(u2) * k.rule.integrate(inner, u2 + s, 1);
  };
  const double value = k.rule.integrate(outer, -1, 1 - s) / (k.mass * k.mass);
  return p.eta * std::max(value, 0.0);
}

double reg_max(double x, double y, const RegMaxParams& p) {
  return std::max(x, y) + reg_max_excess(x - y, p);
}

namespace {

// Bump-smoothed ReLU of radius r and its derivative.
double smooth_relu(double t, double r) {
  if (t <= -r) return 0;
  if (t >= r) return t;
  const KernelRule& k = kernel_rule(33);
  const double tau = t / r;
  const double v = k.rule.integrate([tau](double u) { return (tau - u) * bump(u); }, -1, tau);
  return r * v / k.mass;
}

double smooth_relu_derivative(double t, double r) {
  if (t <= -r) return 0;
  if (t >= r) return 1;
  const KernelRule& k = kernel_rule(33);
  return k.rule.integrate(bump, -1, t / r) / k.mass;
}

}  // namespace

ChiFunction::ChiFunction(std::vector<double> breakpoints, std::vector<double> slopes, double radius)
    : breakpoints_(std::move(breakpoints)), slopes_(std::move(slopes)), radius_(radius) {
  if (slopes_.size() != breakpoints_.size() + 1)
    throw std::invalid_argument("ChiFunction: need one more slope than breakpoints");
  if (!(radius_ > 0)) throw std::domain_error("ChiFunction: smoothing radius must be positive");
  if (!(slopes_.front() > 0)) throw std::domain_error("ChiFunction: slopes must be positive");
  for (std::size_t j = 1; j < slopes_.size(); ++j)
    if (slopes_[j] < slopes_[j - 1]) throw std::domain_error("ChiFunction: slopes must be nondecreasing");
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    if (breakpoints_[j] < radius_)
      throw std::domain_error("ChiFunction: breakpoints must lie beyond the smoothing radius");
    if (j > 0 && !(breakpoints_[j] > breakpoints_[j - 1]))
      throw std::domain_error("ChiFunction: breakpoints must increase");
  }
}

double ChiFunction::operator()(double t) const {
  double v = slopes_[0] * t;
  for (std::size_t j = 0; j < breakpoints_.size(); ++j)
    v += (slopes_[j + 1] - slopes_[j]) * smooth_relu(t - breakpoints_[j], radius_);
  return v;
}

double ChiFunction::piecewise(double t) const {
  double v = slopes_[0] * t;
  for (std::size_t j = 0; j < breakpoints_.size(); ++j)
    v += (slopes_[j + 1] - slopes_[j]) * std::max(t - breakpoints_[j], 0.0);
  return v;
}

double ChiFunction::derivative(double t) const {
  double v = slopes_[0];
  for (std::size_t j = 0; j < breakpoints_.size(); ++j)
    v += (slopes_[j + 1] - slopes_[j]) * smooth_relu_derivative(t - breakpoints_[j], radius_);
  return v;
}

ChiFunction build_chi(const std::vector<ChiSample>& samples, double safety) {
  if (samples.empty()) throw std::invalid_argument("build_chi: no samples");
  if (!(safety > 0)) throw std::domain_error("build_chi: safety must be positive");
  double m = std::numeric_limits<double>::infinity();
  double top = -std::numeric_limits<double>::infinity();
  std::map<long long, double> level_min;  // p -> min psi over {p - 1 <= phi < p}
  for (const ChiSample& s : samples) {
    if (!std::isfinite(s.phi) || !std::isfinite(s.psi))
      throw std::invalid_argument("build_chi: non-finite sample");
    m = std::min(m, s.psi);
    top = std::max(top, s.phi);
    const long long p = static_cast<long long>(std::floor(s.phi)) + 1;
    auto [it, fresh] = level_min.try_emplace(p, s.psi);
    if (!fresh) it->second = std::min(it->second, s.psi);
  }
  if (!(m > 0)) throw std::domain_error("build_chi: min psi must be positive");

  if (level_min.size() == 1) return ChiFunction({}, {(top + 1 + safety) / m}, m / 4);

  std::vector<long long> p;
  std::vector<double> a;
  for (const auto& [level, lowest] : level_min) {
    p.push_back(level);
    a.push_back(lowest);
  }
  const std::size_t K = p.size();
  std::vector<double> suffix_min(K);
  suffix_min[K - 1] = a[K - 1];
  for (std::size_t k = K - 1; k-- > 0;) suffix_min[k] = std::min(a[k], suffix_min[k + 1]);

  // k_n = first level index from which every minimum is >= n m (0-based; K = none).
  const auto k_of = [&](long long n) {
    const auto it = std::lower_bound(suffix_min.begin(), suffix_min.end(), static_cast<double>(n) * m);
    return static_cast<std::size_t>(it - suffix_min.begin());
  };
  const auto level_after = [&](std::size_t k) {
    return k < K ? static_cast<double>(p[k]) : static_cast<double>(p[K - 1] + 1);
  };
  const long long N = static_cast<long long>(std::floor(suffix_min[K - 1] / m));

  // chi(n m) >= p_{k_{n+1}} + safety; the target only changes where k_{n+1} does.
  std::vector<std::pair<double, double>> targets;
  double last_target = -std::numeric_limits<double>::infinity();
  for (long long n = 1; n <= N;) {
    const std::size_t next = k_of(n + 1);
    const double target = level_after(next) + safety;
    if (target > last_target) {
      targets.emplace_back(static_cast<double>(n) * m, target);
      last_target = target;
    }
    if (next >= K) break;
    // Jump to the first n whose k_{n+1} moves past `next`.
    n = std::max(n + 1, static_cast<long long>(std::floor(suffix_min[next] / m)));
  }

  std::vector<double> slopes, breaks;
  double x_prev = 0, chi_prev = 0, slope = 0;
  for (const auto& [x, target] : targets) {
    slope = std::max(slope, (target - chi_prev) / (x - x_prev));
    if (!slopes.empty() && slope > slopes.back()) breaks.push_back(x_prev);
    if (slopes.empty() || slope > slopes.back()) slopes.push_back(slope);
    chi_prev += slope * (x - x_prev);
    x_prev = x;
  }
  double gap = targets.front().first;
  for (std::size_t j = 1; j < breaks.size(); ++j) gap = std::min(gap, breaks[j] - breaks[j - 1]);
  if (!breaks.empty()) gap = std::min(gap, breaks.front());
  ChiFunction chi(breaks, slopes, gap / 4);

  for (const ChiSample& s : samples)
    if (!(chi(s.psi) > s.phi)) throw std::logic_error("build_chi: domination failed at a sample");
  return chi;
}

HessianReport complex_hessian(const ScalarField& fn, const Eigen::VectorXcd& z0, double h) {
  const Eigen::Index m = z0.size();
  if (m == 0) throw std::invalid_argument("complex_hessian: empty point");
  if (h <= 0) h = 1e-4 * (1 + z0.norm());
  const double scale = std::max(1.0, z0.cwiseAbs().maxCoeff());
  if (!(h / 2 > 4 * std::numeric_limits<double>::epsilon() * scale))
    throw std::domain_error("complex_hessian: step underflow");

  // Real direction r: 2j -> Re z_j, 2j+1 -> Im z_j.
  const auto dir = [m](Eigen::Index r) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
    e(r / 2) = (r % 2 == 0) ? std::complex<double>(1, 0) : std::complex<double>(0, 1);
    return e;
  };
  const auto second = [&](Eigen::Index r, Eigen::Index s, double step) {
    const Eigen::VectorXcd a = step * dir(r), b = step * dir(s);
    return (fn(z0 + a + b) - fn(z0 + a - b) - fn(z0 - a + b) + fn(z0 - a - b)) / (4 * step * step);
  };
  const Eigen::Index n = 2 * m;
  Eigen::MatrixXd D(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index s = r; s < n; ++s) {
      const double coarse = second(r, s, h), fine = second(r, s, h / 2);
      D(r, s) = D(s, r) = (4 * fine - coarse) / 3;
    }

  Eigen::MatrixXcd H(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      const double xx = D(2 * j, 2 * k), yy = D(2 * j + 1, 2 * k + 1);
      const double xy = D(2 * j, 2 * k + 1), yx = D(2 * j + 1, 2 * k);
      H(j, k) = 0.25 * std::complex<double>(xx + yy, xy - yx);
    }

  HessianReport rep;
  rep.point = z0;
  rep.hermitian_defect = (H - H.adjoint()).cwiseAbs().maxCoeff();
  rep.matrix = 0.5 * (H + H.adjoint());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rep.matrix, Eigen::EigenvaluesOnly);
  rep.eigenvalues = es.eigenvalues();
  rep.min_eigenvalue = rep.eigenvalues.minCoeff();
  return rep;
}

double phi_cusp(std::complex<double> a, const Eigen::VectorXcd& v, const CuspParams<double>& cp) {
  cp.validate();
  const double lam = cp.lambda();
  const double v2 = v.squaredNorm();
  return v2 + std::exp(2 * std::numbers::pi * v2 / cp.l) * std::norm(a) / (lam * lam);
}

GluedExhaustion::GluedExhaustion(ScalarField phi2, ScalarField psi2, GlueDomain domain, RegMaxParams p)
    : phi2_(std::move(phi2)), psi2_(std::move(psi2)), domain_(std::move(domain)), params_(p) {
  params_.validate();
  if (!domain_.inside) throw std::invalid_argument("glue_exhaustion: missing domain predicate");
  const double gap = 2 * params_.eta;
  for (const Eigen::VectorXcd& z : domain_.outer_band) {
    const double a = phi2_(z), b = psi2_(z);
    if (!(b >= a + gap)) witnesses_.push_back({z, a, b, "outer band: psi2 < phi2 + 2 eta"});
  }
  for (const Eigen::VectorXcd& z : domain_.inner_core) {
    const double a = phi2_(z), b = psi2_(z);
    if (!(a >= b + gap)) witnesses_.push_back({z, a, b, "inner core: phi2 < psi2 + 2 eta"});
  }
}

double GluedExhaustion::operator()(const Eigen::VectorXcd& z) const {
  if (!domain_.inside(z)) return psi2_(z);
  return reg_max(phi2_(z), psi2_(z), params_);
}

std::vector<Eigen::VectorXcd> GluedExhaustion::sublevel_escapes(
    double C, const std::vector<Eigen::VectorXcd>& samples) const {
  std::vector<Eigen::VectorXcd> out;
  for (const Eigen::VectorXcd& z : samples) {
    if ((*this)(z) > C) continue;
    const bool covered = domain_.inside(z) ? phi2_(z) <= C : psi2_(z) <= C;
    if (!covered) out.push_back(z);
  }
  return out;
}

GluedExhaustion glue_exhaustion(ScalarField phi2, ScalarField psi2, GlueDomain domain,
                                const RegMaxParams& p) {
  return GluedExhaustion(std::move(phi2), std::move(psi2), std::move(domain), p);
}

}  // namespace cuspforge
