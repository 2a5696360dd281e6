#include "cuspforge/profile.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "cuspforge/quadrature.hpp"

namespace cuspforge {

namespace {

// exp(-1 / (x (1 - x))) on (0, 1).
double step_kernel(double x) {
  if (x <= 0 || x >= 1) return 0;
  return std::exp(-1 / (x * (1 - x)));
}

const GaussLegendre& step_rule() {
  static const GaussLegendre rule(20);
  return rule;
}

double step_kernel_integral(double lo, double hi) {
  return step_rule().integrate(step_kernel, lo, hi, 16);
}

double step_normalization() {
  static const double z = step_kernel_integral(0, 1);
  return z;
}

}  // namespace

Eigen::Vector4d smooth_step(double x) {
  if (x <= 0) return {0, 0, 0, 0};
  if (x >= 1) return {1, 0, 0, 0};
  const double z = step_normalization();
  // Symmetry of the kernel about 1/2 keeps the tail integral short.
  const double s = x <= 0.5 ? step_kernel_integral(0, x) / z : 1 - step_kernel_integral(x, 1) / z;
  const double q = x * (1 - x);
  const double q1 = 1 - 2 * x;
  const double b = std::exp(-1 / q);
  const double u = q1 / (q * q);                              // (log b)'
  const double du = -2 / (q * q) - 2 * q1 * q1 / (q * q * q);  // (log b)''
  return {s, b / z, b * u / z, b * (du + u * u) / z};
}

CutoffConstructionError::CutoffConstructionError(int derivative_, double location_, double value_)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "cutoff positivity violated at derivative " << derivative_ << ": f";
        for (int k = 0; k < derivative_; ++k) os << '\'';
        os << "(" << location_ << ") = " << value_ << "; widen the window or increase A";
        return os.str();
      }()),
      derivative(derivative_),
      location(location_),
      value(value_) {}

CutoffProfile::CutoffProfile(double A, std::pair<double, double> window, const CutoffOptions& opts)
    : A_(A), window_(window) {
  const auto [lo, hi] = window;
  if (!(0 < lo && lo < hi && hi < A))
    throw std::domain_error("build_cutoff: need 0 < window.lo < window.hi < A");
  if (opts.min_A > 0 && A < opts.min_A)
    throw std::domain_error("build_cutoff: A below the working C0");
  if (opts.grid_points < 2) throw std::domain_error("build_cutoff: grid too small");

  const int n = opts.grid_points;
  grid_ = Eigen::VectorXd::LinSpaced(n + 1, 0.0, A);
  jets_.resize(n + 1, 4);
  for (int k = 0; k <= n; ++k) jets_.row(k) = jet(grid_(k)).transpose();

  for (int d = 0; d < 4; ++d) {
    Eigen::Index at;
    const double lowest = jets_.col(d).tail(n).minCoeff(&at);
    if (!(lowest > 0)) throw CutoffConstructionError(d, grid_(at + 1), lowest);
  }
}

ProfileRegion CutoffProfile::region(double t) const {
  if (t <= window_.first) return ProfileRegion::Cosh;
  if (t >= window_.second) return ProfileRegion::Exp;
  return ProfileRegion::Transition;
}

Jet CutoffProfile::jet(double t) const {
  if (t < 0 || t > A_) throw std::domain_error("CutoffProfile::jet: t outside [0, A]");
  const double s = std::sinh(t), c = std::cosh(t);
  switch (region(t)) {
    case ProfileRegion::Cosh:
      return {c, s, c, s};
    case ProfileRegion::Exp: {
      const double e = std::exp(t);
      return {e, e, e, e};
    }
    case ProfileRegion::Transition:
      break;
  }
  const double len = window_.second - window_.first;
  const Eigen::Vector4d st = smooth_step((t - window_.first) / len);
  const double w = st(0), w1 = st(1) / len, w2 = st(2) / (len * len), w3 = st(3) / (len * len * len);
  return {c + w * s,
          s + w1 * s + w * c,
          c + w2 * s + 2 * w1 * c + w * s,
          s + w3 * s + 3 * w2 * c + 3 * w1 * s + w * c};
}

std::array<std::pair<double, double>, 4> CutoffProfile::positivity_margins() const {
  std::array<std::pair<double, double>, 4> out;
  const Eigen::Index n = grid_.size() - 1;
  for (int d = 0; d < 4; ++d) {
    Eigen::Index at;
    const double lowest = jets_.col(d).tail(n).minCoeff(&at);
    out[d] = {lowest, grid_(at + 1)};
  }
  return out;
}

CutoffProfile build_cutoff(double A, std::pair<double, double> window, const CutoffOptions& opts) {
  return CutoffProfile(A, window, opts);
}

Eigen::Vector3d g_of_jet(const Jet& j) {
  return {j(0) * j(1), j(1) * j(1) + j(0) * j(2), 3 * j(1) * j(2) + j(0) * j(3)};
}

Eigen::Vector3d g_of(const CutoffProfile& p, double t) { return g_of_jet(p.jet(t)); }

double search_working_c0(double lo, double hi, int grid_points, double tol) {
  const auto passes = [grid_points](double A) {
    try {
      build_cutoff(A, {A / 6, 5 * A / 6}, {grid_points, 0});
      return true;
    } catch (const CutoffConstructionError&) {
      return false;
    }
  };
  if (!passes(hi)) throw std::domain_error("search_working_c0: upper bracket fails");
  if (passes(lo)) return lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? hi : lo) = mid;
  }
  return hi;
}

double jet_fd_error(const CutoffProfile& p, int order, double t, double h) {
  if (order < 1 || order > 3) throw std::invalid_argument("jet_fd_error: order must be 1, 2 or 3");
  const double fd = (p.jet(t + h)(order - 1) - p.jet(t - h)(order - 1)) / (2 * h);
  return std::abs(fd - p.jet(t)(order));
}

void write_profile_csv(std::ostream& os, const CutoffProfile& p) {
  os << "t,f,df,d2f,d3f\n";
  os.precision(17);
  for (Eigen::Index k = 0; k < p.grid().size(); ++k) {
    os << p.grid()(k);
    for (int d = 0; d < 4; ++d) os << ',' << p.jets()(k, d);
    os << '\n';
  }
}

PsiIntegrationError::PsiIntegrationError(double reached, const std::string& what)
    : std::runtime_error(what + " (smallest t reached: " + std::to_string(reached) + ")"),
      smallest_reached(reached) {}

namespace {

// Derivative at xs[c] of the interpolating polynomial through (xs, ys).
double stencil_derivative(const double* xs, const double* ys, int count, int c) {
  double sum = 0;
  for (int j = 0; j < count; ++j) {
    double wj;
    if (j == c) {
      wj = 0;
      for (int k = 0; k < count; ++k)
        if (k != c) wj += 1 / (xs[c] - xs[k]);
    } else {
      double num = 1, den = 1;
      for (int k = 0; k < count; ++k) {
        if (k != j) den *= xs[j] - xs[k];
        if (k != j && k != c) num *= xs[c] - xs[k];
      }
      wj = num / den;
    }
    sum += wj * ys[j];
  }
  return sum;
}

}  // namespace

PsiSolution solve_psi(const std::function<double(double)>& g, double A, double t_min,
                      const PsiOptions& opts) {
  if (!(t_min > 0)) throw std::domain_error("solve_psi: t_min must be positive (g(0) = 0)");
  if (!(t_min < A)) throw std::domain_error("solve_psi: t_min must be below A");
  const double max_step = opts.max_step > 0 ? opts.max_step : A / 1e4;

  const auto rhs = [&](double t, double psi) {
    const double gt = g(t);
    if (!(gt > 0)) throw PsiIntegrationError(t, "solve_psi: g is not positive");
    return std::exp(2 * psi) / gt;
  };

  std::vector<double> ts{A}, ps{A};
  double t = A, psi = A;
  while (t > t_min) {
    double h = std::min(max_step, opts.kappa * t);
    if (t - h - t_min < 0.1 * h) h = t - t_min;
    const double k1 = rhs(t, psi);
    const double k2 = rhs(t - h / 2, psi - h / 2 * k1);
    const double k3 = rhs(t - h / 2, psi - h / 2 * k2);
    const double k4 = rhs(t - h, psi - h * k3);
    psi -= h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t = (h == t - t_min) ? t_min : t - h;
    if (!std::isfinite(psi)) throw PsiIntegrationError(t, "solve_psi: step failure");
    ts.push_back(t);
    ps.push_back(psi);
  }

  const Eigen::Index n = static_cast<Eigen::Index>(ts.size());
  PsiSolution sol;
  sol.grid.resize(n);
  sol.values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sol.grid(k) = ts[n - 1 - k];
    sol.values(k) = ps[n - 1 - k];
  }
  sol.residuals = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 2; k + 2 < n; ++k) {
    const double d = stencil_derivative(sol.grid.data() + k - 2, sol.values.data() + k - 2, 5, 2);
    sol.residuals(k) = std::abs(d - rhs(sol.grid(k), sol.values(k)));
  }
  return sol;
}

PsiSolution solve_psi(const CutoffProfile& p, double t_min, const PsiOptions& opts) {
  PsiOptions o = opts;
  if (o.max_step <= 0) o.max_step = p.A() / (p.grid().size() - 1);
  return solve_psi([&p](double t) { return g_of(p, t)(0); }, p.A(), t_min, o);
}

}  // namespace cuspforge
