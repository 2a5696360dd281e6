#include "cuspforge/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cuspforge {

MetricPoint MetricPoint::from_jet(double t, const Jet& j, int n) {
  MetricPoint mp;
  mp.t = t;
  mp.f = j(0);
  mp.f1 = j(1);
  mp.f2 = j(2);
  mp.f3 = j(3);
  const Eigen::Vector3d g = g_of_jet(j);
  mp.g = g(0);
  mp.g1 = g(1);
  mp.g2 = g(2);
  mp.n = n;
  mp.validate();
  return mp;
}

MetricPoint MetricPoint::hyperbolic(double t, int n) {
  const double e = std::exp(t);
  return from_jet(t, Jet(e, e, e, e), n);
}

MetricPoint MetricPoint::cosh_region(double t, int n) {
  const double c = std::cosh(t), s = std::sinh(t);
  return from_jet(t, Jet(c, s, c, s), n);
}

MetricPoint MetricPoint::from_profile(const CutoffProfile& p, double t, int n) {
  return from_jet(t, p.jet(t), n);
}

void MetricPoint::validate() const {
  if (n < 2) throw std::domain_error("MetricPoint: n must be at least 2");
  if (!(f > 0 && f1 > 0 && f2 > 0 && f3 > 0))
    throw std::domain_error("MetricPoint: profile jet must be positive");
}

FrameVector FrameVector::J() const {
  return {std::complex<double>(0, 1) * u, -gamma, beta};
}

Eigen::VectorXd FrameVector::components(const MetricPoint& mp) const {
  const Eigen::Index m = u.size();
  if (m != mp.n - 1) throw std::invalid_argument("FrameVector: dimension does not match n");
  Eigen::VectorXd c(2 * m + 2);
  c(0) = mp.g * gamma;
  for (Eigen::Index k = 0; k < m; ++k) {
    c(2 * k + 1) = mp.f * u(k).real();
    c(2 * k + 2) = mp.f * u(k).imag();
  }
  c(2 * m + 1) = mp.g * beta;
  return c;
}

FrameVector FrameVector::from_components(const Eigen::VectorXd& c, const MetricPoint& mp) {
  const Eigen::Index m = c.size() / 2 - 1;
  FrameVector v = zero(static_cast<int>(m + 1));
  v.gamma = c(0) / mp.g;
  for (Eigen::Index k = 0; k < m; ++k) v.u(k) = {c(2 * k + 1) / mp.f, c(2 * k + 2) / mp.f};
  v.beta = c(2 * m + 1) / mp.g;
  return v;
}

FrameVector& FrameVector::operator+=(const FrameVector& o) {
  u += o.u;
  beta += o.beta;
  gamma += o.gamma;
  return *this;
}

FrameVector& FrameVector::operator-=(const FrameVector& o) {
  u -= o.u;
  beta -= o.beta;
  gamma -= o.gamma;
  return *this;
}

FrameVector& FrameVector::operator*=(double s) {
  u *= s;
  beta *= s;
  gamma *= s;
  return *this;
}

FrameVector operator+(FrameVector a, const FrameVector& b) { return a += b; }
FrameVector operator-(FrameVector a, const FrameVector& b) { return a -= b; }
FrameVector operator*(double s, FrameVector a) { return a *= s; }

double metric_inner(const FrameVector& X, const FrameVector& Y, const MetricPoint& mp) {
  return mp.f * mp.f * X.u.dot(Y.u).real() + mp.g * mp.g * (X.beta * Y.beta + X.gamma * Y.gamma);
}

double metric_norm2(const FrameVector& X, const MetricPoint& mp) {
  return metric_inner(X, X, mp);
}

CurvatureBlocks hs_blocks(const MetricPoint& mp) {
  const double k = mp.f2 / mp.f;
  const double r = mp.f1 / mp.f;
  CurvatureBlocks b;
  b.G << -4 * r * r, -2 * k, -2 * k, -3 * k - mp.f3 / mp.f1;
  b.F.setConstant(-k);
  return b;
}

namespace {

// Decomposition of Y = a X + b Z + c JZ and Xi = alpha X~ + beta Z + gamma JZ,
// with X~ = d X + e JX + W.
struct BisectionalTerms {
  double a = 0, alpha = 0;
  double b, c, beta, gamma;
  double d = 0, e = 0, y = 0, w2 = 0;
};

BisectionalTerms decompose(const FrameVector& Y, const FrameVector& Xi) {
  if (Y.u.size() != Xi.u.size()) throw std::invalid_argument("bisectional: dimension mismatch");
  BisectionalTerms r;
  r.b = Y.beta;
  r.c = Y.gamma;
  r.beta = Xi.beta;
  r.gamma = Xi.gamma;
  r.a = Y.u.norm();
  r.alpha = Xi.u.norm();
  if (r.a > 0 && r.alpha > 0) {
    const std::complex<double> i(0, 1);
    const Eigen::VectorXcd X = Y.u / r.a;
    const Eigen::VectorXcd Xt = Xi.u / r.alpha;
    r.d = X.dot(Xt).real();
    r.e = (i * X).dot(Xt).real();
    r.y = X.dot(i * Xt).real();
    r.w2 = 1 - r.d * r.d - r.e * r.e;
  }
  return r;
}

}  // namespace

double bisectional(const FrameVector& Y, const FrameVector& Xi, const MetricPoint& mp) {
  const BisectionalTerms s = decompose(Y, Xi);
  const double f = mp.f, g = mp.g;
  const double h1 = 4 * (mp.f1 / f) * (mp.f1 / f);
  const double h2 = 3 * mp.f2 / f + mp.f3 / mp.f1;
  const double h3 = mp.f2 / f;
  const double bc = s.b * s.b + s.c * s.c;
  const double bg = s.beta * s.beta + s.gamma * s.gamma;
  const double aa = s.a * s.alpha;
  const double minus_r =
      aa * aa * ((s.d * s.d + s.e * s.e) * f * f * f * f * h1 + 2 * g * g * s.w2) +
      h2 * g * g * g * g * bc * bg +
      2 * f * f * g * g * h3 *
          (s.a * s.a * bg + s.alpha * s.alpha * bc + 2 * aa * (s.b * s.beta + s.c * s.gamma) * s.d +
           2 * aa * (s.c * s.beta - s.b * s.gamma) * s.y);
  return -minus_r;
}

double ricci(const FrameVector& Xi, const MetricPoint& mp) {
  const double f = mp.f, f1 = mp.f1, f2 = mp.f2, f3 = mp.f3;
  const int n = mp.n;
  return -(2 * f * f2 + 4 * f1 * f1 + 2 * (n - 2) * f1 * f1) * Xi.u.squaredNorm() -
         ((2 * n + 1) * f * f1 * f1 * f2 + f * f * f1 * f3) *
             (Xi.beta * Xi.beta + Xi.gamma * Xi.gamma);
}

double rz_plane_curvature(const Eigen::VectorXcd& U, const Eigen::VectorXcd& Ut,
                          const MetricPoint& mp) {
  if (U.size() != Ut.size()) throw std::invalid_argument("rz_plane_curvature: dimension mismatch");
  return -mp.f * mp.g * mp.g * mp.f2 * U.dot(Ut).real();
}

OracleCurvature::OracleCurvature(const MetricPoint& mp) : mp_(mp), dim_(2 * mp.n) {
  mp.validate();
  const int D = dim_;
  const int zi = D - 1;
  const auto at3 = [D](int a, int b, int c) {
    return (static_cast<std::size_t>(a) * D + b) * D + c;
  };
  std::vector<double> C(static_cast<std::size_t>(D) * D * D, 0.0), dC(C.size(), 0.0);

  const double f = mp.f, f1 = mp.f1, f2 = mp.f2, g = mp.g, g1 = mp.g1, g2 = mp.g2;
  // [d/dt, E_k] = -(f'/f) E_k, [d/dt, E_Z] = -(g'/g) E_Z, [E_x, E_y] = 2 (g / f^2) E_Z.
  const double cx = -f1 / f, dcx = -(f2 / f - f1 * f1 / (f * f));
  const double cz = -g1 / g, dcz = -(g2 / g - g1 * g1 / (g * g));
  const double cb = 2 * g / (f * f), dcb = 2 * (g1 / (f * f) - 2 * g * f1 / (f * f * f));
  const auto set = [&](int a, int b, int c, double v, double dv) {
    C[at3(a, b, c)] = v;
    dC[at3(a, b, c)] = dv;
    C[at3(b, a, c)] = -v;
    dC[at3(b, a, c)] = -dv;
  };
  for (int k = 1; k < zi; ++k) set(0, k, k, cx, dcx);
  set(0, zi, zi, cz, dcz);
  for (int k = 1; k < zi; k += 2) set(k, k + 1, zi, cb, dcb);

  // Gamma_abc = <nabla_{E_a} E_b, E_c>.
  std::vector<double> G(C.size()), dG(C.size());
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) {
        G[at3(a, b, c)] = 0.5 * (C[at3(a, b, c)] - C[at3(b, c, a)] + C[at3(c, a, b)]);
        dG[at3(a, b, c)] = 0.5 * (dC[at3(a, b, c)] - dC[at3(b, c, a)] + dC[at3(c, a, b)]);
      }

  r_.assign(static_cast<std::size_t>(D) * D * D * D, 0.0);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          double v = 0;
          for (int e = 0; e < D; ++e)
            v += C[at3(a, b, e)] * G[at3(e, c, d)] - G[at3(b, c, e)] * G[at3(a, e, d)] +
                 G[at3(a, c, e)] * G[at3(b, e, d)];
          if (a == 0) v -= dG[at3(b, c, d)];
          if (b == 0) v += dG[at3(a, c, d)];
          r_[((static_cast<std::size_t>(a) * D + b) * D + c) * D + d] = v;
        }
}

double OracleCurvature::on_components(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                      const Eigen::VectorXd& Z, const Eigen::VectorXd& W) const {
  double total = 0;
  for (int a = 0; a < dim_; ++a) {
    if (X(a) == 0) continue;
    for (int b = 0; b < dim_; ++b) {
      if (Y(b) == 0) continue;
      double inner = 0;
      for (int c = 0; c < dim_; ++c) {
        if (Z(c) == 0) continue;
        double row = 0;
        for (int d = 0; d < dim_; ++d) row += frame(a, b, c, d) * W(d);
        inner += Z(c) * row;
      }
      total += X(a) * Y(b) * inner;
    }
  }
  return total;
}

double OracleCurvature::operator()(const FrameVector& X, const FrameVector& Y,
                                   const FrameVector& Z, const FrameVector& W) const {
  return on_components(X.components(mp_), Y.components(mp_), Z.components(mp_),
                       W.components(mp_));
}

CurvatureEvaluator OracleCurvature::evaluator() const {
  return [self = *this](const FrameVector& X, const FrameVector& Y, const FrameVector& Z,
                        const FrameVector& W) { return self(X, Y, Z, W); };
}

OracleCurvature::SymmetryDefects OracleCurvature::symmetry_defects() const {
  SymmetryDefects s{0, 0, 0, 0};
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c)
        for (int d = 0; d < dim_; ++d) {
          const double r = frame(a, b, c, d);
          s.first_pair = std::max(s.first_pair, std::abs(r + frame(b, a, c, d)));
          s.last_pair = std::max(s.last_pair, std::abs(r + frame(a, b, d, c)));
          s.pair_swap = std::max(s.pair_swap, std::abs(r - frame(c, d, a, b)));
          s.bianchi = std::max(s.bianchi, std::abs(r + frame(b, c, a, d) + frame(c, a, b, d)));
        }
  return s;
}

Eigen::Matrix<double, 6, 6> OracleCurvature::block_matrix() const {
  const int n = mp_.n;
  FrameVector X = FrameVector::zero(n);
  X.u(0) = 1;
  FrameVector Z = FrameVector::zero(n);
  Z.beta = 1;
  const FrameVector JX = X.J(), JZ = Z.J();
  const std::array<std::pair<FrameVector, FrameVector>, 6> basis{
      {{X, JX}, {Z, JZ}, {X, Z}, {JX, JZ}, {JX, Z}, {JZ, X}}};
  const auto area2 = [this](const FrameVector& P, const FrameVector& Q) {
    const double pq = metric_inner(P, Q, mp_);
    return metric_norm2(P, mp_) * metric_norm2(Q, mp_) - pq * pq;
  };
  Eigen::Matrix<double, 6, 6> M;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const auto& [P1, P2] = basis[i];
      const auto& [Q1, Q2] = basis[j];
      M(i, j) = (*this)(P1, P2, Q1, Q2) / std::sqrt(area2(P1, P2) * area2(Q1, Q2));
    }
  return M;
}

double OracleCurvature::ricci_trace(const FrameVector& Xi) const {
  const Eigen::VectorXd x = Xi.components(mp_);
  double total = 0;
  for (int b = 0; b < dim_; ++b)
    for (int a = 0; a < dim_; ++a)
      for (int c = 0; c < dim_; ++c) total += frame(a, b, c, b) * x(a) * x(c);
  return total;
}

double oracle_curvature(const FrameVector& Y, const FrameVector& Z, const FrameVector& W,
                        const FrameVector& V, const MetricPoint& mp) {
  return OracleCurvature(mp)(Y, Z, W, V);
}

CurvatureEvaluator constant_holomorphic_evaluator(const MetricPoint& mp) {
  return [mp](const FrameVector& X, const FrameVector& Y, const FrameVector& Z,
              const FrameVector& W) {
    const auto h = [&mp](const FrameVector& P, const FrameVector& Q) {
      return metric_inner(P, Q, mp);
    };
    const FrameVector JY = Y.J(), JZ = Z.J(), JW = W.J();
    return -(h(X, Z) * h(Y, W) - h(X, W) * h(Y, Z) + h(X, JZ) * h(Y, JW) - h(X, JW) * h(Y, JZ) +
             2 * h(X, JY) * h(Z, JW));
  };
}

double sectional(const CurvatureEvaluator& Rt, const FrameVector& X, const FrameVector& Y,
                 const MetricPoint& mp) {
  const double xy = metric_inner(X, Y, mp);
  const double area2 = metric_norm2(X, mp) * metric_norm2(Y, mp) - xy * xy;
  if (!(area2 > 0)) throw std::domain_error("sectional: degenerate plane");
  return Rt(X, Y, X, Y) / area2;
}

double bianchi_check(const CurvatureEvaluator& Rt, const FrameVector& X, const FrameVector& Y) {
  const FrameVector JX = X.J(), JY = Y.J();
  return std::abs(Rt(X, JX, Y, JY) - Rt(X, Y, X, Y) - Rt(X, JY, X, JY));
}

std::pair<double, double> poly_P(const FrameVector& v, const FrameVector& w, double a,
                                 const CurvatureEvaluator& Rt) {
  const FrameVector p = a * v + w;
  const FrameVector q = (a * v - w).J();
  const FrameVector Jv = v.J(), Jw = w.J();
  const double a2 = a * a;
  const double rhs = Rt(v, Jv, v, Jv) * a2 * a2 - 2 * Rt(v, Jv, w, Jw) * a2 + Rt(w, Jw, w, Jw);
  return {Rt(p, q, p, q), rhs};
}

bool discriminant_inequality(const FrameVector& v, const FrameVector& w,
                             const CurvatureEvaluator& Rt) {
  const FrameVector Jv = v.J(), Jw = w.J();
  const double mixed = Rt(v, Jv, w, Jw);
  return mixed * mixed <= Rt(v, Jv, v, Jv) * Rt(w, Jw, w, Jw) + 1e-10;
}

const char* to_string(ProfileRegion r) {
  switch (r) {
    case ProfileRegion::Cosh:
      return "cosh";
    case ProfileRegion::Transition:
      return "transition";
    case ProfileRegion::Exp:
      return "exp";
  }
  return "?";
}

HbcReport hbc_certificate(const CutoffProfile& p, int samples, std::uint64_t seed, int n) {
  if (samples < 1) throw std::invalid_argument("hbc_certificate: samples must be positive");
  HbcReport rep;
  rep.samples = samples;
  rep.n = n;
  std::mt19937_64 rng(seed);
  const double t_lo = p.A() / static_cast<double>(p.grid().size() - 1);
  std::uniform_real_distribution<double> unif_t(t_lo, p.A());

  const auto fail = [&rep](const std::string& msg) {
    if (rep.passed) rep.witness = msg;
    rep.passed = false;
  };

  for (int k = 0; k < samples; ++k) {
    const double t = unif_t(rng);
    const MetricPoint mp = MetricPoint::from_profile(p, t, n);
    const FrameVector Y = random_frame_vector(n, rng, &mp);
    const FrameVector Xi = random_frame_vector(n, rng, &mp);
    const double value = bisectional(Y, Xi, mp);
    rep.max_value = std::max(rep.max_value, value);
    rep.max_normalized = std::max(rep.max_normalized, value);

    HbcRegionRow& row = rep.regions[static_cast<int>(p.region(t))];
    ++row.samples;
    row.max_normalized = std::max(row.max_normalized, value);
    row.min_normalized = std::min(row.min_normalized, value);

    std::ostringstream at;
    at.precision(17);
    at << " at t=" << t << " sample " << k;
    if (value > 1e-12) fail("bisectional positive (" + std::to_string(value) + ")" + at.str());
    if (t < p.A() && !(value < -1e-10))
      fail("bisectional not strictly negative (" + std::to_string(value) + ")" + at.str());

    const BisectionalTerms s = decompose(Y, Xi);
    const double lhs = std::abs(2 * s.a * s.alpha *
                                ((s.b * s.beta + s.c * s.gamma) * s.d +
                                 (s.c * s.beta - s.b * s.gamma) * s.y));
    const double rhs = s.a * s.a * (s.beta * s.beta + s.gamma * s.gamma) +
                       s.alpha * s.alpha * (s.b * s.b + s.c * s.c);
    if (rhs > 0) rep.max_cauchy_schwarz_ratio = std::max(rep.max_cauchy_schwarz_ratio, lhs / rhs);
    if (lhs > rhs * (1 + 1e-12)) fail("Cauchy-Schwarz step violated" + at.str());

    if (k % 100 == 0) {
      const FrameVector zero = FrameVector::zero(n);
      if (bisectional(zero, Xi, mp) != 0 || bisectional(Y, zero, mp) != 0)
        fail("zero vector gives nonzero bisectional" + at.str());
    }
  }
  return rep;
}

CurvatureSummary curvature_summary(const MetricPoint& mp, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const OracleCurvature oracle(mp);
  const CurvatureEvaluator Rt = oracle.evaluator();
  CurvatureSummary s{mp.t, std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity(), 0,
                     std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()};
  for (int k = 0; k < samples; ++k) {
    const FrameVector Y = random_frame_vector(mp.n, rng, &mp);
    const FrameVector Xi = random_frame_vector(mp.n, rng, &mp);
    const double h = bisectional(Y, Xi, mp);
    s.min_hbc = std::min(s.min_hbc, h);
    s.max_hbc = std::max(s.max_hbc, h);
    const double k_sec = sectional(Rt, Y, Xi, mp);
    s.min_sectional = std::min(s.min_sectional, k_sec);
    s.max_sectional = std::max(s.max_sectional, k_sec);
  }
  // Ricci is diagonal in the frame: one eigenvalue on r, one on span(Z, JZ).
  FrameVector X = FrameVector::zero(mp.n);
  X.u(0) = 1 / mp.f;
  FrameVector Z = FrameVector::zero(mp.n);
  Z.beta = 1 / mp.g;
  s.min_ricci = std::min(ricci(X, mp), ricci(Z, mp));
  return s;
}

void write_curvature_csv(std::ostream& os, const std::vector<CurvatureSummary>& rows) {
  os << "t,min_hbc,max_hbc,min_ricci,min_sectional,max_sectional\n";
  os.precision(17);
  for (const CurvatureSummary& r : rows)
    os << r.t << ',' << r.min_hbc << ',' << r.max_hbc << ',' << r.min_ricci << ','
       << r.min_sectional << ',' << r.max_sectional << '\n';
}

}  // namespace cuspforge
