#include "cuspforge/cayley.hpp"

#include <cmath>
#include <limits>

namespace cuspforge {

HermitianDiagForm::HermitianDiagForm(std::vector<mpq_class> diag) : b_(std::move(diag)) {
  if (b_.empty()) throw std::invalid_argument("HermitianDiagForm: empty form");
  for (mpq_class& b : b_) {
    b.canonicalize();
    if (sgn(b) <= 0) throw std::domain_error("HermitianDiagForm: entries must be positive");
  }
}

QuadMatrix HermitianDiagForm::matrix() const {
  QuadMatrix B = QuadMatrix::Constant(size(), size(), QuadElem(0));
  for (Eigen::Index i = 0; i < size(); ++i) B(i, i) = (*this)[i];
  return B;
}

Eigen::MatrixXd HermitianDiagForm::to_double() const {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(size(), size());
  for (Eigen::Index i = 0; i < size(); ++i) B(i, i) = (*this)[i].get_d();
  return B;
}

Eigen::MatrixXcd cayley(const Eigen::MatrixXcd& N) {
  if (N.rows() != N.cols()) throw std::invalid_argument("cayley: matrix must be square");
  const Eigen::Index m = N.rows();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(m, m);
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(I + N);
  if (!lu.isInvertible()) throw std::domain_error("cayley: I + N is singular");
  return 2.0 * lu.inverse() - I;
}

QuadMatrix cayley(const QuadMatrix& N) {
  if (N.rows() != N.cols()) throw std::invalid_argument("cayley: matrix must be square");
  const QuadMatrix I = identity(N.rows());
  QuadMatrix S = inverse(I + N);
  for (Eigen::Index i = 0; i < S.rows(); ++i)
    for (Eigen::Index j = 0; j < S.cols(); ++j) S(i, j) *= 2;
  return S - I;
}

bool in_unitary(const QuadMatrix& M, const HermitianDiagForm& B) {
  const QuadMatrix Bm = B.matrix();
  if (M.rows() != Bm.rows() || M.cols() != Bm.cols()) return false;
  return is_zero(QuadMatrix(M.transpose() * Bm * conj(M) - Bm));
}

bool in_anti(const QuadMatrix& S, const HermitianDiagForm& B) {
  const QuadMatrix Bm = B.matrix();
  if (S.rows() != Bm.rows() || S.cols() != Bm.cols()) return false;
  return is_zero(QuadMatrix(S.transpose() * Bm + Bm * conj(S)));
}

double unitary_defect(const Eigen::MatrixXcd& M, const HermitianDiagForm& B) {
  const Eigen::MatrixXcd Bc = B.to_double().cast<std::complex<double>>();
  return (M.transpose() * Bc * M.conjugate() - Bc).cwiseAbs().maxCoeff();
}

double anti_defect(const Eigen::MatrixXcd& S, const HermitianDiagForm& B) {
  const Eigen::MatrixXcd Bc = B.to_double().cast<std::complex<double>>();
  return (S.transpose() * Bc + Bc * S.conjugate()).cwiseAbs().maxCoeff();
}

QuadMatrix constraint_fill(const AntiFreeData& data, const HermitianDiagForm& B, long d) {
  check_field(d);
  const Eigen::Index m = B.size();
  if (data.X.rows() != m || data.X.cols() != m || data.Y.rows() != m || data.Y.cols() != m)
    throw std::invalid_argument("constraint_fill: free data must match the form size");
  const QuadElem root = QuadElem::sqrt_neg(d);
  QuadMatrix S = QuadMatrix::Constant(m, m, QuadElem(0, 0, d));
  const auto rational = [](const QuadElem& q) {
    if (!q.is_rational()) throw std::invalid_argument("constraint_fill: free data must be rational");
    return q.re();
  };
  for (Eigen::Index i = 0; i < m; ++i) {
    S(i, i) = root * QuadElem(rational(data.Y(i, i)));
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const mpq_class x = rational(data.X(i, j)), y = rational(data.Y(i, j));
      const mpq_class r = B[i] / B[j];
      S(i, j) = QuadElem(x, y, d);
      S(j, i) = QuadElem(-r * x, r * y, d);
    }
  }
  return S;
}

mpq_class rationalize(const mpq_class& x, const mpq_class& tol) {
  if (sgn(tol) < 0) throw std::invalid_argument("rationalize: negative tolerance");
  mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  mpq_class r = x;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    const mpz_class h = a * h1 + h2, k = a * k1 + k2;
    mpq_class conv(h, k);
    conv.canonicalize();
    const mpq_class frac = r - a;
    if (abs(x - conv) <= tol || sgn(frac) == 0) return conv;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    r = 1 / frac;
  }
}

namespace {

double max_error(const QuadMatrix& Mq, const Eigen::MatrixXcd& M, long d) {
  const double root = std::sqrt(static_cast<double>(d));
  double err = 0;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const double re = mpq_class(Mq(i, j).re() - exact_rational(M(i, j).real())).get_d();
      const double im = Mq(i, j).coeff().get_d() * root - M(i, j).imag();
      err = std::max(err, std::hypot(re, im));
    }
  return err;
}

// Exact unit z / conj(z), z = 1 + r sqrt(-d), whose argument is close to theta.
QuadElem unit_with_argument(double theta, long d) {
  const double target = std::tan(theta / 2) / std::sqrt(static_cast<double>(d));
  const mpq_class r = rationalize(exact_rational(target), mpq_class(std::abs(target) * 1e-12));
  const QuadElem z(1, r, d);
  return z / z.conj();
}

}  // namespace

UlApproximation approximate_in_Ul(const Eigen::MatrixXcd& M, const HermitianDiagForm& B, long d,
                                  double eps) {
  check_field(d);
  if (!(eps > 0)) throw std::invalid_argument("approximate_in_Ul: eps must be positive");
  const Eigen::Index m = B.size();
  if (M.rows() != m || M.cols() != m)
    throw std::invalid_argument("approximate_in_Ul: matrix size does not match the form");
  if (!(unitary_defect(M, B) <= 1e-10))
    throw std::invalid_argument("approximate_in_Ul: input is not in U(B) to 1e-10");

  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(m, m);
  UlApproximation out;
  QuadElem zeta(1, 0, d);
  Eigen::MatrixXcd target = M;
  if (std::abs((I + M).determinant()) < 1e-6) {
    bool found = false;
    for (int k = 52; k >= 0 && !found; --k) {
      zeta = unit_with_argument(std::ldexp(1.0, -k), d);
      const std::complex<double> zc = zeta.to_complex();
      if (std::abs((I + zc * M).determinant()) >= 1e-6) {
        found = true;
        out.theta = std::arg(zc);
        target = zc * M;
      }
    }
    if (!found)
      throw ApproximationError("approximate_in_Ul: no rotation makes det(I + M) usable", 1, 0);
  }

  const Eigen::MatrixXcd S = cayley(target);
  const double root = std::sqrt(static_cast<double>(d));
  const QuadElem zeta_bar = zeta.conj();
  double best = std::numeric_limits<double>::infinity();
  double tol = eps / (10.0 * static_cast<double>(m * m));
  for (int round = 0; round < 40; ++round, tol /= 10) {
    const mpq_class tq(tol);
    AntiFreeData data{QuadMatrix::Constant(m, m, QuadElem(0)), QuadMatrix::Constant(m, m, QuadElem(0))};
    for (Eigen::Index i = 0; i < m; ++i) {
      data.Y(i, i) = rationalize(exact_rational(S(i, i).imag() / root), tq);
      for (Eigen::Index j = i + 1; j < m; ++j) {
        data.X(i, j) = rationalize(exact_rational(S(i, j).real()), tq);
        data.Y(i, j) = rationalize(exact_rational(S(i, j).imag() / root), tq);
      }
    }
    QuadMatrix Mq;
    try {
      Mq = cayley(constraint_fill(data, B, d));
    } catch (const std::domain_error&) {
      continue;
    }
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) Mq(i, j) *= zeta_bar;
    const double err = max_error(Mq, M, d);
    best = std::min(best, err);
    if (err <= eps) {
      out.M = std::move(Mq);
      out.error = err;
      out.tolerance = tol;
      return out;
    }
  }
  throw ApproximationError("approximate_in_Ul: requested eps not reached", out.theta, best);
}

QuadMatrix siegel_form(Eigen::Index ambient_dim, long d) {
  if (ambient_dim < 2) throw std::invalid_argument("siegel_form: dimension must be >= 2");
  QuadMatrix H = QuadMatrix::Constant(ambient_dim, ambient_dim, QuadElem(0, 0, d));
  for (Eigen::Index k = 2; k < ambient_dim; ++k) H(k, k) = QuadElem(1, 0, d);
  H(0, 1) = H(1, 0) = QuadElem(1, 0, d);
  return H;
}

QuadMatrix heisenberg_matrix(const mpq_class& q, const QuadVector& v, long d) {
  check_field(d);
  const Eigen::Index m = v.size();
  QuadMatrix M = identity(m + 2);
  mpq_class norm2 = 0;
  for (Eigen::Index j = 0; j < m; ++j) norm2 += v(j).norm();
  M(0, 1) = QuadElem(-norm2 / 2, -q, d);
  for (Eigen::Index j = 0; j < m; ++j) {
    M(0, 2 + j) = -v(j).conj();
    M(2 + j, 1) = v(j);
  }
  return M;
}

QuadElem form_value(const QuadVector& u, const QuadMatrix& H, const QuadVector& w) {
  if (u.size() != H.rows() || w.size() != H.cols())
    throw std::invalid_argument("form_value: dimension mismatch");
  QuadElem total = 0;
  for (Eigen::Index i = 0; i < H.rows(); ++i)
    for (Eigen::Index j = 0; j < H.cols(); ++j)
      if (!H(i, j).is_zero()) total += u(i) * H(i, j) * w(j).conj();
  return total;
}

bool preserves_form(const QuadMatrix& M, const QuadMatrix& H) {
  if (M.rows() != H.rows() || M.cols() != H.cols()) return false;
  return is_zero(QuadMatrix(M.transpose() * H * conj(M) - H));
}

bool is_unipotent(const QuadMatrix& M) {
  if (M.rows() != M.cols()) return false;
  const QuadMatrix N = M - identity(M.rows());
  QuadMatrix P = N;
  for (Eigen::Index k = 1; k < M.rows(); ++k) P = P * N;
  return is_zero(P);
}

QuadVector unipotent_fixed_vector(const QuadMatrix& M, const QuadMatrix& H) {
  if (M.rows() != M.cols() || H.rows() != M.rows() || H.cols() != M.cols())
    throw std::invalid_argument("unipotent_fixed_vector: M and H must be square of equal size");
  if (!is_unipotent(M)) throw std::invalid_argument("unipotent_fixed_vector: M is not unipotent");
  if (!preserves_form(M, H)) throw std::invalid_argument("unipotent_fixed_vector: M does not preserve H");

  const QuadMatrix K = kernel(QuadMatrix(M - identity(M.rows())));
  std::vector<QuadVector> basis;
  for (Eigen::Index c = 0; c < K.cols(); ++c) {
    QuadVector w = K.col(c);
    for (const QuadVector& e : basis) {
      const QuadElem coef = form_value(w, H, e) / form_value(e, H, e);
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) -= coef * e(i);
    }
    if (is_zero(QuadMatrix(w))) continue;
    const QuadElem h = form_value(w, H, w);
    if (sgn(h.re()) <= 0) return w;
    basis.push_back(w);
  }
  throw std::domain_error("unipotent_fixed_vector: no H-nonpositive fixed vector (not parabolic)");
}

int root_of_unity_power(const QuadMatrix& M, const QuadVector& x) {
  if (M.rows() != M.cols() || x.size() != M.rows())
    throw std::invalid_argument("root_of_unity_power: dimension mismatch");
  const QuadVector y = M * x;
  Eigen::Index i = 0;
  while (i < x.size() && x(i).is_zero()) ++i;
  if (i == x.size()) throw std::invalid_argument("root_of_unity_power: zero vector");
  const QuadElem alpha = y(i) / x(i);
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (y(j) != alpha * x(j)) throw std::invalid_argument("root_of_unity_power: x is not an eigenvector");

  const int bound = 6 * static_cast<int>(M.rows());
  QuadElem power = alpha;
  QuadVector z = y;
  for (int k = 1; k <= bound; ++k) {
    if (power == QuadElem(1)) {
      for (Eigen::Index j = 0; j < x.size(); ++j)
        if (z(j) != x(j)) throw std::logic_error("root_of_unity_power: inconsistent eigenvalue");
      return k;
    }
    power *= alpha;
    z = M * z;
  }
  throw std::domain_error("root_of_unity_power: eigenvalue is not a root of unity within the bound " +
                          std::to_string(bound));
}

}  // namespace cuspforge
