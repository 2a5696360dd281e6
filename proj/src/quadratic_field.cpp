#include "cuspforge/quadratic_field.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace cuspforge {

namespace {

long merge_fields(long d1, long d2) {
  if (d1 == 0) return d2;
  if (d2 == 0 || d1 == d2) return d1;
  throw std::domain_error("QuadElem: operands live in different fields (d=" + std::to_string(d1) +
                          " vs d=" + std::to_string(d2) + ")");
}

}  // namespace

void check_field(long d) {
  if (d < 1) throw std::domain_error("quadratic field: d must be a positive integer");
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) throw std::domain_error("quadratic field: d must be squarefree");
}

QuadElem::QuadElem(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ != 0) check_field(d_);
  if (d_ == 0 && sgn(b_) != 0) throw std::domain_error("QuadElem: irrational part needs a field");
}

QuadElem QuadElem::conj() const {
  QuadElem r = *this;
  r.b_ = -b_;
  return r;
}

mpq_class QuadElem::norm() const { return a_ * a_ + mpq_class(d_) * b_ * b_; }

std::complex<double> QuadElem::to_complex() const {
  return {a_.get_d(), b_.get_d() * std::sqrt(static_cast<double>(d_))};
}

std::string QuadElem::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::ostringstream os;
  if (sgn(a_) != 0) os << a_.get_str() << (sgn(b_) > 0 ? " + " : " - ");
  else if (sgn(b_) < 0) os << "-";
  const mpq_class mag = abs(b_);
  if (mag != 1) os << mag.get_str() << "*";
  os << "sqrt(-" << d_ << ")";
  return os.str();
}

QuadElem QuadElem::operator-() const {
  QuadElem r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

QuadElem& QuadElem::operator+=(const QuadElem& o) {
  d_ = merge_fields(d_, o.d_);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o) {
  d_ = merge_fields(d_, o.d_);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o) {
  d_ = merge_fields(d_, o.d_);
  // (a + b r)(a' + b' r) with r^2 = -d.
  const mpq_class a = a_ * o.a_ - mpq_class(d_) * b_ * o.b_;
  const mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& o) {
  if (o.is_zero()) throw std::domain_error("QuadElem: division by zero");
  const mpq_class n = o.norm();
  *this *= o.conj();
  a_ /= n;
  b_ /= n;
  return *this;
}

bool operator==(const QuadElem& x, const QuadElem& y) {
  if (sgn(x.b_) != 0 || sgn(y.b_) != 0) merge_fields(x.d_, y.d_);
  return x.a_ == y.a_ && x.b_ == y.b_;
}

bool is_integral(const QuadElem& x) {
  const auto is_int = [](const mpq_class& q) { return q.get_den() == 1; };
  if (x.d() == 0 || x.d() % 4 != 3) return is_int(x.re()) && is_int(x.coeff());
  // Z[(1 + sqrt(-d)) / 2]: a = u/2, b = v/2 with u = v mod 2.
  const mpq_class u = 2 * x.re(), v = 2 * x.coeff();
  if (!is_int(u) || !is_int(v)) return false;
  const mpz_class diff = u.get_num() - v.get_num();
  return mpz_class(diff % 2) == 0;
}

QuadMatrix conj(const QuadMatrix& M) { return M.unaryExpr([](const QuadElem& x) { return x.conj(); }); }

QuadMatrix adjoint(const QuadMatrix& M) { return conj(M).transpose(); }

QuadMatrix identity(Eigen::Index m) {
  QuadMatrix I = QuadMatrix::Constant(m, m, QuadElem(0));
  for (Eigen::Index k = 0; k < m; ++k) I(k, k) = 1;
  return I;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> row_reduce(QuadMatrix& A) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < A.cols() && row < A.rows(); ++col) {
    Eigen::Index p = row;
    while (p < A.rows() && A(p, col).is_zero()) ++p;
    if (p == A.rows()) continue;
    A.row(p).swap(A.row(row));
    const QuadElem inv = QuadElem(1) / A(row, col);
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(row, j) *= inv;
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      if (r == row || A(r, col).is_zero()) continue;
      const QuadElem factor = A(r, col);
      for (Eigen::Index j = 0; j < A.cols(); ++j) A(r, j) -= factor * A(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

QuadMatrix inverse(const QuadMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("inverse: matrix must be square");
  const Eigen::Index m = M.rows();
  QuadMatrix aug(m, 2 * m);
  aug << M, identity(m);
  const auto pivots = row_reduce(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < m || (m > 0 && pivots.back() >= m))
    throw std::domain_error("inverse: singular matrix");
  return aug.rightCols(m);
}

QuadElem determinant(const QuadMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("determinant: matrix must be square");
  QuadMatrix A = M;
  const Eigen::Index m = A.rows();
  QuadElem det = 1;
  for (Eigen::Index col = 0; col < m; ++col) {
    Eigen::Index p = col;
    while (p < m && A(p, col).is_zero()) ++p;
    if (p == m) return QuadElem(0);
    if (p != col) {
      A.row(p).swap(A.row(col));
      det = -det;
    }
    det *= A(col, col);
    const QuadElem inv = QuadElem(1) / A(col, col);
    for (Eigen::Index r = col + 1; r < m; ++r) {
      if (A(r, col).is_zero()) continue;
      const QuadElem factor = A(r, col) * inv;
      for (Eigen::Index j = col; j < m; ++j) A(r, j) -= factor * A(col, j);
    }
  }
  return det;
}

Eigen::Index rank(const QuadMatrix& M) {
  QuadMatrix A = M;
  return static_cast<Eigen::Index>(row_reduce(A).size());
}

QuadMatrix kernel(const QuadMatrix& M) {
  QuadMatrix A = M;
  const auto pivots = row_reduce(A);
  const long d = field_of(M);
  const QuadElem zero(0, 0, d), one(1, 0, d);
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0, p = 0; c < A.cols(); ++c) {
    if (p < static_cast<Eigen::Index>(pivots.size()) && pivots[p] == c) ++p;
    else free.push_back(c);
  }
  QuadMatrix K = QuadMatrix::Constant(A.cols(), static_cast<Eigen::Index>(free.size()), zero);
  for (std::size_t k = 0; k < free.size(); ++k) {
    K(free[k], k) = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) K(pivots[r], k) = -A(r, free[k]);
  }
  return K;
}

bool is_integral(const QuadMatrix& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!is_integral(M(i, j))) return false;
  return true;
}

bool is_zero(const QuadMatrix& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero()) return false;
  return true;
}

long field_of(const QuadMatrix& M) {
  long d = 0;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) d = merge_fields(d, M(i, j).d());
  return d;
}

Eigen::MatrixXcd to_complex(const QuadMatrix& M) {
  return M.unaryExpr([](const QuadElem& x) { return x.to_complex(); });
}

mpq_class exact_rational(double x) {
  if (!std::isfinite(x)) throw std::domain_error("exact_rational: non-finite input");
  mpq_class q(x);  // GMP converts doubles exactly
  q.canonicalize();
  return q;
}

nlohmann::json to_json(const QuadMatrix& M) {
  nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    nlohmann::json ra = nlohmann::json::array(), rb = nlohmann::json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      ra.push_back(M(i, j).re().get_str());
      rb.push_back(M(i, j).coeff().get_str());
    }
    a.push_back(ra);
    b.push_back(rb);
  }
  return {{"d", field_of(M)}, {"a", a}, {"b", b}};
}

QuadMatrix quad_matrix_from_json(const nlohmann::json& j) {
  const long d = j.at("d").get<long>();
  const auto& a = j.at("a");
  const auto& b = j.at("b");
  const Eigen::Index rows = static_cast<Eigen::Index>(a.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(a[0].size()) : 0;
  if (b.size() != a.size()) throw std::invalid_argument("quad_matrix_from_json: shape mismatch");
  QuadMatrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (a[i].size() != static_cast<std::size_t>(cols) || b[i].size() != a[i].size())
      throw std::invalid_argument("quad_matrix_from_json: ragged rows");
    for (Eigen::Index j2 = 0; j2 < cols; ++j2) {
      mpq_class re(a[i][j2].get<std::string>()), im(b[i][j2].get<std::string>());
      M(i, j2) = QuadElem(re, im, d);
    }
  }
  return M;
}

}  // namespace cuspforge
