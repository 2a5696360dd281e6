#pragma once

// Exact arithmetic in l = Q(sqrt(-d)), d squarefree positive. An element is
// a + b sqrt(-d) with a, b arbitrary-precision rationals. The tag d = 0 marks
// a plain rational that adopts the field of whatever it meets.

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <gmpxx.h>
#include <json.hpp>

namespace cuspforge {

class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(int a) : a_(a) {}  // NOLINT(google-explicit-constructor): literals
  QuadElem(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadElem(const mpq_class& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadElem(mpq_class a, mpq_class b, long d);

  /// sqrt(-d) itself.
  static QuadElem sqrt_neg(long d) { return QuadElem(0, 1, d); }

  const mpq_class& re() const { return a_; }
  /// Coefficient of sqrt(-d), not the imaginary part.
  const mpq_class& coeff() const { return b_; }
  long d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QuadElem conj() const;
  /// a^2 + d b^2.
  mpq_class norm() const;
  std::complex<double> to_complex() const;
  std::string to_string() const;

  QuadElem operator-() const;
  QuadElem& operator+=(const QuadElem& o);
  QuadElem& operator-=(const QuadElem& o);
  QuadElem& operator*=(const QuadElem& o);
  /// Throws std::domain_error on division by zero.
  QuadElem& operator/=(const QuadElem& o);

  friend bool operator==(const QuadElem& x, const QuadElem& y);

 private:
  mpq_class a_{0};
  mpq_class b_{0};
  long d_ = 0;
};

inline QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
inline QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
inline QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
inline QuadElem operator/(QuadElem x, const QuadElem& y) { return x /= y; }
inline bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }
inline std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << x.to_string(); }

inline QuadElem conj(const QuadElem& x) { return x.conj(); }

/// Throws std::domain_error unless d >= 1 and squarefree.
void check_field(long d);

/// Membership in the ring of integers of l.
bool is_integral(const QuadElem& x);

}  // namespace cuspforge

namespace Eigen {

template <>
struct NumTraits<cuspforge::QuadElem> : GenericNumTraits<cuspforge::QuadElem> {
  using Real = cuspforge::QuadElem;
  using NonInteger = cuspforge::QuadElem;
  using Literal = cuspforge::QuadElem;
  using Nested = cuspforge::QuadElem;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 32,
    MulCost = 64
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace cuspforge {

using QuadMatrix = Eigen::Matrix<QuadElem, Eigen::Dynamic, Eigen::Dynamic>;
using QuadVector = Eigen::Matrix<QuadElem, Eigen::Dynamic, 1>;

/// Entrywise conjugate (Eigen's conjugate() is the identity on non-complex scalars).
QuadMatrix conj(const QuadMatrix& M);
QuadMatrix adjoint(const QuadMatrix& M);
QuadMatrix identity(Eigen::Index m);

/// Gauss-Jordan; throws std::domain_error when singular.
QuadMatrix inverse(const QuadMatrix& M);
QuadElem determinant(const QuadMatrix& M);
Eigen::Index rank(const QuadMatrix& M);
/// Columns span the right kernel.
QuadMatrix kernel(const QuadMatrix& M);

bool is_integral(const QuadMatrix& M);
bool is_zero(const QuadMatrix& M);
/// Common field tag of all entries (0 if every entry is untagged); throws on mixed fields.
long field_of(const QuadMatrix& M);

Eigen::MatrixXcd to_complex(const QuadMatrix& M);
/// Exact lift of a real double (every finite double is a dyadic rational).
mpq_class exact_rational(double x);

/// {"d": d, "a": [["p/q", ...], ...], "b": [[...]]}, entry = a + b sqrt(-d).
nlohmann::json to_json(const QuadMatrix& M);
QuadMatrix quad_matrix_from_json(const nlohmann::json& j);

}  // namespace cuspforge
