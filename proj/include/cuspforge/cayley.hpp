#pragma once

// Unitary groups of diagonal Hermitian forms over l = Q(sqrt(-d)), the Cayley
// transform S(N) = 2 (I + N)^{-1} - I, and the two constructive facts used on
// arithmetic cusps: density of l-points in U(B), and rationality of the fixed
// isotropic vector of a unipotent element.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cuspforge/quadratic_field.hpp"

namespace cuspforge {

/// diag(b_1, ..., b_m), b_i positive rationals.
class HermitianDiagForm {
 public:
  explicit HermitianDiagForm(std::vector<mpq_class> diag);
  Eigen::Index size() const { return static_cast<Eigen::Index>(b_.size()); }
  const mpq_class& operator[](Eigen::Index i) const { return b_[static_cast<std::size_t>(i)]; }
  QuadMatrix matrix() const;
  Eigen::MatrixXd to_double() const;

 private:
  std::vector<mpq_class> b_;
};

Eigen::MatrixXcd cayley(const Eigen::MatrixXcd& N);
/// Exact; throws std::domain_error when I + N is singular.
QuadMatrix cayley(const QuadMatrix& N);

/// t(M) B conj(M) = B.
bool in_unitary(const QuadMatrix& M, const HermitianDiagForm& B);
/// t(S) B = -B conj(S).
bool in_anti(const QuadMatrix& S, const HermitianDiagForm& B);
double unitary_defect(const Eigen::MatrixXcd& M, const HermitianDiagForm& B);
double anti_defect(const Eigen::MatrixXcd& S, const HermitianDiagForm& B);

/// Free data of S = X + sqrt(-d) Y in A_l: entries (i, j) with j > i of X and
/// of Y, and the diagonal of Y. Lower entries are ignored.
/// Both matrices must have rational entries.
struct AntiFreeData {
  QuadMatrix X;
  QuadMatrix Y;
};

/// x_ji = -(b_i / b_j) x_ij, y_ji = (b_i / b_j) y_ij, x_ii = 0.
QuadMatrix constraint_fill(const AntiFreeData& data, const HermitianDiagForm& B, long d);

/// Best continued-fraction convergent within tol of x (x exact).
mpq_class rationalize(const mpq_class& x, const mpq_class& tol);

struct UlApproximation {
  QuadMatrix M;
  /// Error ||M' - M||_max measured against the exact double input.
  double error = 0;
  /// Rotation angle used by the det(I + M) fallback, 0 if none.
  double theta = 0;
  /// Final rationalization tolerance.
  double tolerance = 0;
};

class ApproximationError : public std::runtime_error {
 public:
  ApproximationError(const std::string& what, double theta_, double best_error_)
      : std::runtime_error(what), theta(theta_), best_error(best_error_) {}
  double theta;
  double best_error;
};

/// M' in U_l with exact t(M') B conj(M') = B and ||M' - M||_max <= eps.
UlApproximation approximate_in_Ul(const Eigen::MatrixXcd& M, const HermitianDiagForm& B, long d,
                                  double eps);

/// Exact matrix of n_(s,v) over l with s = q sqrt(d), so that -i s = -q sqrt(-d).
QuadMatrix heisenberg_matrix(const mpq_class& q, const QuadVector& v, long d);
/// The Siegel form (f1, f2 isotropic, <f1, f2> = 1) as an exact matrix.
QuadMatrix siegel_form(Eigen::Index ambient_dim, long d);

/// u^T H conj(w).
QuadElem form_value(const QuadVector& u, const QuadMatrix& H, const QuadVector& w);
bool preserves_form(const QuadMatrix& M, const QuadMatrix& H);
bool is_unipotent(const QuadMatrix& M);

/// A fixed vector v (Mv = v) with H(v, v) <= 0, found by Gram-Schmidt on ker(M - I).
QuadVector unipotent_fixed_vector(const QuadMatrix& M, const QuadMatrix& H);

/// Smallest k <= 6 size(M) with M^k x = x, given that x is an eigenvector.
int root_of_unity_power(const QuadMatrix& M, const QuadVector& x);

/// Cayley transform of a random element of A(B) with Gaussian free data.
template <typename Rng>
Eigen::MatrixXcd random_unitary(const HermitianDiagForm& B, Rng& rng) {
  std::normal_distribution<double> normal;
  const Eigen::Index m = B.size();
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    S(i, i) = {0, normal(rng)};
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double x = normal(rng), y = normal(rng);
      const double r = B[i].get_d() / B[j].get_d();
      S(i, j) = {x, y};
      S(j, i) = {-r * x, r * y};
    }
  }
  return cayley(S);
}

}  // namespace cuspforge
