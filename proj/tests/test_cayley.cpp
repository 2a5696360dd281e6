#include <doctest.h>

#include <cmath>
#include <random>

#include "cuspforge/cayley.hpp"

using namespace cuspforge;

namespace {

QuadElem random_elem(std::mt19937_64& rng, long d) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return QuadElem(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)), d);
}

mpq_class random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return mpq_class(num(rng), den(rng));
}

AntiFreeData random_free(Eigen::Index m, std::mt19937_64& rng) {
  AntiFreeData data{QuadMatrix::Constant(m, m, QuadElem(0)), QuadMatrix::Constant(m, m, QuadElem(0))};
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) {
      data.X(i, j) = random_rational(rng);
      data.Y(i, j) = random_rational(rng);
    }
  return data;
}

// t(M) B conj(M) = B computed directly, without the library predicate.
bool preserves(const QuadMatrix& M, const HermitianDiagForm& B) {
  const QuadMatrix Bm = B.matrix();
  return is_zero(QuadMatrix(M.transpose() * Bm * conj(M) - Bm));
}

}  // namespace

TEST_CASE("cayley examples") {
  CHECK(is_zero(QuadMatrix(cayley(QuadMatrix(QuadMatrix::Constant(2, 2, QuadElem(0)))) - identity(2))));
  CHECK(is_zero(cayley(identity(3))));
  CHECK_THROWS_AS(cayley(QuadMatrix(QuadMatrix::Constant(2, 2, QuadElem(0)) - identity(2))), std::domain_error);
  CHECK((cayley(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(2, 2))) - Eigen::MatrixXcd::Identity(2, 2)).norm() == 0);
  CHECK_THROWS_AS(cayley(Eigen::MatrixXcd(-Eigen::MatrixXcd::Identity(2, 2))), std::domain_error);
}

TEST_CASE("cayley is an involution") {
  std::mt19937_64 rng(41);
  int tested = 0;
  for (long d : {1L, 2L, 3L, 7L})
    for (int k = 0; k < 10; ++k) {
      QuadMatrix N(3, 3);
      for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) N(i, j) = random_elem(rng, d);
      if (determinant(QuadMatrix(identity(3) + N)).is_zero()) continue;
      CHECK(is_zero(QuadMatrix(cayley(cayley(N)) - N)));
      ++tested;
    }
  CHECK(tested > 30);
}

TEST_CASE("constraint fill") {
  std::mt19937_64 rng(42);
  const HermitianDiagForm I({1, 1, 1});
  for (long d : {1L, 2L, 3L, 7L}) {
    AntiFreeData zero{QuadMatrix::Constant(3, 3, QuadElem(0)), QuadMatrix::Constant(3, 3, QuadElem(0))};
    CHECK(is_zero(constraint_fill(zero, I, d)));

    const QuadMatrix S = constraint_fill(random_free(3, rng), I, d);
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j < 3; ++j) {
        CHECK(S(j, i).re() == -S(i, j).re());
        CHECK(S(j, i).coeff() == S(i, j).coeff());
      }

    const HermitianDiagForm B({mpq_class(1), mpq_class(2, 3), mpq_class(5)});
    const QuadMatrix T = constraint_fill(random_free(3, rng), B, d);
    const QuadMatrix Bm = B.matrix();
    CHECK(is_zero(QuadMatrix(T.transpose() * Bm + Bm * conj(T))));
    CHECK(in_anti(T, B));
    // The Cayley image of an exact anti matrix preserves B exactly.
    CHECK(preserves(cayley(T), B));
    CHECK(in_unitary(cayley(T), B));
  }
}

TEST_CASE("unitary to anti in floating point") {
  std::mt19937_64 rng(43);
  const HermitianDiagForm B({1, 2});
  for (int k = 0; k < 100; ++k) {
    const Eigen::MatrixXcd M = random_unitary(B, rng);
    CHECK(unitary_defect(M, B) < 1e-12);
    const Eigen::MatrixXcd S = cayley(M);
    CHECK(anti_defect(S, B) <= 1e-12 * (1 + S.squaredNorm()));
  }
}

TEST_CASE("rationalize") {
  // |355/113 - 22/7| = 1/791.
  CHECK(rationalize(mpq_class(355, 113), mpq_class(1, 700)) == mpq_class(22, 7));
  CHECK(rationalize(mpq_class(355, 113), mpq_class(1, 1000)) == mpq_class(355, 113));
  CHECK(rationalize(mpq_class(1, 3), mpq_class(0)) == mpq_class(1, 3));
  const mpq_class pi = exact_rational(3.141592653589793);
  for (int e = 2; e <= 12; ++e) {
    const mpq_class tol(1, static_cast<unsigned long>(std::pow(10, e)));
    const mpq_class r = rationalize(pi, tol);
    CHECK(abs(r - pi) <= tol);
  }
}

TEST_CASE("approximation in U_l") {
  std::mt19937_64 rng(44);
  for (int m : {2, 3}) {
    std::vector<mpq_class> diag;
    for (int i = 0; i < m; ++i) diag.emplace_back(1 + i);
    const HermitianDiagForm B(diag);
    for (long d : {1L, 2L, 3L, 7L})
      for (int k = 0; k < 10; ++k) {
        const Eigen::MatrixXcd M = random_unitary(B, rng);
        const UlApproximation a = approximate_in_Ul(M, B, d, 1e-6);
        CHECK(preserves(a.M, B));
        CHECK(field_of(a.M) == d);
        CHECK((to_complex(a.M) - M).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK(a.error <= 1e-6);
      }
  }
}

TEST_CASE("approximation special inputs") {
  const HermitianDiagForm B({1, 2});
  const UlApproximation id = approximate_in_Ul(Eigen::MatrixXcd::Identity(2, 2), B, 1, 1e-6);
  CHECK(is_zero(QuadMatrix(id.M - identity(2))));
  CHECK(id.error == 0);
  CHECK(id.theta == 0);

  const UlApproximation neg = approximate_in_Ul(-Eigen::MatrixXcd::Identity(2, 2), B, 1, 1e-6);
  CHECK(neg.theta > 0);
  CHECK(preserves(neg.M, B));
  CHECK((to_complex(neg.M) + Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-6);

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(approximate_in_Ul(bad, B, 1, 1e-6), std::invalid_argument);
}

TEST_CASE("unipotent fixed vectors") {
  for (long d : {1L, 3L}) {
    const QuadMatrix H = siegel_form(4, d);
    // Central element: fixed vector spans f1.
    QuadVector zero(2);
    zero << QuadElem(0), QuadElem(0);
    const QuadMatrix Mc = heisenberg_matrix(mpq_class(3, 2), zero, d);
    CHECK(is_unipotent(Mc));
    CHECK(preserves_form(Mc, H));
    const QuadVector x = unipotent_fixed_vector(Mc, H);
    CHECK(!x(0).is_zero());
    for (Eigen::Index i = 1; i < 4; ++i) CHECK(x(i).is_zero());
    CHECK(form_value(x, H, x).is_zero());

    const QuadVector e = unipotent_fixed_vector(identity(4), H);
    CHECK(sgn(form_value(e, H, e).re()) <= 0);
    CHECK(form_value(e, H, e).is_rational());
  }

  // 3x3 over Q(i) with v = 1 + i: rank 2, fixed line f1.
  QuadVector v(1);
  v << QuadElem(1, 1, 1);
  const QuadMatrix M = heisenberg_matrix(mpq_class(2), v, 1);
  const QuadMatrix H = siegel_form(3, 1);
  CHECK(preserves_form(M, H));
  CHECK(rank(QuadMatrix(M - identity(3))) == 2);
  const QuadVector x = unipotent_fixed_vector(M, H);
  CHECK(is_zero(QuadMatrix(M * x - x)));
  CHECK(sgn(form_value(x, H, x).re()) <= 0);
  CHECK(x(1).is_zero());
  CHECK(x(2).is_zero());

  // Not unipotent.
  QuadMatrix D = identity(3);
  D(1, 1) = QuadElem(2);
  CHECK_THROWS(unipotent_fixed_vector(D, H));
}

TEST_CASE("roots of unity") {
  QuadVector x(2);
  x << QuadElem(1), QuadElem(0);
  const auto k_of = [&](const QuadElem& a) { return root_of_unity_power(QuadMatrix(identity(2) * a), x); };
  CHECK(k_of(QuadElem(1)) == 1);
  CHECK(k_of(QuadElem(-1)) == 2);
  CHECK(k_of(QuadElem(0, 1, 1)) == 4);
  CHECK(k_of(QuadElem(mpq_class(1, 2), mpq_class(1, 2), 3)) == 6);
  CHECK(k_of(QuadElem(mpq_class(-1, 2), mpq_class(1, 2), 3)) == 3);
  CHECK_THROWS_AS(k_of(QuadElem(2)), std::domain_error);
  QuadMatrix swap = QuadMatrix::Constant(2, 2, QuadElem(0));
  swap(0, 1) = swap(1, 0) = QuadElem(1);
  CHECK_THROWS_AS(root_of_unity_power(swap, x), std::invalid_argument);
}
