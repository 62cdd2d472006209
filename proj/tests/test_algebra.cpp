#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "galiray/algebra.hpp"
#include "galiray/errors.hpp"

using namespace galiray;

namespace {

AlgebraElement B(int dim, const char* name) { return AlgebraElement::basis(dim, name); }

double diff(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).max_abs(); }

}  // namespace

TEST(Algebra, DimensionAndBasisNames) {
  EXPECT_EQ(algebra_dimension(1), 3);
  EXPECT_EQ(algebra_dimension(2), 6);
  EXPECT_EQ(algebra_dimension(3), 10);
  const std::vector<std::string> expected{"a12", "a13", "a23", "b1", "b2", "b3", "d1", "d2", "d3", "f"};
  EXPECT_EQ(basis_names(3), expected);
}

TEST(Algebra, CoordinatesRoundTrip) {
  std::mt19937_64 rng(1);
  for (int dim = 1; dim <= 3; ++dim) {
    const AlgebraElement X = random_algebra_element(rng, dim, 1.0);
    EXPECT_EQ(diff(AlgebraElement::from_coordinates(dim, X.coordinates()), X), 0.0);
  }
  EXPECT_EQ(diff(B(3, "a21"), -1.0 * B(3, "a12")), 0.0);
}

TEST(Algebra, HandComputedBrackets) {
  EXPECT_EQ(diff(commutator(B(3, "a12"), B(3, "a23")), B(3, "a13")), 0.0);
  EXPECT_EQ(diff(commutator(B(3, "a12"), B(3, "b1")), -1.0 * B(3, "b2")), 0.0);
  EXPECT_EQ(diff(commutator(B(3, "a12"), B(3, "d2")), B(3, "d1")), 0.0);
  EXPECT_EQ(diff(commutator(B(3, "d2"), B(3, "f")), B(3, "b2")), 0.0);
  EXPECT_EQ(commutator(B(3, "b1"), B(3, "d1")).max_abs(), 0.0);
  EXPECT_EQ(commutator(B(3, "d1"), B(3, "d2")).max_abs(), 0.0);
  EXPECT_EQ(commutator(B(3, "b2"), B(3, "f")).max_abs(), 0.0);
  EXPECT_EQ(diff(commutator(B(1, "d1"), B(1, "f")), B(1, "b1")), 0.0);
}

TEST(Algebra, StructureConstantsMatchMatrixCommutator) {
  for (int dim = 1; dim <= 3; ++dim) {
    for (const auto& a : basis_names(dim))
      for (const auto& b : basis_names(dim))
        EXPECT_EQ(diff(commutator(B(dim, a.c_str()), B(dim, b.c_str())),
                       matrix_commutator(B(dim, a.c_str()), B(dim, b.c_str()))),
                  0.0)
            << a << "," << b;
  }
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const AlgebraElement X = random_algebra_element(rng, 3, 1.0);
    const AlgebraElement Y = random_algebra_element(rng, 3, 1.0);
    EXPECT_LT(diff(commutator(X, Y), matrix_commutator(X, Y)), 1e-12);
    EXPECT_LT((commutator(X, Y) + commutator(Y, X)).max_abs(), 1e-12);
  }
}

TEST(Algebra, MatrixCommutatorAgreesWithEmbedding) {
  std::mt19937_64 rng(13);
  for (int dim = 1; dim <= 3; ++dim) {
    const AlgebraElement X = random_algebra_element(rng, dim, 1.0);
    const AlgebraElement Y = random_algebra_element(rng, dim, 1.0);
    const Matrix x = embed_algebra(X);
    const Matrix y = embed_algebra(Y);
    EXPECT_LT((embed_algebra(commutator(X, Y)) - (x * y - y * x)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(diff(decode_algebra(x), X), 0.0);
  }
}

TEST(Algebra, JacobiProperty) {
  std::mt19937_64 rng(14);
  for (int dim = 1; dim <= 3; ++dim) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      worst = std::max(worst, jacobi_residual(random_algebra_element(rng, dim, 1.0),
                                              random_algebra_element(rng, dim, 1.0),
                                              random_algebra_element(rng, dim, 1.0)));
    }
    EXPECT_LT(worst, 1e-12);
  }
}

TEST(Algebra, Bilinearity) {
  std::mt19937_64 rng(15);
  const AlgebraElement X = random_algebra_element(rng, 3, 1.0);
  const AlgebraElement Y = random_algebra_element(rng, 3, 1.0);
  const AlgebraElement Z = random_algebra_element(rng, 3, 1.0);
  EXPECT_LT(diff(commutator(2.0 * X + Y, Z), 2.0 * commutator(X, Z) + commutator(Y, Z)), 1e-12);
}

TEST(Algebra, ExponentialClosedForms) {
  const double tau = 0.7;
  const GalileiElement tr = exponential(tau * B(3, "b2"));
  EXPECT_NEAR(tr.u()(1), tau, 1e-15);
  EXPECT_EQ(tr.v().norm(), 0.0);
  const GalileiElement bo = exponential(tau * B(3, "d1"));
  EXPECT_NEAR(bo.v()(0), tau, 1e-15);
  EXPECT_NEAR(bo.u().norm(), 0.0, 1e-15);
  const GalileiElement ti = exponential(tau * B(3, "f"));
  EXPECT_NEAR(ti.eta(), tau, 1e-15);

  // exp(d1 + f) = (I, 1, e1, e1 / 2)
  const GalileiElement m = exponential(B(2, "d1") + B(2, "f"));
  EXPECT_NEAR(m.eta(), 1.0, 1e-14);
  EXPECT_NEAR(m.v()(0), 1.0, 1e-14);
  EXPECT_NEAR(m.u()(0), 0.5, 1e-14);

  // a12 = E12 - E21 exponentiates to R(-theta); the lifted angle follows.
  const GalileiElement rot = exponential(5.0 * B(2, "a12"));
  EXPECT_NEAR(rot.angle().theta, -5.0, 1e-15);
  EXPECT_LT((rot.W() - plane_rotation(-5.0)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Algebra, ExponentialMatchesMatrixExponential) {
  std::mt19937_64 rng(16);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int i = 0; i < 100; ++i) {
      const AlgebraElement X = random_algebra_element(rng, dim, 1.5);
      EXPECT_LT((embed_matrix(exponential(X)) - expm(embed_algebra(X))).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Algebra, OneParameterSubgroup) {
  std::mt19937_64 rng(17);
  for (int dim = 2; dim <= 3; ++dim) {
    const AlgebraElement X = random_algebra_element(rng, dim, 1.0);
    const GalileiElement lhs = exponential(0.3 * X) * exponential(0.9 * X);
    EXPECT_LT(max_abs_difference(lhs, exponential(1.2 * X)), 1e-12);
  }
}

TEST(Algebra, ExpmOfNilpotent) {
  Matrix A = Matrix::Zero(3, 3);
  A(0, 1) = 2.0;
  A(1, 2) = 3.0;
  const Matrix E = expm(A);
  EXPECT_NEAR(E(0, 2), 3.0, 1e-14);  // A^2 / 2 = 6 / 2
  EXPECT_NEAR(E(0, 1), 2.0, 1e-14);
}

TEST(Algebra, Errors) {
  EXPECT_THROW(B(3, "a11"), InvalidArgument);
  EXPECT_THROW(B(2, "b3"), InvalidArgument);
  EXPECT_THROW(B(3, "x1"), InvalidArgument);
  EXPECT_THROW(commutator(B(2, "b1"), B(3, "b1")), DimensionError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(AlgebraElement(bad, Vector::Zero(2), Vector::Zero(2), 0.0), InvalidArgument);
}

TEST(Algebra, JsonRoundTrip) {
  std::mt19937_64 rng(18);
  const AlgebraElement X = random_algebra_element(rng, 3, 1.0);
  const nlohmann::json j = X;
  EXPECT_EQ(diff(j.get<AlgebraElement>(), X), 0.0);
  const nlohmann::json named{{"dim", 3}, {"basis", "d2"}};
  EXPECT_EQ(diff(named.get<AlgebraElement>(), B(3, "d2")), 0.0);
}
