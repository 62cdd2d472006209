#include <gtest/gtest.h>

#include <random>

#include "galiray/errors.hpp"
#include "galiray/polynomial.hpp"

using namespace galiray;

namespace {

Polynomial x(int k) { return Polynomial::variable(k); }
Polynomial c(Complex z) { return Polynomial::constant(z); }

Eigen::VectorXd pt(double a, double b, double d = 0.0) {
  Eigen::VectorXd p(3);
  p << a, b, d;
  return p;
}

}  // namespace

TEST(Polynomial, ZeroAndConstants) {
  EXPECT_TRUE(Polynomial().is_zero());
  EXPECT_EQ(Polynomial().degree(), -1);
  EXPECT_TRUE(c(0.0).is_zero());
  EXPECT_EQ(c(2.0).degree(), 0);
  EXPECT_TRUE((x(0) - x(0)).is_zero());
}

TEST(Polynomial, ArithmeticEvaluates) {
  const Polynomial p = (x(0) + c(2.0)) * (x(1) - c(Complex(0, 1))) + c(3.0) * x(2) * x(2);
  const auto q = pt(0.5, -1.5, 2.0);
  const Complex expected = (0.5 + 2.0) * (-1.5 - Complex(0, 1)) + 3.0 * 4.0;
  EXPECT_NEAR(std::abs(p.evaluate(q) - expected), 0.0, 1e-14);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.spatial_extent(), 3);
}

TEST(Polynomial, TimeVariable) {
  const Polynomial p = x(0) * x(kTimeVar) * x(kTimeVar) + c(1.0);
  EXPECT_EQ(p.time_degree(), 2);
  EXPECT_EQ(p.degree(), 1);
  EXPECT_NEAR(std::abs(p.evaluate(pt(2, 0), 3.0) - Complex(19.0)), 0.0, 1e-14);
  const Polynomial at = p.at_time(3.0);
  EXPECT_EQ(at.time_degree(), 0);
  EXPECT_NEAR(std::abs(at.evaluate(pt(2, 0)) - Complex(19.0)), 0.0, 1e-14);
}

TEST(Polynomial, Derivative) {
  const Polynomial p = x(0) * x(0) * x(1) + c(Complex(0, 2)) * x(1);
  const Polynomial d0 = p.derivative(0);
  const Polynomial d1 = p.derivative(1);
  EXPECT_NEAR(std::abs(d0.evaluate(pt(1.5, 2.0)) - Complex(6.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d1.evaluate(pt(1.5, 2.0)) - Complex(2.25, 2.0)), 0.0, 1e-14);
  EXPECT_TRUE(p.derivative(2).is_zero());
}

TEST(Polynomial, Conjugate) {
  const Polynomial p = c(Complex(1, 2)) * x(0);
  EXPECT_EQ(p.conj().coefficient(Exponents{1, 0, 0, 0}), Complex(1, -2));
}

TEST(Polynomial, AffineSubstitutionMatchesEvaluation) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Polynomial p = c(0.5);
  p += x(0) * x(1) * x(1) + c(Complex(0.3, -0.2)) * x(0) * x(0) * x(0) + x(1) * x(kTimeVar);
  CMatrix A(2, 2);
  CVector s(2);
  for (int i = 0; i < 2; ++i) {
    s(i) = Complex(g(rng), g(rng));
    for (int j = 0; j < 2; ++j) A(i, j) = Complex(g(rng), g(rng));
  }
  const Polynomial q = p.substitute_affine(A, s);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd y(2);
    y << g(rng), g(rng);
    const CVector img = A * y.cast<Complex>() + s;
    // evaluate p at a complex point by hand
    const Complex a = img(0), b = img(1);
    const double t = 0.7;
    const Complex expected = 0.5 + a * b * b + Complex(0.3, -0.2) * a * a * a + b * t;
    EXPECT_LT(std::abs(q.evaluate(y, t) - expected), 1e-12);
  }
}

TEST(Polynomial, Errors) {
  EXPECT_THROW(Polynomial::variable(4), InvalidArgument);
  const Polynomial p = x(2);
  EXPECT_THROW(p.substitute_affine(CMatrix::Identity(2, 2), CVector::Zero(2)), DimensionError);
  Eigen::VectorXd one(1);
  one << 1.0;
  EXPECT_THROW(p.evaluate(one), DimensionError);
}
