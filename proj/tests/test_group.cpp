#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "galiray/errors.hpp"
#include "galiray/group.hpp"
#include "support/oracles.hpp"

using namespace galiray;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

double plain_diff(const oracle::Plain& a, const GalileiElement& b) {
  double d = (a.W - b.W()).cwiseAbs().maxCoeff();
  d = std::max(d, std::abs(a.eta - b.eta()));
  d = std::max(d, (a.v - b.v()).cwiseAbs().maxCoeff());
  return std::max(d, (a.u - b.u()).cwiseAbs().maxCoeff());
}

}  // namespace

TEST(Group, IdentityIsNeutral) {
  for (int dim = 1; dim <= 3; ++dim) {
    const GalileiElement e = GalileiElement::identity(dim);
    EXPECT_EQ(max_abs_difference(e * e, e), 0.0);
    EXPECT_EQ(max_abs_difference(inverse(e), e), 0.0);
  }
}

TEST(Group, MultiplyMatchesPlainLoopOracle) {
  std::mt19937_64 rng(11);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int i = 0; i < 200; ++i) {
      const GalileiElement r = random_element(rng, dim, 1.0);
      const GalileiElement s = random_element(rng, dim, 1.0);
      EXPECT_LT(plain_diff(oracle::multiply(oracle::plain(r), oracle::plain(s)), r * s), 1e-14);
    }
  }
}

TEST(Group, HandComputedProduct) {
  // r = (R(pi/2), 1, (1,0), (0,1)), s = (I, 2, (0,3), (4,0))
  const GalileiElement r = GalileiElement::planar(std::numbers::pi / 2, 1.0, vec({1, 0}), vec({0, 1}));
  const GalileiElement s = GalileiElement::planar(0.0, 2.0, vec({0, 3}), vec({4, 0}));
  const GalileiElement rs = r * s;
  // W_r v_s = (-3, 0); W_r u_s = (0, 4)
  EXPECT_NEAR(rs.eta(), 3.0, 1e-15);
  EXPECT_NEAR((rs.v() - vec({-2, 0})).norm(), 0.0, 1e-15);
  EXPECT_NEAR((rs.u() - vec({2, 5})).norm(), 0.0, 1e-15);
  EXPECT_NEAR(rs.angle().theta, std::numbers::pi / 2, 1e-15);
}

TEST(Group, AssociativityProperty) {
  std::mt19937_64 rng(2024);
  for (int dim = 1; dim <= 3; ++dim) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const GalileiElement a = random_element(rng, dim, 1.0);
      const GalileiElement b = random_element(rng, dim, 1.0);
      const GalileiElement c = random_element(rng, dim, 1.0);
      worst = std::max(worst, max_abs_difference((a * b) * c, a * (b * c)));
    }
    EXPECT_LT(worst, 1e-12) << "dim " << dim;
  }
}

TEST(Group, InverseProperty) {
  std::mt19937_64 rng(7);
  for (int dim = 1; dim <= 3; ++dim) {
    const GalileiElement e = GalileiElement::identity(dim);
    for (int i = 0; i < 500; ++i) {
      const GalileiElement a = random_element(rng, dim, 2.0);
      EXPECT_LT(max_abs_difference(a * inverse(a), e), 1e-12);
      EXPECT_LT(max_abs_difference(inverse(a) * a, e), 1e-12);
    }
  }
}

TEST(Group, EmbeddingIsHomomorphism) {
  std::mt19937_64 rng(8);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int i = 0; i < 300; ++i) {
      const GalileiElement a = random_element(rng, dim, 1.0);
      const GalileiElement b = random_element(rng, dim, 1.0);
      EXPECT_LT((embed_matrix(a * b) - embed_matrix(a) * embed_matrix(b)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((embed_matrix(inverse(a)) - embed_matrix(a).inverse()).cwiseAbs().maxCoeff(), 1e-12);
      const GalileiElement back = decode_matrix(embed_matrix(a));
      EXPECT_LT((back.W() - a.W()).cwiseAbs().maxCoeff(), 1e-15);
      EXPECT_EQ(back.eta(), a.eta());
    }
  }
}

TEST(Group, EmbeddingLayout) {
  const GalileiElement g = GalileiElement::planar(0.0, 0.5, vec({1, 2}), vec({3, 4}));
  const Matrix m = embed_matrix(g);
  ASSERT_EQ(m.rows(), 4);
  EXPECT_EQ(m(0, 2), 1.0);
  EXPECT_EQ(m(1, 2), 2.0);
  EXPECT_EQ(m(0, 3), 3.0);
  EXPECT_EQ(m(1, 3), 4.0);
  EXPECT_EQ(m(2, 3), 0.5);
  EXPECT_EQ(m(3, 3), 1.0);
  EXPECT_EQ(m(3, 2), 0.0);
}

TEST(Group, MomentumActionComposes) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int i = 0; i < 300; ++i) {
      const GalileiElement a = random_element(rng, dim, 1.0);
      const GalileiElement b = random_element(rng, dim, 1.0);
      Vector p(dim);
      for (int k = 0; k < dim; ++k) p(k) = u(rng);
      const double gamma = 0.7;
      const Vector lhs = act_on_momentum(b, act_on_momentum(a, p, gamma), gamma);
      EXPECT_LT((lhs - act_on_momentum(a * b, p, gamma)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Group, LiftedAngleAddsBeyondPi) {
  const Vector z = Vector::Zero(2);
  const GalileiElement a = GalileiElement::planar(2.5, 0, z, z);
  const GalileiElement b = GalileiElement::planar(2.0, 0, z, z);
  EXPECT_NEAR((a * b).angle().theta, 4.5, 1e-15);
  EXPECT_LT(((a * b).W() - plane_rotation(4.5)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(inverse(a).angle().theta, -2.5, 1e-15);
}

TEST(Group, GenericConstructorReadsAngle) {
  const GalileiElement g(plane_rotation(0.3), 0.0, Vector::Zero(2), Vector::Zero(2));
  EXPECT_NEAR(g.angle().theta, 0.3, 1e-15);
}

TEST(Group, RejectsImproperRotation) {
  Matrix reflect = Matrix::Identity(2, 2);
  reflect(1, 1) = -1.0;
  EXPECT_THROW(GalileiElement(reflect, 0.0, Vector::Zero(2), Vector::Zero(2)), InvalidArgument);
  Matrix skew = Matrix::Identity(3, 3);
  skew(0, 1) = 0.1;
  EXPECT_THROW(GalileiElement(skew, 0.0, Vector::Zero(3), Vector::Zero(3)), InvalidArgument);
}

TEST(Group, DimensionErrors) {
  EXPECT_THROW(GalileiElement::identity(4), DimensionError);
  EXPECT_THROW(GalileiElement::identity(2) * GalileiElement::identity(3), DimensionError);
  EXPECT_THROW(GalileiElement(Matrix::Identity(2, 2), 0.0, Vector::Zero(3), Vector::Zero(2)), DimensionError);
}

TEST(Group, RandomElementsAreSeeded) {
  const GalileiElement a = random_element(42, 3, 1.0);
  const GalileiElement b = random_element(42, 3, 1.0);
  EXPECT_EQ(max_abs_difference(a, b), 0.0);
  EXPECT_LT(rotation_defect(a), 1e-12);
  EXPECT_THROW(random_element(1, 3, -1.0), InvalidArgument);
  const GalileiElement z = random_element(5, 2, 0.0);
  EXPECT_EQ(z.v().norm(), 0.0);
}

TEST(Group, PathEndpoints) {
  std::mt19937_64 rng(3);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int i = 0; i < 50; ++i) {
      const GalileiElement r = random_element(rng, dim, 1.0);
      EXPECT_LT(max_abs_difference(path_point(r, 0.0), GalileiElement::identity(dim)), 1e-12);
      EXPECT_LT(max_abs_difference(path_point(r, 1.0), r), 1e-12);
      EXPECT_LT(rotation_defect(path_point(r, 0.37)), 1e-12);
    }
  }
}

TEST(Group, JsonRoundTrip) {
  std::mt19937_64 rng(4);
  for (int dim = 1; dim <= 3; ++dim) {
    const GalileiElement r = random_element(rng, dim, 1.0);
    const nlohmann::json j = r;
    EXPECT_EQ(j.at("dim").get<int>(), dim);
    const GalileiElement back = j.get<GalileiElement>();
    EXPECT_LT(max_abs_difference(back, r), 1e-15);
  }
}

TEST(Group, JsonRejectsBadInput) {
  nlohmann::json j = GalileiElement::planar(0.4, 0, Vector::Zero(2), Vector::Zero(2));
  j["theta"] = 1.0;
  EXPECT_THROW(j.get<GalileiElement>(), ConfigError);
  nlohmann::json k = GalileiElement::identity(3);
  k["v"] = {1.0, 2.0};
  EXPECT_THROW(k.get<GalileiElement>(), ConfigError);
}
