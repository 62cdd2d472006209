#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "galiray/errors.hpp"
#include "galiray/verify.hpp"
#include "support/oracles.hpp"

using namespace galiray;

namespace {

constexpr Complex I(0.0, 1.0);

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST(Verify, IdentityPairHasUnitMultiplier) {
  for (RepKind kind : {RepKind::bargmann3d, RepKind::nonabelian2d, RepKind::schrodinger2d, RepKind::schrodinger3d}) {
    const RepDescriptor rep = RepDescriptor::defaults(kind);
    const GalileiElement e = GalileiElement::identity(rep.dim());
    const PolyGaussianState f = PolyGaussianState::gaussian(Vector::Zero(rep.dim()), 1.0);
    const MultiplierReport m = extract_multiplier(rep, e, e, TimeLabel{0.0}, f);
    EXPECT_LT(std::abs(m.omega - 1.0), 1e-12);
    EXPECT_LT(m.constancy_spread, 1e-12);
    EXPECT_GE(m.n_points, kMinSamplePoints);
  }
}

TEST(Verify, TranslationBoostMultiplier) {
  // r = translation(u), s = boost(v), gamma = 1:
  // U(r)U(s)f(p) = e^{i<u,p>} f(p+v), U(rs)f(p) = e^{i<u,p> + i<u,v>/2} f(p+v).
  RepDescriptor rep = RepDescriptor::defaults(RepKind::schrodinger2d);
  rep.gamma = 1.0;
  const Vector u = vec({0.4, -1.0});
  const Vector v = vec({1.5, 0.2});
  const GalileiElement r = GalileiElement::translation(u);
  const GalileiElement s = GalileiElement::boost(v);
  const PolyGaussianState f = PolyGaussianState::gaussian(Vector::Zero(2), 1.0);

  const oracle::Wave w = oracle::wave(f);
  const oracle::Wave lhs = oracle::represent(rep, r, 0.0, oracle::represent(rep, s, 0.0, w));
  const oracle::Wave rhs = oracle::represent(rep, r * s, 0.0, w);
  const Vector p = vec({-1.2, 0.3});
  const Complex by_oracle = lhs(p) / rhs(p);

  const Complex frozen(0.9800665778412416, -0.19866933079506122);  // e^{-0.2 i}
  EXPECT_LT(std::abs(by_oracle - frozen), 1e-14);

  const MultiplierReport m = extract_multiplier(rep, r, s, TimeLabel{0.0}, f);
  EXPECT_LT(std::abs(m.omega - frozen), 1e-12);
  EXPECT_LT(m.constancy_spread, 1e-12);
  ASSERT_TRUE(m.matched_exponent.has_value());
  EXPECT_LT(m.matched_exponent->residual, 1e-12);
}

TEST(Verify, MultiplierIndependentOfStateAndSpin) {
  std::mt19937_64 rng(51);
  RepDescriptor rep = RepDescriptor::defaults(RepKind::schrodinger2d);
  const GalileiElement r = random_element(rng, 2, 1.0);
  const GalileiElement s = random_element(rng, 2, 1.0);
  const Complex base = extract_multiplier(rep, r, s, TimeLabel{0.0}, random_state(rng, 2, 2, 2)).omega;
  for (int i = 0; i < 3; ++i) {
    const MultiplierReport m = extract_multiplier(rep, r, s, TimeLabel{0.0}, random_state(rng, 2, 2, 2), 7 + i);
    EXPECT_LT(std::abs(m.omega - base), 1e-9);
  }
  rep.s = 2.5;
  EXPECT_LT(std::abs(extract_multiplier(rep, r, s, TimeLabel{0.0}, random_state(rng, 2, 2, 2)).omega - base), 1e-9);
}

TEST(Verify, MultiplierMatchesPredictedExponent) {
  std::mt19937_64 rng(52);
  for (RepKind kind : {RepKind::bargmann3d, RepKind::nonabelian2d, RepKind::schrodinger2d, RepKind::schrodinger3d}) {
    const RepDescriptor rep = RepDescriptor::defaults(kind);
    const ExponentFn xi = predicted_exponent(rep);
    for (int i = 0; i < 20; ++i) {
      const GalileiElement r = random_element(rng, rep.dim(), 1.0);
      const GalileiElement s = random_element(rng, rep.dim(), 1.0);
      const PolyGaussianState f = random_state(rng, rep.dim(), 1, 1);
      const MultiplierReport m = extract_multiplier(rep, r, s, TimeLabel{0.0}, f);
      EXPECT_TRUE(m.pass(1e-9, 1e-10)) << rep_kind_name(kind);
      EXPECT_LT(std::abs(m.omega - std::exp(I * xi(r, s))), 1e-9) << rep_kind_name(kind);
    }
  }
}

TEST(Verify, TimeMultiplierLaw) {
  std::mt19937_64 rng(53);
  for (RepKind kind : {RepKind::nonabelian2d, RepKind::schrodinger2d, RepKind::schrodinger3d}) {
    const RepDescriptor rep = RepDescriptor::defaults(kind);
    for (double t : {0.5, 1.7}) {
      const GalileiElement r = random_element(rng, rep.dim(), 1.0);
      const GalileiElement s = random_element(rng, rep.dim(), 1.0);
      const PolyGaussianState f = random_state(rng, rep.dim(), 1, 1);
      EXPECT_LT(check_time_multiplier(rep, r, s, TimeLabel{t}, f), 1e-9) << rep_kind_name(kind);
    }
  }
  // bargmann3d substitutes p - gamma v, which reverses the sign of the ratio's exponent
  const RepDescriptor b = RepDescriptor::defaults(RepKind::bargmann3d);
  const GalileiElement r = random_element(rng, 3, 1.0);
  const GalileiElement s = random_element(rng, 3, 1.0);
  ExponentParams p;
  p.gamma = b.gamma;
  p.t = 0.9;
  const double xt = PhaseExponent(ExponentKind::xi_t, 3, p)(r, s);
  const Complex ratio = time_multiplier_ratio(b, r, s, TimeLabel{0.9}, PolyGaussianState::gaussian(Vector::Zero(3), 1.0));
  EXPECT_LT(std::abs(ratio - std::exp(-I * xt)), 1e-9);
}

TEST(Verify, ContinuousExponentFollowsBranch) {
  // -<u,v>/2 = -4 lies outside (-pi, pi]
  RepDescriptor rep = RepDescriptor::defaults(RepKind::schrodinger2d);
  rep.gamma = 1.0;
  const GalileiElement r = GalileiElement::translation(vec({2.0, 0.0}));
  const GalileiElement s = GalileiElement::boost(vec({4.0, 0.0}));
  const PolyGaussianState f = PolyGaussianState::gaussian(Vector::Zero(2), 1.0);
  EXPECT_NEAR(continuous_exponent(rep, r, s, f), -4.0, 1e-8);
  EXPECT_NEAR(std::arg(extract_multiplier(rep, r, s, TimeLabel{0.0}, f).omega), 2 * M_PI - 4.0, 1e-8);
}

TEST(Verify, HeisenbergUniformOnMomentumKinds) {
  for (RepKind kind : {RepKind::bargmann3d, RepKind::nonabelian2d, RepKind::schrodinger2d, RepKind::schrodinger3d}) {
    const HeisenbergFit fit = heisenberg_fit(RepDescriptor::defaults(kind), {}, {0.0, 0.5, 1.7});
    EXPECT_TRUE(fit.uniform) << rep_kind_name(kind);
    EXPECT_LT(std::abs(fit.K - I), 1e-12) << rep_kind_name(kind);
    EXPECT_LT(fit.max_residual, 1e-12) << rep_kind_name(kind);
    EXPECT_TRUE(fit.per_generator_flips.empty());
  }
}

TEST(Verify, HeisenbergPositionNeedsFlip) {
  const HeisenbergFit fit = heisenberg_fit(RepDescriptor::defaults(RepKind::position1d), {}, {0.0, 0.5, 1.7});
  EXPECT_FALSE(fit.uniform);
  EXPECT_GT(fit.uniform_residual, 0.1);
  EXPECT_LT(fit.max_residual, 1e-12);
  ASSERT_EQ(fit.per_generator_flips.size(), 1u);
  EXPECT_EQ(fit.per_generator_flips[0], "P");
  const auto h = std::find_if(fit.generators.begin(), fit.generators.end(),
                              [](const GeneratorFit& g) { return g.name == "H"; });
  ASSERT_NE(h, fit.generators.end());
  EXPECT_TRUE(h->time_independent);
  EXPECT_FALSE(h->K.has_value());
}

TEST(Verify, InitialCondition) {
  const PolyGaussianState f3 = PolyGaussianState::gaussian(Vector::Zero(3), 1.0);
  const PolyGaussianState f2 = PolyGaussianState::gaussian(Vector::Zero(2), 1.0);
  const RepDescriptor s3 = RepDescriptor::defaults(RepKind::schrodinger3d);
  for (const auto& X : generator_names(s3)) EXPECT_LT(check_initial_condition(s3, X, f3), 1e-12) << X;
  // the time-dependent nonabelian boosts start from a different operator at t = 0
  const RepDescriptor na = RepDescriptor::defaults(RepKind::nonabelian2d);
  EXPECT_GT(check_initial_condition(na, "N1", f2), 0.1);
  EXPECT_LT(check_initial_condition(na, "P1", f2), 1e-12);
}

TEST(Verify, PositionKindHasNoMultiplier) {
  const RepDescriptor rep = RepDescriptor::defaults(RepKind::position1d);
  const GalileiElement e = GalileiElement::identity(1);
  EXPECT_THROW(extract_multiplier(rep, e, e, TimeLabel{0.0}, PolyGaussianState::gaussian(Vector::Zero(1), 1.0)),
               InvalidArgument);
}

TEST(Verify, ReportJson) {
  const RepDescriptor rep = RepDescriptor::defaults(RepKind::schrodinger3d);
  const GalileiElement e = GalileiElement::identity(3);
  const nlohmann::json j = extract_multiplier(rep, e, e, TimeLabel{0.0}, PolyGaussianState::gaussian(Vector::Zero(3), 1.0));
  EXPECT_EQ(j.at("n_points").get<std::size_t>(), kMinSamplePoints);
  EXPECT_NEAR(j.at("omega")[0].get<double>(), 1.0, 1e-12);
}
