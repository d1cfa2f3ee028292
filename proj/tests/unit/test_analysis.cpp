#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gricci/analysis.hpp"
#include "oracles.hpp"

namespace gricci {
namespace {

using testing::FourierSeries;

TEST(Shoot, FlatCaseGivesConstantProfile) {
  const ShootResult r = constant_curvature_shoot(0.0, 0.0, 1.0, 1e-10);
  ASSERT_TRUE(std::holds_alternative<CurvatureProfile>(r));
  const auto& p = std::get<CurvatureProfile>(r);
  EXPECT_EQ(p.s.size(), 257u);
  for (std::size_t i = 0; i < p.k.size(); ++i) {
    EXPECT_LE(std::abs(p.k[i]), 1e-10);
    EXPECT_LE(std::abs(p.k_s[i]), 1e-10);
  }
}

TEST(Shoot, FlatCurvatureWithTwistIsInfeasible) {
  for (double lambda : {0.3, -1.0, 2.0}) {
    const ShootResult r = constant_curvature_shoot(0.0, lambda, 1.0, 1e-10);
    EXPECT_TRUE(std::holds_alternative<Infeasible>(r)) << "λ = " << lambda;
  }
}

TEST(Shoot, CuspCurvatureReproducesLinearProfile) {
  for (double lambda : {0.5, 1.0, -1.5, 3.0}) {
    const ShootResult r = constant_curvature_shoot(-2.0 * lambda * lambda, lambda, 1.0, 1e-12);
    ASSERT_TRUE(std::holds_alternative<CurvatureProfile>(r)) << "λ = " << lambda;
    const auto& p = std::get<CurvatureProfile>(r);
    EXPECT_NEAR(p.initial_slope, lambda, 1e-10);
    for (std::size_t i = 0; i < p.s.size(); ++i) {
      EXPECT_NEAR(p.k[i], lambda * p.s[i], 1e-10);
      EXPECT_NEAR(p.k_s[i], lambda, 1e-10);
    }
    EXPECT_LE(p.holonomy_defect, 1e-12);
    EXPECT_LE(p.periodicity_defect, 1e-10);
  }
}

TEST(Shoot, CuspCurvatureOnLongerCircle) {
  const double lambda = 1.2, length = 2.5;
  const double slope = lambda / length;
  const ShootResult r = constant_curvature_shoot(-2.0 * slope * slope, lambda, length, 1e-12);
  ASSERT_TRUE(std::holds_alternative<CurvatureProfile>(r));
  const auto& p = std::get<CurvatureProfile>(r);
  EXPECT_NEAR(p.s.back(), length, 1e-15);
  for (std::size_t i = 0; i < p.s.size(); ++i) EXPECT_NEAR(p.k[i], slope * p.s[i], 1e-10);
}

TEST(Shoot, NegativeCurvatureWithWrongHolonomyIsInfeasible) {
  const ShootResult r = constant_curvature_shoot(-2.0, 0.4, 1.0, 1e-10);
  ASSERT_TRUE(std::holds_alternative<Infeasible>(r));
  const auto& cert = std::get<Infeasible>(r);
  // The constant slopes ±1 are periodic but carry holonomy ±1.
  ASSERT_FALSE(cert.periodic_slopes.empty());
  for (double h : cert.periodic_holonomies) EXPECT_GT(std::abs(h - 0.4), 0.5);
}

TEST(Shoot, PositiveCurvatureIsAlwaysInfeasible) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> lam(-2.0, 2.0), len(0.3, 3.0), curv(0.05, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double c = curv(rng), lambda = lam(rng), length = len(rng);
    const ShootResult r = constant_curvature_shoot(c, lambda, length, 1e-10);
    ASSERT_TRUE(std::holds_alternative<Infeasible>(r));
    const auto& cert = std::get<Infeasible>(r);
    EXPECT_NEAR(cert.slope_decrease_bound, 0.5 * c * length, 1e-14);
    EXPECT_GT(cert.slope_decrease_bound, 0.0);
    EXPECT_GE(cert.min_observed_decrease, cert.slope_decrease_bound * (1.0 - 1e-6));
    EXPECT_TRUE(cert.periodic_slopes.empty());
    EXPECT_FALSE(cert.reason.empty());
  }
}

TEST(Shoot, RejectsNonPositiveLength) {
  EXPECT_THROW(constant_curvature_shoot(0.0, 0.0, 0.0, 1e-10), DomainError);
  EXPECT_THROW(constant_curvature_shoot(0.0, 0.0, 1.0, 0.0), DomainError);
}

TEST(Classify, FlatTorus) {
  const GridSpec spec(32);
  const auto c = classify_steady(GroupoidMetric::flat_torus(spec), HaarWeight::reference(spec), 1e-10);
  EXPECT_EQ(c.kind, SteadyKind::flat_torus);
  EXPECT_EQ(to_string(c.kind), "FlatTorus");
  EXPECT_LE(c.sup_abs_r, 1e-10);
}

TEST(Classify, CuspIsNormalizedHyperbolic) {
  const GridSpec spec(32);
  const auto g = GroupoidMetric::cusp(spec, 1.0);
  const auto c = classify_steady(g, HaarWeight::reference(spec), 1e-10);
  EXPECT_EQ(c.kind, SteadyKind::hyperbolic_cusp_normalized);
  EXPECT_EQ(to_string(c.kind), "HyperbolicCuspNormalized");
  EXPECT_LE((scalar_curvature(g).values + 2.0).abs().maxCoeff(), 1e-10);
  EXPECT_LE(c.cusp_residual, 1e-10);
}

TEST(Classify, SinusoidIsNeither) {
  const GridSpec spec(64);
  const auto g = testing::metric_from(spec, FourierSeries::sine(0.5, 1), FourierSeries{});
  const auto c = classify_steady(g, HaarWeight::reference(spec), 1e-8);
  EXPECT_EQ(c.kind, SteadyKind::none);
  EXPECT_EQ(to_string(c.kind), "None");
  EXPECT_GT(c.sup_abs_r, 1.0);
}

TEST(Classify, FlatTorusToleranceBoundary) {
  const GridSpec spec(64);
  const double tol = 1e-6;
  auto classify = [&](double amplitude) {
    const auto g = testing::metric_from(spec, FourierSeries::sine(amplitude, 1), FourierSeries{});
    return classify_steady(g, HaarWeight::reference(spec), tol).kind;
  };
  // R ≈ 4π² a for small a.
  EXPECT_EQ(classify(1e-9), SteadyKind::flat_torus);
  EXPECT_EQ(classify(1e-6), SteadyKind::none);
}

TEST(Classify, TwistedFlatMetricIsNotAFlatTorus) {
  const GridSpec spec(32);
  // Constant curvature -2λ² with λ ≠ 0 belongs to the cusp branch only.
  const auto c = classify_steady(GroupoidMetric::cusp(spec, 0.5), HaarWeight::reference(spec), 1e-10);
  EXPECT_NE(c.kind, SteadyKind::flat_torus);
}

}  // namespace
}  // namespace gricci
