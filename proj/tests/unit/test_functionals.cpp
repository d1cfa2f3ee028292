#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gricci/functionals.hpp"
#include "oracles.hpp"

namespace gricci {
namespace {

using testing::FourierSeries;

FlowState initial(const GroupoidMetric& g) { return {0.0, g, HaarWeight::reference(g.spec())}; }

GroupoidMetric sinusoid(const GridSpec& spec, double amplitude, double lambda) {
  return testing::metric_from(spec, FourierSeries::sine(amplitude, 1, lambda), FourierSeries{});
}

FlowTrajectory coupled_run(const GroupoidMetric& g, double t_end, double interval) {
  EvolveControls c;
  c.checkpoint_interval = interval;
  const FlowTrajectory traj = evolve(initial(g), t_end, c);
  return with_conjugate_haar(traj, backward_conjugate_solve(traj, PeriodicField::constant(g.spec(), 1.0)));
}

/// Haar weight with unit total measure built from random band-limited data.
HaarWeight random_normalized_weight(std::mt19937_64& rng, const GroupoidMetric& g) {
  HaarWeight h{testing::random_band_limited(rng, g.spec(), 6, 0.4)};
  h.f.values += std::log(total_measure(g, h));
  return h;
}

TEST(FFunctional, FlatTorusVanishes) {
  const GridSpec spec(32);
  EXPECT_LE(std::abs(f_functional(GroupoidMetric::flat_torus(spec), HaarWeight::reference(spec))), 1e-14);
}

TEST(FFunctional, CuspIsMinusLambdaSquared) {
  const GridSpec spec(32);
  for (double lambda : {0.5, 1.0, 1.7}) {
    EXPECT_NEAR(f_functional(GroupoidMetric::cusp(spec, lambda), HaarWeight::reference(spec)),
                -lambda * lambda, 1e-12);
  }
}

TEST(FFunctional, ConvergedAtModerateResolution) {
  const GridSpec coarse(128), fine(512);
  const double a = f_functional(sinusoid(coarse, 0.1, 0.0), HaarWeight::reference(coarse));
  const double b = f_functional(sinusoid(fine, 0.1, 0.0), HaarWeight::reference(fine));
  EXPECT_NEAR(a, b, 1e-9);
}

TEST(FFunctional, RateIsNonNegative) {
  std::mt19937_64 rng(3);
  const GridSpec spec(64);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = testing::metric_from(spec, FourierSeries::random(rng, 4, 0.3, 0.5), FourierSeries::random(rng, 4, 0.2));
    EXPECT_GE(f_functional_rate(g, HaarWeight{testing::random_band_limited(rng, spec, 4, 0.3)}), 0.0);
  }
  EXPECT_LE(f_functional_rate(GroupoidMetric::flat_torus(spec), HaarWeight::reference(spec)), 1e-28);
}

TEST(FVariation, RejectsFrozenTrajectory) {
  const GridSpec spec(16);
  const FlowTrajectory traj = evolve(initial(sinusoid(spec, 0.1, 0.0)), 0.1);
  EXPECT_THROW(f_variation_residual(traj), DomainError);
}

TEST(FVariation, FlatTorusIsExact) {
  const GridSpec spec(32);
  const auto samples = f_variation_residual(coupled_run(GroupoidMetric::flat_torus(spec), 0.05, 5e-3));
  ASSERT_FALSE(samples.empty());
  for (const auto& s : samples) EXPECT_LE(s.residual, 1e-12);
}

TEST(FVariation, MatchesRateAlongTwistedRun) {
  const GridSpec spec(64);
  const FlowTrajectory traj = coupled_run(sinusoid(spec, 0.2, 1.0), 0.7, 1e-3);
  const auto samples = f_variation_residual(traj);
  double worst = 0.0;
  for (const auto& s : samples) {
    if (s.t >= 0.5) worst = std::max(worst, s.residual);
  }
  EXPECT_LE(worst, 1e-5);
  const std::vector<double> f = f_functional_series(traj);
  for (std::size_t i = 1; i < f.size(); ++i) EXPECT_GE(f[i], f[i - 1] - 1e-12 * (1.0 + std::abs(f[i])));
}

TEST(Lambda, FlatTorusIsZeroWithConstantGroundState) {
  const GridSpec spec(32);
  const LambdaResult r = lambda_functional(GroupoidMetric::flat_torus(spec));
  EXPECT_LE(std::abs(r.lambda), 1e-12);
  EXPECT_LE((r.ground_state.values - 1.0).abs().maxCoeff(), 1e-12);
  EXPECT_LE(r.minimizer_f.sup_norm(), 1e-12);
}

TEST(Lambda, CuspIsMinusLambdaSquared) {
  const GridSpec spec(32);
  const LambdaResult r = lambda_functional(GroupoidMetric::cusp(spec, 1.0));
  EXPECT_NEAR(r.lambda, -1.0, 1e-9);
  EXPECT_NEAR(r.lambda, testing::dense_lambda_oracle(FourierSeries{1.0}, FourierSeries{}, 64), 1e-9);
}

TEST(Lambda, MatchesDenseCollocationOracle) {
  const GridSpec spec(64);
  const auto k = FourierSeries::sine(0.3, 1);
  const LambdaResult r = lambda_functional(testing::metric_from(spec, k, FourierSeries{}));
  EXPECT_NEAR(r.lambda, testing::dense_lambda_oracle(k, FourierSeries{}, 256), 1e-8);
  EXPECT_GT(r.ground_state.min(), 0.0);
}

TEST(Lambda, MatchesOracleWithTwistAndWarp) {
  const GridSpec spec(64);
  const auto k = FourierSeries::sine(0.2, 2, 0.8);
  const auto u = FourierSeries::cosine(0.15, 1);
  EXPECT_NEAR(lambda_functional(testing::metric_from(spec, k, u)).lambda, testing::dense_lambda_oracle(k, u, 256), 1e-8);
}

TEST(Lambda, MinimizerAttainsLowerBoundOfF) {
  std::mt19937_64 rng(17);
  const GridSpec spec(64);
  const auto g = testing::metric_from(spec, FourierSeries::sine(0.3, 1, 0.4), FourierSeries::cosine(0.1, 1));
  const LambdaResult r = lambda_functional(g);
  const HaarWeight best{r.minimizer_f};
  EXPECT_NEAR(total_measure(g, best), 1.0, 1e-12);
  EXPECT_NEAR(f_functional(g, best), r.lambda, 1e-9);
  for (int trial = 0; trial < 50; ++trial) {
    const HaarWeight h = random_normalized_weight(rng, g);
    EXPECT_GE(f_functional(g, h), r.lambda - 1e-10);
  }
}

TEST(Lambda, InvariantUnderConstantShiftOfK) {
  const GridSpec spec(64);
  const auto k = FourierSeries::sine(0.3, 1, 0.5);
  auto shifted = k;
  shifted.c0 = 2.5;
  EXPECT_NEAR(lambda_functional(testing::metric_from(spec, k, FourierSeries{})).lambda,
              lambda_functional(testing::metric_from(spec, shifted, FourierSeries{})).lambda, 1e-9);
}

TEST(LambdaMonotonicity, SinusoidNondecreasingAndFlattens) {
  const GridSpec spec(64);
  EvolveControls c;
  c.checkpoint_interval = 0.05;
  const LambdaSeries s = lambda_monotonicity(evolve(initial(sinusoid(spec, 0.2, 0.0)), 1.0, c));
  EXPECT_TRUE(s.violations.empty());
  EXPECT_LT(s.values.front(), -1e-2);
  EXPECT_LE(std::abs(s.values.back()), 1e-10);
}

TEST(LambdaMonotonicity, CuspIsConstant) {
  const GridSpec spec(16);
  EvolveControls c;
  c.checkpoint_interval = 0.25;
  const LambdaSeries s = lambda_monotonicity(evolve(initial(GroupoidMetric::cusp(spec, 1.0)), 1.0, c));
  // u stays constant in space, so e^{-2u} rescales B exactly as it rescales -4Δ.
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    EXPECT_NEAR(s.values[i], -1.0 / (1.0 + 2.0 * s.times[i]), 1e-9);
  }
  EXPECT_TRUE(s.violations.empty());
}

TEST(UniquenessEnergy, IdenticalTrajectoriesGiveZero) {
  const GridSpec spec(32);
  const FlowTrajectory a = evolve(initial(sinusoid(spec, 0.2, 0.5)), 0.3);
  for (const auto& e : uniqueness_energy(a, a)) {
    EXPECT_EQ(e.E, 0.0);
    EXPECT_EQ(e.E, e.S + e.H + e.I);
  }
}

TEST(UniquenessEnergy, TimeStepRefinementIsTiny) {
  const GridSpec spec(32);
  auto run = [&](double dt) {
    EvolveControls c;
    c.checkpoint_interval = 0.1;
    c.fixed_dt = dt;
    return evolve(initial(sinusoid(spec, 0.2, 0.5)), 0.5, c);
  };
  for (const auto& e : uniqueness_energy(run(1e-4), run(5e-5))) {
    EXPECT_LE(e.E, 1e-12);
    EXPECT_GE(e.S, 0.0);
    EXPECT_GE(e.H, 0.0);
    EXPECT_GE(e.I, 0.0);
  }
}

TEST(UniquenessEnergy, PerturbationGrowsAtMostExponentially) {
  const GridSpec spec(32);
  EvolveControls c;
  c.checkpoint_interval = 0.05;
  const auto base = sinusoid(spec, 0.2, 0.5);
  PeriodicField bump = PeriodicField::sample(spec, [](double y) { return 1e-3 * std::exp(-40.0 * (y - 0.5) * (y - 0.5)); });
  const GroupoidMetric perturbed(spec, base.k(), PeriodicField(base.u().values + bump.values));
  const auto energy = uniqueness_energy(evolve(initial(base), 1.0, c), evolve(initial(perturbed), 1.0, c));
  for (std::size_t i = 1; i < energy.size(); ++i) {
    const double rate = std::log(energy[i].E / energy[i - 1].E) / (energy[i].t - energy[i - 1].t);
    EXPECT_LE(rate, 50.0) << "t = " << energy[i].t;
  }
}

TEST(UniquenessEnergy, RejectsMismatchedTrajectories) {
  const FlowTrajectory a = evolve(initial(sinusoid(GridSpec(16), 0.1, 0.0)), 0.2);
  const FlowTrajectory b = evolve(initial(sinusoid(GridSpec(32), 0.1, 0.0)), 0.2);
  const FlowTrajectory c = evolve(initial(sinusoid(GridSpec(16), 0.1, 0.0)), 0.3);
  EXPECT_THROW(uniqueness_energy(a, b), DomainError);
  EXPECT_THROW(uniqueness_energy(a, c), DomainError);
}

TEST(Harnack, FlatTorusIsZero) {
  const GridSpec spec(16);
  EvolveControls c;
  c.checkpoint_interval = 0.01;
  const FlowTrajectory traj = evolve(initial(GroupoidMetric::flat_torus(spec)), 0.1, c);
  const ConjugateSolution v = backward_conjugate_solve(traj, PeriodicField::constant(spec, 1.0));
  for (const auto& s : harnack_residual(traj, v)) {
    EXPECT_LE(s.residual, 1e-12);
    EXPECT_LE(std::abs(s.rhs_max), 1e-12);
  }
}

TEST(Harnack, IdentityHoldsAlongSinusoidRun) {
  const GridSpec spec(64);
  EvolveControls c;
  c.checkpoint_interval = 1e-3;
  const FlowTrajectory traj = evolve(initial(sinusoid(spec, 0.2, 0.0)), 0.1, c);
  const ConjugateSolution v = backward_conjugate_solve(traj, PeriodicField::constant(spec, 1.0));
  const auto samples = harnack_residual(traj, v);
  ASSERT_FALSE(samples.empty());
  for (const auto& s : samples) {
    EXPECT_LE(s.residual, 1e-4) << "t = " << s.t;
    EXPECT_GE(s.rhs_min, 0.0);
  }
}

TEST(Harnack, RejectsNonPositiveSeries) {
  const GridSpec spec(16);
  const FlowTrajectory traj = evolve(initial(sinusoid(spec, 0.1, 0.0)), 0.1);
  ConjugateSolution v = backward_conjugate_solve(traj, PeriodicField::constant(spec, 1.0));
  v.v[0].values[1] = -1.0;
  EXPECT_THROW(harnack_residual(traj, v), DomainError);
}

}  // namespace
}  // namespace gricci
