#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "gricci/functionals.hpp"
#include "gricci/geometry.hpp"
#include "oracles.hpp"

namespace gricci {
namespace {

using testing::FourierSeries;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

TEST(ScalarCurvature, FlatTorusIsFlat) {
  const GridSpec spec(32);
  const auto g = GroupoidMetric(spec, TwistedField(PeriodicField::constant(spec, 0.7), 0.0),
                                PeriodicField::constant(spec, -0.2));
  EXPECT_LE(scalar_curvature(g).sup_norm(), 1e-14);
}

TEST(ScalarCurvature, CuspHasConstantNegativeCurvature) {
  const GridSpec spec(32);
  for (double lambda : {0.5, 1.0, -2.0}) {
    const PeriodicField r = scalar_curvature(GroupoidMetric::cusp(spec, lambda));
    EXPECT_LE((r.values + 2.0 * lambda * lambda).abs().maxCoeff(), 1e-12);
  }
}

TEST(ScalarCurvature, SinusoidMatchesBrioschiOracle) {
  const GridSpec spec(128);
  const auto k = FourierSeries::sine(0.1, 1);
  const FourierSeries u;
  const PeriodicField r = scalar_curvature(testing::metric_from(spec, k, u));
  for (int j = 0; j < spec.n_nodes(); ++j) {
    EXPECT_NEAR(r[j], testing::brioschi_scalar_curvature(k, u, spec.node(j)), 1e-9);
  }
}

TEST(ScalarCurvature, RejectsNonFiniteMetric) {
  const GridSpec spec(16);
  auto u = PeriodicField::constant(spec, 0.0);
  u.values[2] = std::nan("");
  EXPECT_THROW(GroupoidMetric(spec, TwistedField(PeriodicField::constant(spec, 0.0), 0.0), u),
               DomainError);
  EXPECT_THROW(GroupoidMetric(spec, TwistedField(PeriodicField::constant(GridSpec(32), 0.0), 0.0),
                              PeriodicField::constant(spec, 0.0)),
               DimensionError);
}

TEST(GradNormSq, Examples) {
  const GridSpec spec(64);
  const auto flat = GroupoidMetric::flat_torus(spec);
  EXPECT_LE(grad_norm_sq(flat, PeriodicField::constant(spec, 4.0)).sup_norm(), 1e-14);
  const auto cusp = GroupoidMetric::cusp(spec, 1.5);
  EXPECT_LE((grad_norm_sq(cusp, cusp.k()).values - 2.25).abs().maxCoeff(), 1e-13);

  const GroupoidMetric g(spec, TwistedField(PeriodicField::constant(spec, 0.0), 0.0),
                         PeriodicField::constant(spec, 0.3));
  const auto w = PeriodicField::sample(spec, [](double y) { return std::sin(kTwoPi * y); });
  const auto exact = PeriodicField::sample(spec, [](double y) {
    return std::exp(-0.6) * kTwoPi * kTwoPi * std::pow(std::cos(kTwoPi * y), 2);
  });
  EXPECT_LE((grad_norm_sq(g, w).values - exact.values).abs().maxCoeff(), 1e-10);
}

TEST(LaplaceBeltrami, Examples) {
  const GridSpec spec(64);
  const auto flat = GroupoidMetric::flat_torus(spec);
  EXPECT_LE(laplace_beltrami(flat, PeriodicField::constant(spec, 1.0), Ambient::orbit_space).sup_norm(),
            1e-12);
  const auto s = PeriodicField::sample(spec, [](double y) { return std::sin(kTwoPi * y); });
  const PeriodicField lap = laplace_beltrami(flat, s, Ambient::orbit_space);
  EXPECT_LE((lap.values + kTwoPi * kTwoPi * s.values).abs().maxCoeff(), 1e-10);

  const auto cusp = GroupoidMetric::cusp(spec, 1.3);
  const PeriodicField lap_g = laplace_beltrami(cusp, cusp.k(), Ambient::total_space);
  EXPECT_LE((lap_g.values - 1.69).abs().maxCoeff(), 1e-12);
  EXPECT_LE((lap_g.values + 0.5 * scalar_curvature(cusp).values).abs().maxCoeff(), 1e-12);
}

TEST(LaplaceBeltrami, TotalSpaceLaplacianOfKIsMinusHalfR) {
  std::mt19937_64 rng(21);
  const GridSpec spec(128);
  for (int trial = 0; trial < 10; ++trial) {
    const auto k = FourierSeries::random(rng, 5, 0.3, 0.8);
    const auto u = FourierSeries::random(rng, 5, 0.3);
    const auto g = testing::metric_from(spec, k, u);
    const PeriodicField lap = laplace_beltrami(g, g.k(), Ambient::total_space);
    EXPECT_LE((lap.values + 0.5 * scalar_curvature(g).values).abs().maxCoeff(), 1e-8);
  }
}

TEST(MeanCurvatureForm, ExamplesAndHolonomy) {
  const GridSpec spec(64);
  const auto ref = HaarWeight::reference(spec);
  EXPECT_LE(mean_curvature_form(GroupoidMetric::flat_torus(spec), ref).sup_norm(), 1e-14);
  const auto cusp = GroupoidMetric::cusp(spec, 0.9);
  EXPECT_LE((mean_curvature_form(cusp, ref).values - 0.9).abs().maxCoeff(), 1e-14);

  const HaarWeight h{PeriodicField::sample(spec, [](double y) { return std::sin(kTwoPi * y); })};
  const PeriodicField theta = mean_curvature_form(cusp, h);
  const auto exact = PeriodicField::sample(spec, [](double y) { return 0.9 + kTwoPi * std::cos(kTwoPi * y); });
  EXPECT_LE((theta.values - exact.values).abs().maxCoeff(), 1e-11);
  EXPECT_NEAR(integrate(theta, spec), 0.9, 1e-12);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto k = FourierSeries::random(rng, 6, 0.4, 1.7);
    const auto g = testing::metric_from(spec, k, FourierSeries::random(rng, 4, 0.3));
    const HaarWeight w{testing::random_band_limited(rng, spec, 12, 0.5)};
    EXPECT_NEAR(integrate(mean_curvature_form(g, w), spec), 1.7, 1e-12);
  }
}

TEST(OrbitMeasure, Examples) {
  const GridSpec spec(64);
  const auto flat = GroupoidMetric::flat_torus(spec);
  EXPECT_NEAR(total_measure(flat, HaarWeight::reference(spec)), 1.0, 1e-15);
  const HaarWeight ln2{PeriodicField::constant(spec, std::log(2.0))};
  EXPECT_LE((orbit_measure(flat, ln2).values - 0.5).abs().maxCoeff(), 1e-15);

  const GroupoidMetric g(spec, TwistedField(PeriodicField::constant(spec, 0.0), 0.0),
                         PeriodicField::sample(spec, [](double y) { return std::sin(kTwoPi * y); }));
  EXPECT_NEAR(total_measure(g, HaarWeight::reference(spec)), boost::math::cyl_bessel_i(0, 1.0), 1e-10);
  EXPECT_NEAR(total_measure(g, normalized(g, HaarWeight::reference(spec))), 1.0, 1e-14);
}

TEST(SolitonResidual, FlatTorusVanishes) {
  const GridSpec spec(32);
  const ReducedTensor a = soliton_residual(GroupoidMetric::flat_torus(spec), HaarWeight::reference(spec));
  EXPECT_LE(a.a_x.sup_norm(), 1e-14);
  EXPECT_LE(a.a_s.sup_norm(), 1e-14);
}

void expect_matches_oracle(const FourierSeries& k, const FourierSeries& u, const FourierSeries& f,
                           double tol) {
  const GridSpec spec(128);
  const auto g = testing::metric_from(spec, k, u);
  const HaarWeight h{f.periodic_samples(spec)};
  const ReducedTensor a = soliton_residual(g, h);
  for (int j = 0; j < spec.n_nodes(); j += 8) {
    const double y = spec.node(j);
    const auto oracle = testing::brute_force_soliton_tensor(
        [&](double s) { return k.value(s); }, [&](double s) { return u.value(s); },
        [&](double s) { return k.value(s) + f.value(s); }, y);
    EXPECT_NEAR(a.a_x[j], oracle.a_x, tol) << "y=" << y;
    EXPECT_NEAR(a.a_s[j], oracle.a_s, tol) << "y=" << y;
    EXPECT_NEAR(oracle.off_diagonal, 0.0, tol);
  }
}

TEST(SolitonResidual, CuspMatchesBruteForceOracle) {
  const FourierSeries k = FourierSeries::sine(0.0, 1, 1.0);
  expect_matches_oracle(k, FourierSeries{}, FourierSeries{}, 1e-8);
  const ReducedTensor a = soliton_residual(GroupoidMetric::cusp(GridSpec(32), 1.0),
                                           HaarWeight::reference(GridSpec(32)));
  EXPECT_LE(a.a_x.sup_norm(), 1e-13);
  EXPECT_LE((a.a_s.values + 1.0).abs().maxCoeff(), 1e-13);
}

TEST(SolitonResidual, SinusoidMatchesBruteForceOracle) {
  expect_matches_oracle(FourierSeries::sine(0.05, 1), FourierSeries{}, FourierSeries{}, 1e-8);
}

TEST(SolitonResidual, RandomDataMatchesBruteForceOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    expect_matches_oracle(FourierSeries::random(rng, 3, 0.3, 0.7), FourierSeries::random(rng, 3, 0.3),
                          FourierSeries::random(rng, 3, 0.3), 1e-7);
  }
}

TEST(SolitonResidual, TraceIdentity) {
  std::mt19937_64 rng(17);
  const GridSpec spec(128);
  const auto g = testing::metric_from(spec, FourierSeries::random(rng, 5, 0.3, 1.0),
                                      FourierSeries::random(rng, 5, 0.3));
  const HaarWeight h{testing::random_band_limited(rng, spec, 8, 0.3)};
  const TwistedField w(PeriodicField(g.k().periodic_part.values + h.f.values), g.holonomy());
  const Eigen::ArrayXd expected =
      scalar_curvature(g).values + laplace_beltrami(g, w, Ambient::total_space).values;
  EXPECT_LE((soliton_residual(g, h).trace().values - expected).abs().maxCoeff(), 1e-9);
}

TEST(IbpResidual, Examples) {
  std::mt19937_64 rng(8);
  const GridSpec spec(128);
  const auto g = testing::metric_from(spec, FourierSeries::random(rng, 4, 0.3, 1.0),
                                      FourierSeries::random(rng, 4, 0.3));
  const HaarWeight h{testing::random_band_limited(rng, spec, 8, 0.3)};
  const auto zero = PeriodicField::constant(spec, 0.0);
  const auto one = PeriodicField::constant(spec, 1.0);
  const PeriodicField alpha = testing::random_band_limited(rng, spec, 10, 1.0);
  EXPECT_EQ(ibp_residual(g, h, zero, alpha), 0.0);
  EXPECT_LE(ibp_residual(g, h, alpha, one), 1e-10);
}

TEST(IbpResidual, RandomInstancesAndConvergence) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const GridSpec spec(128);
    const auto k = FourierSeries::random(rng, 4, 0.2, 1.0);
    const auto u = FourierSeries::random(rng, 4, 0.2);
    const auto g = testing::metric_from(spec, k, u);
    const HaarWeight h{testing::random_band_limited(rng, spec, 6, 0.3)};
    const PeriodicField alpha = testing::random_band_limited(rng, spec, 10, 1.0);
    const PeriodicField omega = testing::random_band_limited(rng, spec, 10, 1.0);
    EXPECT_LE(ibp_residual(g, h, alpha, omega), 1e-8);
  }
  // Non-band-limited data on fd4 grids: fourth-order decay.
  const auto k = FourierSeries::sine(0.2, 1, 1.0);
  std::vector<double> hs, residuals;
  for (int n : {32, 64, 128}) {
    const GridSpec spec(n, Scheme::fd4);
    const auto g = testing::metric_from(spec, k, FourierSeries::cosine(0.2, 1));
    const HaarWeight h{PeriodicField::sample(spec, [](double y) { return 0.3 * std::sin(kTwoPi * 2 * y); })};
    const auto alpha = PeriodicField::sample(spec, [](double y) { return std::exp(std::sin(kTwoPi * y)); });
    const auto omega = PeriodicField::sample(spec, [](double y) { return std::exp(std::cos(kTwoPi * y)); });
    hs.push_back(spec.spacing());
    residuals.push_back(ibp_residual(g, h, alpha, omega));
  }
  EXPECT_GE(testing::fitted_order(hs, residuals), 3.5);
}

TEST(Reparametrize, PreservesMeasureFAndLambda) {
  const GridSpec spec(128);
  const auto g = testing::metric_from(spec, FourierSeries::sine(0.2, 1, 1.0), FourierSeries::cosine(0.1, 1));
  const HaarWeight h{PeriodicField::sample(spec, [](double y) { return 0.2 * std::sin(kTwoPi * y); })};
  const CircleDiffeo psi{[](double z) { return z + 0.05 * std::sin(kTwoPi * z); },
                         [](double z) { return 1.0 + 0.05 * kTwoPi * std::cos(kTwoPi * z); }};
  const MetricWithHaar pulled = reparametrize(g, h, psi);
  EXPECT_EQ(pulled.metric.holonomy(), g.holonomy());
  EXPECT_NEAR(total_measure(pulled.metric, pulled.haar), total_measure(g, h), 1e-9);
  EXPECT_NEAR(f_functional(pulled.metric, pulled.haar), f_functional(g, h), 1e-9);
  EXPECT_NEAR(lambda_functional(pulled.metric).lambda, lambda_functional(g).lambda, 1e-9);
}

}  // namespace
}  // namespace gricci
