#pragma once

#include <vector>

#include "gricci/flow.hpp"

namespace gricci {

/// F = ∮ (R + |θ|²) e^{-f} e^{u} dy.
double f_functional(const GroupoidMetric& g, const HaarWeight& h);

/// 2 ∫ |Ric + ½ L_{θ#} g|² dη, the predicted rate of change of F.
double f_functional_rate(const GroupoidMetric& g, const HaarWeight& h);

std::vector<double> f_functional_series(const FlowTrajectory& traj);

struct VariationSample {
  double t = 0.0;
  double df_dt = 0.0;  ///< centered difference of F over up to three checkpoints per side
  double rhs = 0.0;    ///< f_functional_rate at t
  double residual = 0.0;
};

/// Requires a trajectory whose Haar weights evolve with the metric.
std::vector<VariationSample> f_variation_residual(const FlowTrajectory& traj);

struct LambdaResult {
  double lambda = 0.0;
  PeriodicField ground_state;  ///< κ > 0 with ∮ κ² e^{u} dy = 1
  PeriodicField minimizer_f;   ///< -2 log κ
};

/// Smallest eigenvalue of -4Δ_ḡ - |∇k|² in the e^{u} dy inner product, from a
/// symmetric staggered discretization and a dense eigensolve.
LambdaResult lambda_functional(const GroupoidMetric& g);

struct LambdaSeries {
  std::vector<double> times;
  std::vector<double> values;
  /// Indices i for which values[i] < values[i-1] - tolerance.
  std::vector<std::size_t> violations;
  double worst_decrease = 0.0;
};

LambdaSeries lambda_monotonicity(const FlowTrajectory& traj);

struct EnergyBreakdown {
  double t = 0.0;
  double S = 0.0;
  double H = 0.0;
  double I = 0.0;
  double E = 0.0;
};

/// Reduced uniqueness energy between two trajectories sharing their grid and
/// checkpoint times. Samples every checkpoint after the first.
std::vector<EnergyBreakdown> uniqueness_energy(const FlowTrajectory& a, const FlowTrajectory& b,
                                               double alpha_exp = 0.5);

/// Pointwise integrands of the uniqueness energy at a single time.
struct EnergyDensities {
  PeriodicField h_sq;
  PeriodicField a_sq;
  PeriodicField s_sq;
};
EnergyDensities energy_densities(const GroupoidMetric& g, const GroupoidMetric& other);

struct HarnackSample {
  double t = 0.0;
  /// sup of |P(Hv) - 2|Ric + ∇θ|² v| restricted to wavenumbers |m| <= n/4
  double residual = 0.0;
  double y = 0.0;         ///< where the residual peaks
  double rhs_min = 0.0;   ///< min of 2|Ric + ∇θ|² v
  double rhs_max = 0.0;
  double raw_residual = 0.0;  ///< same without the band restriction
};

/// Evaluates the Harnack identity at checkpoints with a full centered time
/// stencil (up to three neighbours per side), with
/// P = ∂_t + Δ_g - 2⟨∇k, ∇·⟩ + |∇k|² and H = R + 2 div θ - |θ|², θ = dk - d log v.
std::vector<HarnackSample> harnack_residual(const FlowTrajectory& traj,
                                            const ConjugateSolution& v_series);

}  // namespace gricci
