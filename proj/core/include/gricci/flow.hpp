#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gricci/geometry.hpp"

namespace gricci {

struct FlowState {
  double t = 0.0;
  GroupoidMetric metric;
  HaarWeight haar;
};

/// How the Haar weight stored along a trajectory was produced.
enum class HaarEvolution {
  frozen,           ///< f copied from the initial state
  forward_coupled,  ///< filtered forward integration of the f-equation
  conjugate_solve,  ///< f = -log v from the backward conjugate heat solve
};

struct StepRecord {
  double t = 0.0;       ///< time at the start of the step
  double dt = 0.0;
  double cfl_ratio = 0.0;  ///< dt / (h^2 min e^{2u})
};

struct FlowTrajectory {
  std::vector<FlowState> checkpoints;
  std::vector<StepRecord> step_log;
  HaarEvolution haar_evolution = HaarEvolution::frozen;

  const GridSpec& spec() const;
  std::vector<double> times() const;
  /// Linear-in-time interpolation of (k_per, u, f) between checkpoints.
  FlowState state_at(double t) const;
};

/// Thrown when the solution leaves the representable range. Carries the last
/// state that passed the checks and, from evolve, the trajectory so far.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, FlowState last_valid,
              std::shared_ptr<const FlowTrajectory> partial = nullptr)
      : Error(what), last_valid_(std::move(last_valid)), partial_(std::move(partial)) {}

  const FlowState& last_valid() const { return last_valid_; }
  /// Null when raised by a single step.
  const FlowTrajectory* partial() const { return partial_.get(); }

 private:
  FlowState last_valid_;
  std::shared_ptr<const FlowTrajectory> partial_;
};

struct MetricRate {
  PeriodicField dk_dt;  ///< rate of the periodic part of k
  PeriodicField du_dt;
};

/// dk/dt = du/dt = Δ_ḡk + |∇k|².
MetricRate ricci_rhs(const GroupoidMetric& g);

/// df/dt = |θ|² - R/2 - div θ for the coupled Haar system.
PeriodicField coupled_haar_rhs(const GroupoidMetric& g, const HaarWeight& h);

/// CFL coefficient used when none is configured (0.25 spectral, 0.4 fd4).
double default_cfl(Scheme scheme);

/// cfl * h^2 * min e^{2u}.
double stability_limit(const GroupoidMetric& g, double cfl);

struct StepOptions {
  bool coupled = false;
  double cfl = 0.0;  ///< 0 selects default_cfl
  /// Fraction of the Fourier band kept in the coupled f-rate.
  double coupled_keep_fraction = 2.0 / 3.0;
};

/// One classical RK4 step.
FlowState step(const FlowState& state, double dt, const StepOptions& options = {});
inline FlowState step(const FlowState& state, double dt, bool coupled) {
  return step(state, dt, StepOptions{coupled});
}

struct EvolveControls {
  double checkpoint_interval = 0.1;
  double cfl = 0.0;       ///< 0 selects default_cfl
  double fixed_dt = 0.0;  ///< > 0 requests a constant step (still clamped to checkpoints)
  bool coupled = false;
  double coupled_keep_fraction = 2.0 / 3.0;
  double blowup_curvature = 1e8;
  double min_dt = 1e-14;
};

FlowTrajectory evolve(const FlowState& initial, double t_end, const EvolveControls& controls = {});

struct ConjugateOptions {
  double cfl = 0.0;  ///< 0 selects default_cfl
};

struct ConjugateSolution {
  std::vector<double> times;
  std::vector<PeriodicField> v;
};

/// Solves ∂_t v = -Δ_ḡv + ⟨∇v, θ₀⟩ + Λv, Λ = -|∇k|², backward from the last
/// checkpoint with v = v_end there. Values are returned at every checkpoint.
ConjugateSolution backward_conjugate_solve(const FlowTrajectory& traj, const PeriodicField& v_end,
                                           const ConjugateOptions& options = {});

/// Copy of traj whose Haar weights are f = -log v.
FlowTrajectory with_conjugate_haar(const FlowTrajectory& traj, const ConjugateSolution& solution);

struct BlowdownSample {
  double t = 0.0;
  double t_min_grad_sq = 0.0;  ///< t min|∇k|²
  double t_max_grad_sq = 0.0;
  double t2_max_h = 0.0;  ///< t² max (Δ_ḡk)²
  double t_max_abs_r = 0.0;
  double t_min_r = 0.0;  ///< t min R
  double t_max_r = 0.0;
};

/// Invariants of the rescaled metric g/t at every checkpoint with t > 0.
std::vector<BlowdownSample> blowdown_diagnostics(const FlowTrajectory& traj);

struct MonitorSample {
  double t = 0.0;
  double min_grad_sq = 0.0;
  double max_grad_sq = 0.0;
  double max_h = 0.0;
  double max_t_r = 0.0;
};

struct BoundViolation {
  double t = 0.0;
  std::string bound;  ///< "lower", "upper" or "h"
  double y = 0.0;     ///< location of the worst sample
  double margin = 0.0;  ///< negative when violated
};

struct MonitorOptions {
  double slack = 1e-6;
  /// H-constant fitted on checkpoints with t <= fit_until and checked after.
  double fit_until = 1.0;
};

struct MonitorReport {
  std::vector<MonitorSample> series;
  std::vector<BoundViolation> violations;
  double fitted_h_constant = 0.0;
  double worst_lower_margin = 0.0;
  double worst_upper_margin = 0.0;
  double worst_h_margin = 0.0;
};

/// Checks α/(2αt+1) <= |∇k|² <= β/(2βt+1) at every checkpoint and
/// H = (Δ_ḡk)² <= C/(2αt+1)^4 with C fitted on early data.
MonitorReport max_principle_monitor(const FlowTrajectory& traj, double alpha, double beta,
                                    const MonitorOptions& options = {});

}  // namespace gricci
