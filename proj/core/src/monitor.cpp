#include <algorithm>
#include <cmath>
#include <limits>

#include "gricci/flow.hpp"

namespace gricci {

namespace {

struct Invariants {
  PeriodicField grad_sq;
  PeriodicField h;
  PeriodicField r;
};

Invariants invariants_of(const GroupoidMetric& g) {
  const PeriodicField lap = laplace_beltrami(g, g.k(), Ambient::orbit_space);
  return {grad_norm_sq(g, g.k()), PeriodicField(lap.values.square()), scalar_curvature(g)};
}

}  // namespace

std::vector<BlowdownSample> blowdown_diagnostics(const FlowTrajectory& traj) {
  std::vector<BlowdownSample> out;
  for (const FlowState& s : traj.checkpoints) {
    if (!(s.t > 0.0)) continue;
    const Invariants inv = invariants_of(s.metric);
    const double t = s.t;
    out.push_back({t, t * inv.grad_sq.min(), t * inv.grad_sq.max(), t * t * inv.h.max(),
                   t * inv.r.sup_norm(), t * inv.r.min(), t * inv.r.max()});
  }
  return out;
}

MonitorReport max_principle_monitor(const FlowTrajectory& traj, double alpha, double beta,
                                    const MonitorOptions& options) {
  if (traj.checkpoints.empty()) throw DomainError("empty trajectory");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(beta >= alpha)) throw DomainError("beta must be at least alpha");
  const FlowState& first = traj.checkpoints.front();
  const PeriodicField grad0 = grad_norm_sq(first.metric, first.metric.k());
  const double fuzz = 1e-12 * std::max(1.0, beta);
  if (alpha > grad0.min() + fuzz) throw DomainError("alpha exceeds the initial min |grad k|^2");
  if (beta < grad0.max() - fuzz) throw DomainError("beta is below the initial max |grad k|^2");

  const GridSpec& spec = traj.spec();
  const double t0 = first.t;
  MonitorReport report;
  std::vector<Invariants> inv;
  inv.reserve(traj.checkpoints.size());
  for (const FlowState& s : traj.checkpoints) inv.push_back(invariants_of(s.metric));

  auto decay = [&](double t) { return std::pow(2.0 * alpha * (t - t0) + 1.0, 4); };
  double c_fit = 0.0;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    const double t = traj.checkpoints[i].t;
    if (t - t0 <= options.fit_until) c_fit = std::max(c_fit, inv[i].h.max() * decay(t));
  }
  report.fitted_h_constant = c_fit;
  report.worst_lower_margin = report.worst_upper_margin = report.worst_h_margin =
      std::numeric_limits<double>::infinity();

  auto record = [&](double t, const char* name, const Eigen::ArrayXd& margin, double& worst) {
    Eigen::Index j = 0;
    const double m = margin.minCoeff(&j);
    worst = std::min(worst, m);
    if (m < 0.0) report.violations.push_back({t, name, spec.node(static_cast<int>(j)), m});
  };

  for (std::size_t i = 0; i < inv.size(); ++i) {
    const double t = traj.checkpoints[i].t;
    const double tau = t - t0;
    const Eigen::ArrayXd& g2 = inv[i].grad_sq.values;
    report.series.push_back({t, g2.minCoeff(), g2.maxCoeff(), inv[i].h.max(), t * inv[i].r.max()});
    record(t, "lower", g2 - alpha / (2.0 * alpha * tau + 1.0) + options.slack,
           report.worst_lower_margin);
    record(t, "upper", beta / (2.0 * beta * tau + 1.0) - g2 + options.slack,
           report.worst_upper_margin);
    if (tau >= options.fit_until) {
      record(t, "h", c_fit / decay(t) - inv[i].h.values + options.slack, report.worst_h_margin);
    }
  }
  return report;
}

}  // namespace gricci
