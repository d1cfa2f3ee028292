#include "gricci/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "derivative_kernel.hpp"

namespace gricci {

namespace {

/// RK4 integrator for the uncoupled flow with preallocated buffers. u - k_per
/// is invariant under the flow, so its derivative is refreshed only on demand
/// and each stage needs a single transform of k_per.
class RicciIntegrator {
 public:
  explicit RicciIntegrator(const GridSpec& spec)
      : deriv_(spec), n_(spec.n_nodes()), offset_y_(n_), k_y_(n_), k_yy_(n_), r1_(n_), r2_(n_),
        r3_(n_), r4_(n_), kp_(n_), u_(n_), diff_(n_), e0_(n_), e_(n_) {}

  void refresh_invariant(const Eigen::ArrayXd& kp, const Eigen::ArrayXd& u) {
    diff_ = u - kp;
    deriv_.first(diff_.data(), offset_y_.data());
  }

  /// Advances (kp, u) in place and returns sup|R| at the initial state.
  double step(Eigen::ArrayXd& kp, Eigen::ArrayXd& u, double lambda, double dt) {
    e0_ = (-2.0 * u).exp();
    const double sup_abs_r = rate(kp, e0_, lambda, r1_);
    stage(kp, u, 0.5 * dt, r1_);
    rate(kp_, e_, lambda, r2_);
    stage(kp, u, 0.5 * dt, r2_);
    rate(kp_, e_, lambda, r3_);
    stage(kp, u, dt, r3_);
    rate(kp_, e_, lambda, r4_);
    r1_ = (dt / 6.0) * (r1_ + 2.0 * r2_ + 2.0 * r3_ + r4_);
    kp += r1_;
    u += r1_;
    return sup_abs_r;
  }

 private:
  /// Stage state (kp_, u_) = (kp, u) + c r and its weight e_ = e^{-2 u_}.
  void stage(const Eigen::ArrayXd& kp, const Eigen::ArrayXd& u, double c, const Eigen::ArrayXd& r) {
    kp_ = kp + c * r;
    u_ = u + c * r;
    const double x_max = 2.0 * std::abs(c) * r.abs().maxCoeff();
    if (x_max <= 1e-3) {
      // e^{-2u_} = e^{-2u} e^{x}, x = -2 c r; degree-6 Taylor is exact to rounding here.
      const auto x = (-2.0 * c) * r;
      e_ = e0_ * (1.0 + x * (1.0 + x * (1.0 / 2 + x * (1.0 / 6 + x * (1.0 / 24 + x * (1.0 / 120 + x / 720))))));
    } else {
      e_ = (-2.0 * u_).exp();
    }
  }

  double rate(const Eigen::ArrayXd& kp, const Eigen::ArrayXd& e, double lambda, Eigen::ArrayXd& out) {
    deriv_.first_second(kp.data(), k_y_.data(), k_yy_.data());
    // k_y_ holds d(k_per)/dy; u_y = k_y_ + offset.
    out = e * (k_yy_ - (k_y_ + offset_y_) * (k_y_ + lambda) + (k_y_ + lambda).square());
    return 2.0 * out.abs().maxCoeff();
  }

  detail::DerivativeKernel deriv_;
  Eigen::Index n_;
  Eigen::ArrayXd offset_y_, k_y_, k_yy_, r1_, r2_, r3_, r4_, kp_, u_, diff_, e0_, e_;
};

double resolve_cfl(double cfl, Scheme scheme) { return cfl > 0.0 ? cfl : default_cfl(scheme); }

PeriodicField filtered_haar_rate(const GroupoidMetric& g, const Eigen::ArrayXd& f, double keep) {
  PeriodicField rate = coupled_haar_rhs(g, HaarWeight{PeriodicField(f)});
  if (keep < 1.0) rate = low_pass(rate, keep, g.spec());
  return rate;
}

/// RK4 step; returns the new state and reports sup|R| of the input state.
FlowState advance(const FlowState& s, double dt, const StepOptions& options, double& sup_abs_r) {
  const GridSpec& spec = s.metric.spec();
  const double lambda = s.metric.holonomy();
  const Eigen::ArrayXd& kp0 = s.metric.k().periodic_part.values;
  const Eigen::ArrayXd& u0 = s.metric.u().values;
  const auto n = spec.n_nodes();
  if (!options.coupled) {
    RicciIntegrator integrator(spec);
    Eigen::ArrayXd kp = kp0, u = u0;
    integrator.refresh_invariant(kp, u);
    sup_abs_r = integrator.step(kp, u, lambda, dt);
    return {s.t + dt,
            GroupoidMetric(spec, TwistedField(PeriodicField(std::move(kp)), lambda),
                           PeriodicField(std::move(u))),
            s.haar};
  }

  const double keep = options.coupled_keep_fraction;
  const Eigen::ArrayXd& f0 = s.haar.f.values;
  auto metric_at = [&](const Eigen::ArrayXd& k, const Eigen::ArrayXd& uu) {
    return GroupoidMetric(spec, TwistedField(PeriodicField(k), lambda), PeriodicField(uu));
  };
  const Eigen::ArrayXd offset_y = derivative(PeriodicField(u0 - kp0), 1, spec).values;
  auto rate = [&](const Eigen::ArrayXd& k, const Eigen::ArrayXd& uu, Eigen::ArrayXd& out) {
    const FieldDerivatives d = derivatives(PeriodicField(k), spec);
    const Eigen::ArrayXd k_y = d.first.values + lambda;
    out = (-2.0 * uu).exp() * (d.second.values - (d.first.values + offset_y) * k_y + k_y.square());
    return 2.0 * out.abs().maxCoeff();
  };
  Eigen::ArrayXd r1(n), r2(n), r3(n), r4(n), kp(n), u(n);
  Eigen::ArrayXd q1(n), q2(n), q3(n), q4(n), f(n);
  sup_abs_r = rate(kp0, u0, r1);
  q1 = filtered_haar_rate(s.metric, f0, keep).values;
  kp = kp0 + 0.5 * dt * r1;
  u = u0 + 0.5 * dt * r1;
  f = f0 + 0.5 * dt * q1;
  rate(kp, u, r2);
  q2 = filtered_haar_rate(metric_at(kp, u), f, keep).values;
  kp = kp0 + 0.5 * dt * r2;
  u = u0 + 0.5 * dt * r2;
  f = f0 + 0.5 * dt * q2;
  rate(kp, u, r3);
  q3 = filtered_haar_rate(metric_at(kp, u), f, keep).values;
  kp = kp0 + dt * r3;
  u = u0 + dt * r3;
  f = f0 + dt * q3;
  rate(kp, u, r4);
  q4 = filtered_haar_rate(metric_at(kp, u), f, keep).values;
  const Eigen::ArrayXd incr = (dt / 6.0) * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
  const Eigen::ArrayXd f_incr = (dt / 6.0) * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
  return {s.t + dt, metric_at(kp0 + incr, u0 + incr), HaarWeight{PeriodicField(f0 + f_incr)}};
}

bool state_finite(const FlowState& s) {
  return s.metric.k().periodic_part.values.allFinite() && s.metric.u().values.allFinite() &&
         s.haar.f.values.allFinite();
}

/// Constructs a state without the finiteness validation of GroupoidMetric.
FlowState checked(const FlowState& from, double dt, const StepOptions& options, double& sup_abs_r) {
  try {
    FlowState next = advance(from, dt, options, sup_abs_r);
    if (!state_finite(next)) throw DomainError("non-finite");
    return next;
  } catch (const DomainError&) {
    throw BlowUpError("non-finite values after step at t = " + std::to_string(from.t), from);
  }
}

void require_step_allowed(const FlowState& state, double dt, double cfl) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const double limit = stability_limit(state.metric, cfl);
  if (dt > limit * (1.0 + 1e-12)) {
    throw StabilityError("time step " + std::to_string(dt) + " exceeds stability limit " +
                             std::to_string(limit),
                         dt, limit);
  }
}

}  // namespace

const GridSpec& FlowTrajectory::spec() const {
  if (checkpoints.empty()) throw DomainError("empty trajectory");
  return checkpoints.front().metric.spec();
}

std::vector<double> FlowTrajectory::times() const {
  std::vector<double> out;
  out.reserve(checkpoints.size());
  for (const auto& c : checkpoints) out.push_back(c.t);
  return out;
}

FlowState FlowTrajectory::state_at(double t) const {
  if (checkpoints.empty()) throw DomainError("empty trajectory");
  const double t0 = checkpoints.front().t, t1 = checkpoints.back().t;
  if (t < t0 || t > t1) throw DomainError("time outside the trajectory");
  auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), t,
                             [](const FlowState& s, double v) { return s.t < v; });
  if (it->t == t) return *it;
  const FlowState& b = *it;
  const FlowState& a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  auto mix = [w](const PeriodicField& x, const PeriodicField& y) {
    return PeriodicField((1.0 - w) * x.values + w * y.values);
  };
  return {t,
          GroupoidMetric(a.metric.spec(),
                         TwistedField(mix(a.metric.k().periodic_part, b.metric.k().periodic_part),
                                      a.metric.holonomy()),
                         mix(a.metric.u(), b.metric.u())),
          HaarWeight{mix(a.haar.f, b.haar.f)}};
}

MetricRate ricci_rhs(const GroupoidMetric& g) {
  const auto geo = detail::local_geometry(g);
  PeriodicField rate(geo.exp_m2u * (geo.k_yy - geo.u_y * geo.k_y + geo.k_y.square()));
  return {rate, rate};
}

PeriodicField coupled_haar_rhs(const GroupoidMetric& g, const HaarWeight& h) {
  detail::require_size(h.f, g.spec(), "Haar weight");
  const auto geo = detail::local_geometry(g);
  const FieldDerivatives df = derivatives(h.f, g.spec());
  const Eigen::ArrayXd theta = geo.k_y + df.first.values;
  const Eigen::ArrayXd theta_y = geo.k_yy + df.second.values;
  const Eigen::ArrayXd half_r =
      -geo.exp_m2u * (geo.k_yy + geo.k_y.square() - geo.u_y * geo.k_y);
  const Eigen::ArrayXd div_theta = geo.exp_m2u * (theta_y + (geo.k_y - geo.u_y) * theta);
  return PeriodicField(geo.exp_m2u * theta.square() + half_r - div_theta);
}

double default_cfl(Scheme scheme) { return scheme == Scheme::spectral ? 0.25 : 0.4; }

double stability_limit(const GroupoidMetric& g, double cfl) {
  const double h = g.spec().spacing();
  return resolve_cfl(cfl, g.spec().scheme()) * h * h * std::exp(2.0 * g.u().min());
}

FlowState step(const FlowState& state, double dt, const StepOptions& options) {
  require_step_allowed(state, dt, options.cfl);
  double sup_abs_r = 0.0;
  return checked(state, dt, options, sup_abs_r);
}

FlowTrajectory evolve(const FlowState& initial, double t_end, const EvolveControls& controls) {
  if (!(t_end > initial.t)) throw DomainError("t_end must exceed the initial time");
  if (!(controls.checkpoint_interval > 0.0)) throw DomainError("checkpoint interval must be positive");
  if (controls.fixed_dt < 0.0) throw DomainError("fixed dt must be non-negative");
  detail::require_size(initial.haar.f, initial.metric.spec(), "Haar weight");

  const StepOptions options{controls.coupled, controls.cfl, controls.coupled_keep_fraction};
  const double cfl = resolve_cfl(controls.cfl, initial.metric.spec().scheme());
  const double h2 = std::pow(initial.metric.spec().spacing(), 2);

  FlowTrajectory traj;
  traj.haar_evolution = controls.coupled ? HaarEvolution::forward_coupled : HaarEvolution::frozen;
  traj.checkpoints.push_back(initial);

  const double t0 = initial.t;
  const double span = t_end - t0;
  const auto count = static_cast<long>(std::ceil(span / controls.checkpoint_interval - 1e-9));

  auto fail = [&](const std::string& why, const FlowState& last) {
    throw BlowUpError(why, last, std::make_shared<const FlowTrajectory>(traj));
  };

  const GridSpec& spec = initial.metric.spec();
  const double lambda = initial.metric.holonomy();
  RicciIntegrator integrator(spec);
  FlowState state = initial;
  Eigen::ArrayXd kp = initial.metric.k().periodic_part.values;
  Eigen::ArrayXd u = initial.metric.u().values;
  Eigen::ArrayXd kp_prev, u_prev;
  double t = initial.t;

  auto materialize = [&](double time) {
    if (!controls.coupled) {
      state = FlowState{time,
                        GroupoidMetric(spec, TwistedField(PeriodicField(kp), lambda), PeriodicField(u)),
                        initial.haar};
    }
    return state;
  };

  for (long i = 1; i <= count; ++i) {
    const double target = i == count ? t_end : t0 + static_cast<double>(i) * controls.checkpoint_interval;
    if (!controls.coupled) integrator.refresh_invariant(kp, u);
    while (t < target) {
      const double min_u = controls.coupled ? state.metric.u().min() : u.minCoeff();
      const double limit = cfl * h2 * std::exp(2.0 * min_u);
      double dt = limit;
      if (controls.fixed_dt > 0.0) {
        if (controls.fixed_dt > limit * (1.0 + 1e-12)) {
          throw StabilityError("fixed time step exceeds the stability limit at t = " + std::to_string(t),
                               controls.fixed_dt, limit);
        }
        dt = controls.fixed_dt;
      }
      bool last = false;
      if (t + dt >= target - 1e-12 * std::max(1.0, std::abs(target))) {
        dt = target - t;
        last = true;
      }
      if (dt < controls.min_dt) {
        throw StagnationError("time step underflow at t = " + std::to_string(t));
      }
      double sup_abs_r = 0.0;
      bool finite = true;
      if (controls.coupled) {
        try {
          FlowState next = advance(state, dt, options, sup_abs_r);
          finite = state_finite(next);
          if (finite && sup_abs_r <= controls.blowup_curvature) state = std::move(next);
        } catch (const DomainError&) {
          finite = false;
        }
      } else {
        kp_prev = kp;
        u_prev = u;
        sup_abs_r = integrator.step(kp, u, lambda, dt);
        finite = kp.allFinite() && u.allFinite();
        if (!finite || sup_abs_r > controls.blowup_curvature) {
          kp = kp_prev;
          u = u_prev;
        }
      }
      if (!finite) fail("non-finite values at t = " + std::to_string(t), materialize(t));
      if (sup_abs_r > controls.blowup_curvature) {
        fail("curvature exceeded " + std::to_string(controls.blowup_curvature) + " at t = " +
                 std::to_string(t),
             materialize(t));
      }
      traj.step_log.push_back({t, dt, dt / (h2 * std::exp(2.0 * min_u))});
      t = last ? target : t + dt;
      if (controls.coupled) state.t = t;
    }
    traj.checkpoints.push_back(materialize(t));
  }
  return traj;
}

}  // namespace gricci
