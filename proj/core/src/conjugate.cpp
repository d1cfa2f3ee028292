#include <algorithm>
#include <cmath>
#include <string>

#include "derivative_kernel.hpp"
#include "gricci/flow.hpp"

namespace gricci {

namespace {

struct Coefficients {
  Eigen::ArrayXd k_y;  // full k_y, holonomy included
  Eigen::ArrayXd u_y;
  Eigen::ArrayXd u;
};

Coefficients coefficients_of(const FlowState& s) {
  const GridSpec& spec = s.metric.spec();
  return {derivative(s.metric.k(), 1, spec).values, derivative(s.metric.u(), 1, spec).values,
          s.metric.u().values};
}

/// Reversed-time generator e^{-2u} (v'' - (u' + k') v' + k'^2 v) whose
/// coefficients are Lagrange-interpolated in t over a few checkpoints.
class ReversedGenerator {
 public:
  ReversedGenerator(const GridSpec& spec, const std::vector<double>& times,
                    const std::vector<Coefficients>& coefs)
      : deriv_(spec), times_(times), coefs_(coefs), v_y_(spec.n_nodes()), v_yy_(spec.n_nodes()),
        k_y_(spec.n_nodes()), u_y_(spec.n_nodes()), e_(spec.n_nodes()) {}

  /// Selects the interpolation stencil for the interval [times[i], times[i+1]].
  void set_interval(std::size_t i) {
    const std::size_t count = times_.size();
    const std::size_t width = std::min<std::size_t>(6, count);
    first_ = std::min(i > 1 ? i - 2 : 0, count - width);
    last_ = first_ + width;
  }

  void set_time(double t) {
    k_y_.setZero();
    u_y_.setZero();
    e_.setZero();
    for (std::size_t j = first_; j < last_; ++j) {
      double w = 1.0;
      for (std::size_t m = first_; m < last_; ++m) {
        if (m != j) w *= (t - times_[m]) / (times_[j] - times_[m]);
      }
      k_y_ += w * coefs_[j].k_y;
      u_y_ += w * coefs_[j].u_y;
      e_ += w * coefs_[j].u;
    }
    e_ = (-2.0 * e_).exp();
  }

  void operator()(const Eigen::ArrayXd& v, Eigen::ArrayXd& out) {
    deriv_.first_second(v.data(), v_y_.data(), v_yy_.data());
    out = e_ * (v_yy_ - (u_y_ + k_y_) * v_y_ + k_y_.square() * v);
  }

 private:
  detail::DerivativeKernel deriv_;
  const std::vector<double>& times_;
  const std::vector<Coefficients>& coefs_;
  std::size_t first_ = 0, last_ = 0;
  Eigen::ArrayXd v_y_, v_yy_, k_y_, u_y_, e_;
};

}  // namespace

ConjugateSolution backward_conjugate_solve(const FlowTrajectory& traj, const PeriodicField& v_end,
                                           const ConjugateOptions& options) {
  if (traj.checkpoints.empty()) throw DomainError("empty trajectory");
  const GridSpec& spec = traj.spec();
  detail::require_size(v_end, spec, "v_end");
  if (!(v_end.min() > 0.0)) throw DomainError("v_end must be strictly positive");

  const double cfl = options.cfl > 0.0 ? options.cfl : default_cfl(spec.scheme());
  const double h2 = spec.spacing() * spec.spacing();
  const std::size_t count = traj.checkpoints.size();
  const std::vector<double> times = traj.times();
  std::vector<Coefficients> coefs;
  coefs.reserve(count);
  for (const FlowState& s : traj.checkpoints) coefs.push_back(coefficients_of(s));

  ConjugateSolution out;
  out.times = times;
  out.v.resize(count);
  out.v[count - 1] = v_end;

  Eigen::ArrayXd v = v_end.values;
  const auto n = spec.n_nodes();
  Eigen::ArrayXd r1(n), r2(n), r3(n), r4(n), tmp(n);
  ReversedGenerator gen(spec, times, coefs);
  for (std::size_t i = count - 1; i-- > 0;) {
    const double span = times[i + 1] - times[i];
    double min_u = coefs[i].u.minCoeff();
    for (std::size_t j = i; j < std::min(count, i + 2); ++j) min_u = std::min(min_u, coefs[j].u.minCoeff());
    const auto substeps = static_cast<long>(std::ceil(span / (cfl * h2 * std::exp(2.0 * min_u))));
    const double dtau = span / static_cast<double>(substeps);
    gen.set_interval(i);
    for (long s = 0; s < substeps; ++s) {
      // Stage times run from times[i + 1] down to times[i].
      const double t = times[i + 1] - static_cast<double>(s) * dtau;
      gen.set_time(t);
      gen(v, r1);
      tmp = v + 0.5 * dtau * r1;
      gen.set_time(t - 0.5 * dtau);
      gen(tmp, r2);
      tmp = v + 0.5 * dtau * r2;
      gen(tmp, r3);
      tmp = v + dtau * r3;
      gen.set_time(t - dtau);
      gen(tmp, r4);
      v += (dtau / 6.0) * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
      if (!(v.minCoeff() > 0.0) || !v.allFinite()) {
        throw NumericalError("conjugate solution lost positivity near t = " + std::to_string(t));
      }
    }
    out.v[i] = PeriodicField(v);
  }
  return out;
}

FlowTrajectory with_conjugate_haar(const FlowTrajectory& traj, const ConjugateSolution& solution) {
  if (solution.v.size() != traj.checkpoints.size()) {
    throw DomainError("conjugate solution does not match the trajectory checkpoints");
  }
  FlowTrajectory out = traj;
  for (std::size_t i = 0; i < out.checkpoints.size(); ++i) {
    if (solution.times[i] != traj.checkpoints[i].t) {
      throw DomainError("conjugate solution times differ from the trajectory");
    }
    const PeriodicField& v = solution.v[i];
    detail::require_size(v, traj.spec(), "v");
    if (!(v.min() > 0.0)) throw DomainError("v must be strictly positive");
    out.checkpoints[i].haar = HaarWeight{PeriodicField(-v.values.log())};
  }
  out.haar_evolution = HaarEvolution::conjugate_solve;
  return out;
}

}  // namespace gricci
