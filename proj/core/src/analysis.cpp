#include "gricci/analysis.hpp"

#include <array>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstdint>
#include <limits>

namespace gricci {

namespace {

using OdeState = std::array<double, 2>;  // (k, k')

constexpr double kBlowUp = 1e8;

struct Shooter {
  double c;
  double length;
  double ode_tol;

  /// Integrates to s = L; returns false if k' escapes to -infinity.
  bool integrate(double p0, OdeState& end) const {
    namespace odeint = boost::numeric::odeint;
    OdeState x{0.0, p0};
    const double half_c = 0.5 * c;
    auto rhs = [half_c](const OdeState& y, OdeState& dy, double) {
      dy[0] = y[1];
      dy[1] = -half_c - y[1] * y[1];
    };
    auto stepper = odeint::make_controlled(ode_tol, ode_tol, odeint::runge_kutta_dopri5<OdeState>());
    double s = 0.0;
    double ds = length / 64.0;
    while (s < length) {
      if (s + ds > length) ds = length - s;
      const auto result = stepper.try_step(rhs, x, s, ds);
      if (result == odeint::fail) {
        if (ds < 1e-14 * length) return false;
        continue;
      }
      if (!std::isfinite(x[1]) || std::abs(x[1]) > kBlowUp) return false;
    }
    end = x;
    return true;
  }

  /// k'(L) - k'(0), or a huge negative number after blow-up.
  double residual(double p0) const {
    OdeState end{};
    if (!integrate(p0, end)) return -std::numeric_limits<double>::max();
    return end[1] - p0;
  }
};

CurvatureProfile sample_profile(const Shooter& shooter, double c, double lambda, double p0,
                                int samples) {
  namespace odeint = boost::numeric::odeint;
  CurvatureProfile out;
  out.c = c;
  out.lambda = lambda;
  out.length = shooter.length;
  out.initial_slope = p0;
  const double half_c = 0.5 * c;
  auto rhs = [half_c](const OdeState& y, OdeState& dy, double) {
    dy[0] = y[1];
    dy[1] = -half_c - y[1] * y[1];
  };
  std::vector<double> times(samples);
  for (int i = 0; i < samples; ++i) times[i] = shooter.length * i / (samples - 1);
  OdeState x{0.0, p0};
  auto observer = [&out](const OdeState& y, double s) {
    out.s.push_back(s);
    out.k.push_back(y[0]);
    out.k_s.push_back(y[1]);
  };
  odeint::integrate_times(
      odeint::make_dense_output(shooter.ode_tol, shooter.ode_tol, odeint::runge_kutta_dopri5<OdeState>()),
      rhs, x, times.begin(), times.end(), shooter.length / 64.0, observer);
  out.periodicity_defect = std::abs(out.k_s.back() - p0);
  out.holonomy_defect = std::abs(out.k.back() - lambda);
  return out;
}

}  // namespace

ShootResult constant_curvature_shoot(double c, double lambda, double length, double tol,
                                     int samples) {
  if (!(length > 0.0)) throw DomainError("period length must be positive");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (samples < 2) throw DomainError("need at least two profile samples");

  const Shooter shooter{c, length, std::min(1e-13, 1e-3 * tol)};
  // |k'| <= |λ|/L + sqrt(|c|/2) L, widened so roots never sit on the edge.
  const double bound = 1.5 * (std::abs(lambda) / length + std::sqrt(std::abs(c) / 2.0) * length) + 1.0;
  constexpr int kScan = 400;
  std::vector<double> p(kScan + 1), r(kScan + 1);
  for (int i = 0; i <= kScan; ++i) {
    p[i] = -bound + 2.0 * bound * i / kScan;
    r[i] = shooter.residual(p[i]);
  }

  std::vector<double> roots;
  auto add_root = [&roots](double x) {
    for (double existing : roots) {
      if (std::abs(existing - x) < 1e-9) return;
    }
    roots.push_back(x);
  };
  auto res = [&shooter](double x) { return shooter.residual(x); };
  const boost::math::tools::eps_tolerance<double> stop(50);
  for (int i = 0; i < kScan; ++i) {
    if (r[i] == 0.0) add_root(p[i]);
    if ((r[i] > 0.0 && r[i + 1] < 0.0) || (r[i] < 0.0 && r[i + 1] > 0.0)) {
      std::uintmax_t iters = 200;
      const auto bracket = boost::math::tools::bisect(res, p[i], p[i + 1], stop, iters);
      add_root(0.5 * (bracket.first + bracket.second));
    }
  }
  // Touching (even-multiplicity) roots show up as local minima of |r|.
  for (int i = 1; i < kScan; ++i) {
    const double a = std::abs(r[i - 1]), b = std::abs(r[i]), d = std::abs(r[i + 1]);
    if (b <= a && b <= d && r[i] != -std::numeric_limits<double>::max()) {
      auto abs_res = [&shooter](double x) { return std::abs(shooter.residual(x)); };
      std::uintmax_t iters = 200;
      const auto best = boost::math::tools::brent_find_minima(abs_res, p[i - 1], p[i + 1], 52, iters);
      if (best.second <= 1e-3 * tol) add_root(best.first);
    }
  }

  Infeasible certificate;
  for (double root : roots) {
    OdeState end{};
    if (!shooter.integrate(root, end)) continue;
    if (std::abs(end[1] - root) > tol) continue;
    if (std::abs(end[0] - lambda) <= tol) {
      return sample_profile(shooter, c, lambda, root, samples);
    }
    certificate.periodic_slopes.push_back(root);
    certificate.periodic_holonomies.push_back(end[0]);
  }

  certificate.min_observed_decrease = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    if (r[i] != -std::numeric_limits<double>::max()) {
      certificate.min_observed_decrease = std::min(certificate.min_observed_decrease, -r[i]);
    }
  }
  if (c > 0.0) {
    certificate.slope_decrease_bound = 0.5 * c * length;
    certificate.reason = "k' strictly decreases over a period (k'' <= -c/2 < 0), so it cannot be periodic";
  } else if (!certificate.periodic_slopes.empty()) {
    certificate.reason = "periodic slopes exist but none reproduces the holonomy";
  } else {
    certificate.reason = "no periodic slope found in the a-priori bracket";
  }
  return certificate;
}

std::string_view to_string(SteadyKind kind) {
  switch (kind) {
    case SteadyKind::flat_torus:
      return "FlatTorus";
    case SteadyKind::hyperbolic_cusp_normalized:
      return "HyperbolicCuspNormalized";
    case SteadyKind::none:
      break;
  }
  return "None";
}

SteadyClassification classify_steady(const GroupoidMetric& g, const HaarWeight& h, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  SteadyClassification out;
  const PeriodicField r = scalar_curvature(g);
  const ReducedTensor a = soliton_residual(g, h);
  const double lambda = g.holonomy();
  const double length = integrate(PeriodicField(g.u().values.exp()), g.spec());
  const double target = -2.0 * (lambda / length) * (lambda / length);
  out.sup_abs_r = r.sup_norm();
  out.cusp_residual = (r.values - target).abs().maxCoeff();
  out.soliton_residual = std::max(a.a_x.sup_norm(), a.a_s.sup_norm());
  if (lambda == 0.0 && out.sup_abs_r <= tol && out.soliton_residual <= tol) {
    out.kind = SteadyKind::flat_torus;
  } else if (lambda != 0.0 && out.cusp_residual <= tol) {
    out.kind = SteadyKind::hyperbolic_cusp_normalized;
  }
  return out;
}

}  // namespace gricci
