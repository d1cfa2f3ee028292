#include "gricci/functionals.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "fft.hpp"
#include "time_stencil.hpp"

namespace gricci {

namespace {

void require_same_times(const FlowTrajectory& a, const FlowTrajectory& b) {
  if (a.checkpoints.size() != b.checkpoints.size()) {
    throw DomainError("trajectories have different checkpoint counts");
  }
  if (!(a.spec() == b.spec())) throw DomainError("trajectories live on different grids");
  for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
    const double ta = a.checkpoints[i].t, tb = b.checkpoints[i].t;
    if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(ta))) {
      throw DomainError("trajectories have different checkpoint times");
    }
  }
}

}  // namespace

double f_functional(const GroupoidMetric& g, const HaarWeight& h) {
  const PeriodicField r = scalar_curvature(g);
  const PeriodicField theta = mean_curvature_form(g, h);
  const Eigen::ArrayXd integrand = r.values + (-2.0 * g.u().values).exp() * theta.values.square();
  return integrate(PeriodicField(integrand), orbit_measure(g, h), g.spec());
}

double f_functional_rate(const GroupoidMetric& g, const HaarWeight& h) {
  return 2.0 * integrate(soliton_residual(g, h).norm_sq(), orbit_measure(g, h), g.spec());
}

std::vector<double> f_functional_series(const FlowTrajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.checkpoints.size());
  for (const FlowState& s : traj.checkpoints) out.push_back(f_functional(s.metric, s.haar));
  return out;
}

std::vector<VariationSample> f_variation_residual(const FlowTrajectory& traj) {
  if (traj.haar_evolution == HaarEvolution::frozen) {
    throw DomainError("the trajectory does not carry an evolving Haar system");
  }
  const std::vector<double> f = f_functional_series(traj);
  std::vector<double> times;
  for (const FlowState& s : traj.checkpoints) times.push_back(s.t);
  const std::size_t half = detail::stencil_half_width(times.size());
  std::vector<VariationSample> out;
  for (std::size_t i = half; i + half < times.size(); ++i) {
    const FlowState& s = traj.checkpoints[i];
    const std::vector<double> w = detail::centered_first_weights(times, i, half);
    double df = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) df += w[j] * f[i - half + j];
    const double rhs = f_functional_rate(s.metric, s.haar);
    out.push_back({s.t, df, rhs, std::abs(df - rhs)});
  }
  return out;
}

EnergyDensities energy_densities(const GroupoidMetric& g, const GroupoidMetric& other) {
  if (!(g.spec() == other.spec())) throw DomainError("metrics live on different grids");
  const GridSpec& spec = g.spec();
  const Eigen::ArrayXd y = spec.nodes();
  const Eigen::ArrayXd dk = other.k().periodic_part.values - g.k().periodic_part.values +
                            (other.holonomy() - g.holonomy()) * y;
  const Eigen::ArrayXd du = other.u().values - g.u().values;
  const Eigen::ArrayXd ek = (2.0 * dk).exp();
  const Eigen::ArrayXd eu = (2.0 * du).exp();
  const Eigen::ArrayXd h_sq = (1.0 - ek).square() + (1.0 - eu).square();

  const Eigen::ArrayXd k_y = derivative(g.k(), 1, spec).values;
  const Eigen::ArrayXd ok_y = derivative(other.k(), 1, spec).values;
  const Eigen::ArrayXd u_y = derivative(g.u(), 1, spec).values;
  const Eigen::ArrayXd ou_y = derivative(other.u(), 1, spec).values;
  const Eigen::ArrayXd e = (-2.0 * g.u().values).exp();
  const Eigen::ArrayXd a_sq = e * ((k_y - ek / eu * ok_y).square() + 2.0 * (k_y - ok_y).square() +
                                   (u_y - ou_y).square());

  const Eigen::ArrayXd curv = 0.5 * scalar_curvature(g).values;
  const Eigen::ArrayXd other_curv = 0.5 * scalar_curvature(other).values;
  const Eigen::ArrayXd t_x = curv - other_curv * ek;
  const Eigen::ArrayXd t_y = curv - other_curv * eu;
  return {PeriodicField(h_sq), PeriodicField(a_sq),
          PeriodicField(2.0 * (t_x.square() + t_y.square()))};
}

std::vector<EnergyBreakdown> uniqueness_energy(const FlowTrajectory& a, const FlowTrajectory& b,
                                               double alpha_exp) {
  if (!(alpha_exp > 0.0 && alpha_exp < 1.0)) throw DomainError("alpha_exp must lie in (0, 1)");
  require_same_times(a, b);
  const GridSpec& spec = a.spec();
  const double t0 = a.checkpoints.front().t;
  std::vector<EnergyBreakdown> out;
  for (std::size_t i = 1; i < a.checkpoints.size(); ++i) {
    const GroupoidMetric& ga = a.checkpoints[i].metric;
    const GroupoidMetric& gb = b.checkpoints[i].metric;
    const double t = a.checkpoints[i].t - t0;
    const EnergyDensities d = energy_densities(ga, gb);
    const PeriodicField measure(ga.u().values.exp());
    EnergyBreakdown e;
    e.t = a.checkpoints[i].t;
    e.S = integrate(d.s_sq, measure, spec);
    e.H = integrate(d.h_sq, measure, spec) / t;
    e.I = integrate(d.a_sq, measure, spec) / std::pow(t, alpha_exp);
    e.E = e.S + e.H + e.I;
    out.push_back(e);
  }
  return out;
}

namespace {

/// Projection onto wavenumbers |m| <= n/4. Nested spectral derivatives lift
/// rounding noise by ~m^4, so it piles up in the top half of the spectrum.
Eigen::ArrayXd low_band(const Eigen::ArrayXd& r) {
  const int n = static_cast<int>(r.size());
  const detail::RealFft& fft = detail::RealFft::for_size(n);
  std::vector<std::complex<double>> spectrum(fft.spectrum_size());
  fft.forward(r.data(), spectrum.data());
  for (int m = n / 4 + 1; m < fft.spectrum_size(); ++m) spectrum[m] = 0.0;
  Eigen::ArrayXd out(n);
  fft.inverse_in_place(spectrum.data(), out.data());
  return out / n;
}

/// H v with H = R + 2 div θ - |θ|², θ_y = k_y - v_y / v.
PeriodicField harnack_quantity(const GroupoidMetric& g, const PeriodicField& v) {
  const HaarWeight h{PeriodicField(-v.values.log())};
  const PeriodicField theta = mean_curvature_form(g, h);
  const Eigen::ArrayXd e = (-2.0 * g.u().values).exp();
  const Eigen::ArrayXd big_h = scalar_curvature(g).values + 2.0 * divergence(g, theta).values -
                               e * theta.values.square();
  return PeriodicField(big_h * v.values);
}

}  // namespace

std::vector<HarnackSample> harnack_residual(const FlowTrajectory& traj,
                                            const ConjugateSolution& v_series) {
  if (v_series.v.size() != traj.checkpoints.size()) {
    throw DomainError("v series does not match the trajectory checkpoints");
  }
  for (const PeriodicField& v : v_series.v) {
    detail::require_size(v, traj.spec(), "v");
    if (!(v.min() > 0.0)) throw DomainError("v series must be strictly positive");
  }
  const GridSpec& spec = traj.spec();
  std::vector<PeriodicField> q;
  q.reserve(v_series.v.size());
  for (std::size_t i = 0; i < v_series.v.size(); ++i) {
    q.push_back(harnack_quantity(traj.checkpoints[i].metric, v_series.v[i]));
  }

  std::vector<double> times;
  for (const FlowState& s : traj.checkpoints) times.push_back(s.t);
  const std::size_t half = detail::stencil_half_width(times.size());
  std::vector<HarnackSample> out;
  for (std::size_t i = half; i + half < times.size(); ++i) {
    const GroupoidMetric& g = traj.checkpoints[i].metric;
    const double t = times[i];
    const std::vector<double> w = detail::centered_first_weights(times, i, half);
    Eigen::ArrayXd q_t = Eigen::ArrayXd::Zero(spec.n_nodes());
    for (std::size_t j = 0; j < w.size(); ++j) q_t += w[j] * q[i - half + j].values;
    const Eigen::ArrayXd e = (-2.0 * g.u().values).exp();
    const Eigen::ArrayXd k_y = derivative(g.k(), 1, spec).values;
    const Eigen::ArrayXd q_y = derivative(q[i], 1, spec).values;
    const Eigen::ArrayXd lap = laplace_beltrami(g, q[i], Ambient::total_space).values;
    const Eigen::ArrayXd lhs = q_t + lap - 2.0 * e * k_y * q_y + e * k_y.square() * q[i].values;

    const HaarWeight h{PeriodicField(-v_series.v[i].values.log())};
    const Eigen::ArrayXd rhs = 2.0 * soliton_residual(g, h).norm_sq().values * v_series.v[i].values;
    const Eigen::ArrayXd defect = lhs - rhs;
    Eigen::Index worst = 0;
    const double residual = low_band(defect).abs().maxCoeff(&worst);
    out.push_back({t, residual, spec.node(static_cast<int>(worst)), rhs.minCoeff(), rhs.maxCoeff(),
                   defect.abs().maxCoeff()});
  }
  return out;
}

}  // namespace gricci
