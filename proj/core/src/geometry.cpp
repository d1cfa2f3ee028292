#include "gricci/geometry.hpp"

#include <cmath>

namespace gricci {

namespace {

void require_finite(const Eigen::ArrayXd& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + " contains non-finite samples");
}

}  // namespace

GroupoidMetric::GroupoidMetric(GridSpec spec, TwistedField k, PeriodicField u)
    : spec_(spec), k_(std::move(k)), u_(std::move(u)) {
  detail::require_size(k_.periodic_part, spec_, "k");
  detail::require_size(u_, spec_, "u");
  require_finite(k_.periodic_part.values, "k");
  require_finite(u_.values, "u");
  if (!std::isfinite(k_.holonomy)) throw DomainError("holonomy must be finite");
}

GroupoidMetric GroupoidMetric::flat_torus(const GridSpec& spec) {
  return {spec, TwistedField(PeriodicField::constant(spec, 0.0), 0.0),
          PeriodicField::constant(spec, 0.0)};
}

GroupoidMetric GroupoidMetric::cusp(const GridSpec& spec, double lambda) {
  return {spec, TwistedField(PeriodicField::constant(spec, 0.0), lambda),
          PeriodicField::constant(spec, 0.0)};
}

namespace detail {

LocalGeometry local_geometry(const GroupoidMetric& g) {
  const FieldDerivatives dk = derivatives(g.k(), g.spec());
  return {dk.first.values, dk.second.values, derivative(g.u(), 1, g.spec()).values,
          (-2.0 * g.u().values).exp()};
}

}  // namespace detail

PeriodicField scalar_curvature(const GroupoidMetric& g) {
  const auto geo = detail::local_geometry(g);
  return PeriodicField(-2.0 * geo.exp_m2u *
                       (geo.k_yy + geo.k_y.square() - geo.u_y * geo.k_y));
}

PeriodicField grad_norm_sq(const GroupoidMetric& g, const TwistedField& w) {
  detail::require_size(w.periodic_part, g.spec(), "w");
  const PeriodicField w_y = derivative(w, 1, g.spec());
  return PeriodicField((-2.0 * g.u().values).exp() * w_y.values.square());
}

PeriodicField grad_norm_sq(const GroupoidMetric& g, const PeriodicField& w) {
  return grad_norm_sq(g, TwistedField(w, 0.0));
}

PeriodicField laplace_beltrami(const GroupoidMetric& g, const TwistedField& w, Ambient ambient) {
  detail::require_size(w.periodic_part, g.spec(), "w");
  const FieldDerivatives dw = derivatives(w, g.spec());
  const Eigen::ArrayXd u_y = derivative(g.u(), 1, g.spec()).values;
  const Eigen::ArrayXd e = (-2.0 * g.u().values).exp();
  Eigen::ArrayXd out = e * (dw.second.values - u_y * dw.first.values);
  if (ambient == Ambient::total_space) {
    out += e * derivative(g.k(), 1, g.spec()).values * dw.first.values;
  }
  return PeriodicField(std::move(out));
}

PeriodicField laplace_beltrami(const GroupoidMetric& g, const PeriodicField& w, Ambient ambient) {
  return laplace_beltrami(g, TwistedField(w, 0.0), ambient);
}

PeriodicField divergence(const GroupoidMetric& g, const PeriodicField& a) {
  detail::require_size(a, g.spec(), "1-form");
  const auto geo = detail::local_geometry(g);
  const Eigen::ArrayXd a_y = derivative(a, 1, g.spec()).values;
  return PeriodicField(geo.exp_m2u * (a_y + (geo.k_y - geo.u_y) * a.values));
}

PeriodicField mean_curvature_form(const GroupoidMetric& g, const HaarWeight& h) {
  detail::require_size(h.f, g.spec(), "Haar weight");
  return PeriodicField(derivative(g.k(), 1, g.spec()).values +
                       derivative(h.f, 1, g.spec()).values);
}

PeriodicField orbit_measure(const GroupoidMetric& g, const HaarWeight& h) {
  detail::require_size(h.f, g.spec(), "Haar weight");
  return PeriodicField((g.u().values - h.f.values).exp());
}

double total_measure(const GroupoidMetric& g, const HaarWeight& h) {
  return integrate(orbit_measure(g, h), g.spec());
}

HaarWeight normalized(const GroupoidMetric& g, const HaarWeight& h) {
  const double mass = total_measure(g, h);
  return {PeriodicField(h.f.values + std::log(mass))};
}

ReducedTensor soliton_residual(const GroupoidMetric& g, const HaarWeight& h) {
  detail::require_size(h.f, g.spec(), "Haar weight");
  const auto geo = detail::local_geometry(g);
  const FieldDerivatives df = derivatives(h.f, g.spec());
  const Eigen::ArrayXd half_r =
      -geo.exp_m2u * (geo.k_yy + geo.k_y.square() - geo.u_y * geo.k_y);
  const Eigen::ArrayXd w_y = geo.k_y + df.first.values;
  const Eigen::ArrayXd w_yy = geo.k_yy + df.second.values;
  return {PeriodicField(half_r + geo.exp_m2u * geo.k_y * w_y),
          PeriodicField(half_r + geo.exp_m2u * (w_yy - geo.u_y * w_y))};
}

double ibp_residual(const GroupoidMetric& g, const HaarWeight& h, const PeriodicField& alpha,
                    const PeriodicField& omega) {
  detail::require_size(alpha, g.spec(), "alpha");
  detail::require_size(omega, g.spec(), "omega");
  const PeriodicField density = orbit_measure(g, h);
  const Eigen::ArrayXd e = (-2.0 * g.u().values).exp();
  const Eigen::ArrayXd div_alpha = divergence(g, alpha).values;
  const Eigen::ArrayXd omega_y = derivative(omega, 1, g.spec()).values;
  const Eigen::ArrayXd theta = mean_curvature_form(g, h).values;
  const double div_term = integrate(PeriodicField(div_alpha * omega.values), density, g.spec());
  const double grad_term =
      integrate(PeriodicField(e * alpha.values * omega_y), density, g.spec());
  const double theta_term =
      integrate(PeriodicField(e * theta * alpha.values * omega.values), density, g.spec());
  return std::abs(div_term + grad_term - theta_term);
}

MetricWithHaar reparametrize(const GroupoidMetric& g, const HaarWeight& h,
                             const CircleDiffeo& psi) {
  const GridSpec& spec = g.spec();
  const double lambda = g.holonomy();
  Eigen::ArrayXd k_per(spec.n_nodes()), u(spec.n_nodes()), f(spec.n_nodes());
  for (int j = 0; j < spec.n_nodes(); ++j) {
    const double z = spec.node(j);
    const double y = psi.map(z);
    // k(y) = lambda y + k_per(y); re-split against the new coordinate z.
    k_per[j] = lambda * (y - z) + evaluate_at(g.k().periodic_part, y, spec);
    u[j] = evaluate_at(g.u(), y, spec) + std::log(psi.derivative(z));
    f[j] = evaluate_at(h.f, y, spec);
  }
  return {GroupoidMetric(spec, TwistedField(PeriodicField(k_per), lambda), PeriodicField(u)),
          HaarWeight{PeriodicField(f)}};
}

}  // namespace gricci
