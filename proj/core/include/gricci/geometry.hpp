#pragma once

#include <functional>

#include "gricci/grid.hpp"

namespace gricci {

/// The groupoid-invariant metric g = e^{2k} dx^2 + e^{2u} dy^2 on R x R, where
/// k is twisted with holonomy lambda and u is periodic. y is the coordinate on
/// the orbit circle; the x-lines are the orbits.
class GroupoidMetric {
 public:
  GroupoidMetric(GridSpec spec, TwistedField k, PeriodicField u);

  static GroupoidMetric flat_torus(const GridSpec& spec);
  /// k = lambda * y, u = 0: the constant-curvature cusp ds^2 + e^{2 lambda s} dx^2.
  static GroupoidMetric cusp(const GridSpec& spec, double lambda);

  const GridSpec& spec() const { return spec_; }
  const TwistedField& k() const { return k_; }
  const PeriodicField& u() const { return u_; }
  double holonomy() const { return k_.holonomy; }

 private:
  GridSpec spec_;
  TwistedField k_;
  PeriodicField u_;
};

/// Log-density f of a Haar system relative to the reference system generated
/// by the metric. The orbit-space measure is e^{-f} e^{u} dy and the mean
/// curvature form is dk + df; f = 0 is the reference system itself.
struct HaarWeight {
  PeriodicField f;

  static HaarWeight reference(const GridSpec& spec) {
    return {PeriodicField::constant(spec, 0.0)};
  }
};

/// A G-invariant symmetric 2-tensor that is diagonal in the orthonormal frame
/// (e^{-k} d/dx, d/ds), stored by its two eigen-components.
struct ReducedTensor {
  PeriodicField a_x;
  PeriodicField a_s;

  PeriodicField norm_sq() const { return PeriodicField(a_x.values.square() + a_s.values.square()); }
  PeriodicField trace() const { return PeriodicField(a_x.values + a_s.values); }
};

enum class Ambient { orbit_space, total_space };

/// R = -2 e^{-2u} (k'' + k'^2 - u' k').
PeriodicField scalar_curvature(const GroupoidMetric& g);

/// |grad w|^2 = e^{-2u} w'^2.
PeriodicField grad_norm_sq(const GroupoidMetric& g, const TwistedField& w);
PeriodicField grad_norm_sq(const GroupoidMetric& g, const PeriodicField& w);

/// Orbit-space Laplacian e^{-2u}(w'' - u' w'); the total-space variant adds
/// <grad k, grad w>.
PeriodicField laplace_beltrami(const GroupoidMetric& g, const TwistedField& w, Ambient ambient);
PeriodicField laplace_beltrami(const GroupoidMetric& g, const PeriodicField& w, Ambient ambient);

/// Total-space divergence of the invariant 1-form a dy:
/// e^{-2u} (a' + (k' - u') a).
PeriodicField divergence(const GroupoidMetric& g, const PeriodicField& a);

/// y-component of the mean curvature form theta = dk + df. Its integral over
/// the circle is the holonomy for every Haar weight.
PeriodicField mean_curvature_form(const GroupoidMetric& g, const HaarWeight& h);

/// Density e^{-f} e^{u} of the orbit-space measure.
PeriodicField orbit_measure(const GroupoidMetric& g, const HaarWeight& h);
double total_measure(const GroupoidMetric& g, const HaarWeight& h);

/// Shifts f by a constant so the orbit-space measure has unit mass.
HaarWeight normalized(const GroupoidMetric& g, const HaarWeight& h);

/// Ric + (1/2) L_{theta#} g = Ric + Hess(k + f), split into orbit and
/// arc-length components:
///   a_x = R/2 + k_s w_s,  a_s = R/2 + w_ss,  w = k + f,  d/ds = e^{-u} d/dy.
ReducedTensor soliton_residual(const GroupoidMetric& g, const HaarWeight& h);

/// Defect of the weighted integration by parts formula for the 1-form
/// alpha dy and the function omega:
///   | int <div alpha, omega> + int <alpha, grad omega> - int <i_theta alpha, omega> |
/// with all integrals against the orbit-space measure.
double ibp_residual(const GroupoidMetric& g, const HaarWeight& h, const PeriodicField& alpha,
                    const PeriodicField& omega);

/// Orientation-preserving circle diffeomorphism y = map(z) with
/// map(z + 1) = map(z) + 1.
struct CircleDiffeo {
  std::function<double(double)> map;
  std::function<double(double)> derivative;
};

struct MetricWithHaar {
  GroupoidMetric metric;
  HaarWeight haar;
};

/// Pulls (k, u, f) back through the coordinate change y = map(z) using the
/// trigonometric interpolants of the samples: k~ = k o map,
/// u~ = u o map + log map', f~ = f o map.
MetricWithHaar reparametrize(const GroupoidMetric& g, const HaarWeight& h, const CircleDiffeo& psi);

namespace detail {

/// Derivative bundle shared by the geometric operators.
struct LocalGeometry {
  Eigen::ArrayXd k_y;
  Eigen::ArrayXd k_yy;
  Eigen::ArrayXd u_y;
  Eigen::ArrayXd exp_m2u;  // e^{-2u}
};

LocalGeometry local_geometry(const GroupoidMetric& g);

}  // namespace detail

}  // namespace gricci
