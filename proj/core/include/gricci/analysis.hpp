#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gricci/geometry.hpp"

namespace gricci {

/// Periodic solution of k'' + k'^2 = -c/2 in arc length with k(0) = 0,
/// k(L) = λ and k'(L) = k'(0).
struct CurvatureProfile {
  double c = 0.0;
  double lambda = 0.0;
  double length = 0.0;
  double initial_slope = 0.0;
  std::vector<double> s;
  std::vector<double> k;
  std::vector<double> k_s;
  double periodicity_defect = 0.0;  ///< |k'(L) - k'(0)|
  double holonomy_defect = 0.0;     ///< |k(L) - λ|
};

/// Evidence that no admissible profile exists.
struct Infeasible {
  std::string reason;
  /// For c > 0: the a-priori lower bound cL/2 on k'(0) - k'(L).
  double slope_decrease_bound = 0.0;
  /// Smallest k'(0) - k'(L) seen over the scanned initial slopes (infinite if
  /// every trial blew up).
  double min_observed_decrease = 0.0;
  /// Periodic slopes that were found but miss the holonomy, with their k(L).
  std::vector<double> periodic_slopes;
  std::vector<double> periodic_holonomies;
};

using ShootResult = std::variant<CurvatureProfile, Infeasible>;

/// Shooting on k'(0) with an adaptive Dormand-Prince integrator.
ShootResult constant_curvature_shoot(double c, double lambda, double length, double tol,
                                     int samples = 257);

enum class SteadyKind { flat_torus, hyperbolic_cusp_normalized, none };

std::string_view to_string(SteadyKind kind);

struct SteadyClassification {
  SteadyKind kind = SteadyKind::none;
  double sup_abs_r = 0.0;
  /// sup |R + 2 (λ/L)^2| with L the length of the orbit circle.
  double cusp_residual = 0.0;
  double soliton_residual = 0.0;  ///< max of sup|a_x|, sup|a_s|
};

SteadyClassification classify_steady(const GroupoidMetric& g, const HaarWeight& h, double tol);

}  // namespace gricci
