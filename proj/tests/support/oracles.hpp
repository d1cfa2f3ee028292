#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "gricci/flow.hpp"

namespace gricci::testing {

/// c0 + λ y + Σ_m (a_m cos 2πmy + b_m sin 2πmy), m = 1..M, with exact
/// derivatives of every order.
struct FourierSeries {
  double lambda = 0.0;
  double c0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;

  double derivative(double y, int order) const;
  double value(double y) const { return derivative(y, 0); }

  PeriodicField periodic_samples(const GridSpec& spec) const;  ///< without λ y
  TwistedField twisted(const GridSpec& spec) const;

  static FourierSeries sine(double amplitude, int mode, double lambda = 0.0);
  static FourierSeries cosine(double amplitude, int mode, double lambda = 0.0);
  /// Random band-limited series with |coefficient| <= amplitude / m^2.
  static FourierSeries random(std::mt19937_64& rng, int modes, double amplitude, double lambda = 0.0);
};

GroupoidMetric metric_from(const GridSpec& spec, const FourierSeries& k, const FourierSeries& u);

/// Scalar curvature by the Brioschi formula for E dx² + G dy², evaluated with
/// exact derivatives carried by second-order jets.
double brioschi_scalar_curvature(const FourierSeries& k, const FourierSeries& u, double y);

struct Tensor2dOracle {
  double a_x = 0.0;
  double a_s = 0.0;
  double off_diagonal = 0.0;
};

/// Ric + Hess(w) for the metric e^{2k}dx² + e^{2u}dy² computed from the
/// coordinate metric alone with nested eighth-order finite differences on a
/// local (x, y) window, returned in the orthonormal frame.
Tensor2dOracle brute_force_soliton_tensor(const std::function<double(double)>& k,
                                          const std::function<double(double)>& u,
                                          const std::function<double(double)>& w, double y,
                                          double delta = 2e-3);

/// Dense Fourier collocation matrices on [0, 1) with n even.
Eigen::MatrixXd fourier_first_matrix(int n);
Eigen::MatrixXd fourier_second_matrix(int n);

/// Smallest eigenvalue of -4 e^{-2u}(d²/dy² - u' d/dy) - e^{-2u} k'^2 by a
/// dense non-symmetric collocation eigensolve.
double dense_lambda_oracle(const FourierSeries& k, const FourierSeries& u, int n);

/// Reversed-time generator of the conjugate heat equation for frozen (k, u)
/// as a dense collocation matrix.
Eigen::MatrixXd conjugate_generator_matrix(const FourierSeries& k, const FourierSeries& u, int n);

/// exp(t A) v through Eigen's matrix exponential.
Eigen::VectorXd matrix_exponential_apply(const Eigen::MatrixXd& a, double t, const Eigen::VectorXd& v);

/// Random trigonometric polynomial samples with modes below max_mode.
PeriodicField random_band_limited(std::mt19937_64& rng, const GridSpec& spec, int max_mode,
                                   double amplitude);

/// Least-squares slope of log(y) against log(x).
double fitted_order(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gricci::testing
