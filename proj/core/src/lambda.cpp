#include <Eigen/Eigenvalues>
#include <cmath>

#include "gricci/functionals.hpp"

namespace gricci {

LambdaResult lambda_functional(const GroupoidMetric& g) {
  const GridSpec& spec = g.spec();
  const double h = spec.spacing();
  const Eigen::MatrixXd d = staggered_derivative_matrix(spec);
  const Eigen::VectorXd u_mid = midpoint_interpolation_matrix(spec) * g.u().values.matrix();
  const Eigen::ArrayXd weight_mid = (-u_mid.array()).exp();
  const Eigen::ArrayXd b = -grad_norm_sq(g, g.k()).values;
  const Eigen::ArrayXd mass = g.u().values.exp();

  // K = 4 Dᵀ diag(e^{-u} at midpoints) D + diag(B e^u), M = diag(e^u).
  Eigen::MatrixXd k = 4.0 * d.transpose() * weight_mid.matrix().asDiagonal() * d;
  k.diagonal() += (b * mass).matrix();
  const Eigen::ArrayXd inv_sqrt_m = mass.rsqrt();
  const Eigen::MatrixXd a = inv_sqrt_m.matrix().asDiagonal() * k * inv_sqrt_m.matrix().asDiagonal();
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");

  Eigen::ArrayXd kappa = inv_sqrt_m * solver.eigenvectors().col(0).array();
  if (kappa.sum() < 0.0) kappa = -kappa;
  if (!(kappa.minCoeff() > 0.0)) {
    throw NumericalError("ground state changes sign; the discretization is not positivity preserving");
  }
  kappa /= std::sqrt(h * (kappa.square() * mass).sum());
  // Energy-form Rayleigh quotient: the eigenvalue error becomes quadratic in
  // the eigenvector error and the gradient term is a sum of squares.
  const Eigen::ArrayXd grad = (d * kappa.matrix()).array();
  const double lambda = h * (4.0 * (weight_mid * grad.square()).sum() + (b * mass * kappa.square()).sum());
  return {lambda, PeriodicField(kappa), PeriodicField(-2.0 * kappa.log())};
}

LambdaSeries lambda_monotonicity(const FlowTrajectory& traj) {
  LambdaSeries out;
  for (std::size_t i = 0; i < traj.checkpoints.size(); ++i) {
    const FlowState& s = traj.checkpoints[i];
    const double value = lambda_functional(s.metric).lambda;
    out.times.push_back(s.t);
    out.values.push_back(value);
    if (i > 0) {
      const double prev = out.values[i - 1];
      const double drop = prev - value;
      out.worst_decrease = std::max(out.worst_decrease, drop);
      if (drop > 1e-8 * (1.0 + std::abs(prev))) out.violations.push_back(i);
    }
  }
  return out;
}

}  // namespace gricci
