#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string_view>

#include "gricci/errors.hpp"

namespace gricci {

/// Differentiation backend.
enum class Scheme { spectral, fd4 };

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

/// Uniform grid on the coordinate circle [0, 1). Node j sits at y_j = j / n.
///
/// Requires n >= 8, and an even n for the spectral backend.
class GridSpec {
 public:
  explicit GridSpec(int n_nodes, Scheme scheme = Scheme::spectral);

  int n_nodes() const { return n_; }
  Scheme scheme() const { return scheme_; }
  double spacing() const { return 1.0 / n_; }
  double node(int j) const { return static_cast<double>(j) / n_; }
  Eigen::ArrayXd nodes() const;

  bool operator==(const GridSpec&) const = default;

 private:
  int n_;
  Scheme scheme_;
};

/// Samples of a strictly periodic function f(y + 1) = f(y). The canonical
/// continuous extension is the trigonometric interpolant of the samples.
struct PeriodicField {
  Eigen::ArrayXd values;

  PeriodicField() = default;
  explicit PeriodicField(Eigen::ArrayXd v) : values(std::move(v)) {}

  static PeriodicField constant(const GridSpec& spec, double c) {
    return PeriodicField(Eigen::ArrayXd::Constant(spec.n_nodes(), c));
  }

  template <class Fn>
  static PeriodicField sample(const GridSpec& spec, Fn&& fn) {
    Eigen::ArrayXd v(spec.n_nodes());
    for (int j = 0; j < spec.n_nodes(); ++j) v[j] = fn(spec.node(j));
    return PeriodicField(std::move(v));
  }

  Eigen::Index size() const { return values.size(); }
  double operator[](Eigen::Index j) const { return values[j]; }
  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
  double sup_norm() const { return values.abs().maxCoeff(); }
};

/// k(y) = holonomy * y + periodic_part(y), so that k(y + 1) = k(y) + holonomy.
struct TwistedField {
  PeriodicField periodic_part;
  double holonomy = 0.0;

  TwistedField() = default;
  TwistedField(PeriodicField periodic, double lambda)
      : periodic_part(std::move(periodic)), holonomy(lambda) {}

  /// Splits raw samples of k into (periodic part, holonomy).
  static TwistedField from_samples(const GridSpec& spec, const Eigen::ArrayXd& raw,
                                   double holonomy);

  /// Raw samples k(y_j); these are not periodic unless holonomy == 0.
  Eigen::ArrayXd samples(const GridSpec& spec) const;

  Eigen::Index size() const { return periodic_part.size(); }
};

struct FieldDerivatives {
  PeriodicField first;
  PeriodicField second;
};

/// order-th coordinate derivative, order in {1, 2}.
PeriodicField derivative(const PeriodicField& field, int order, const GridSpec& spec);
/// For order 1 the result includes the constant holonomy contribution.
PeriodicField derivative(const TwistedField& field, int order, const GridSpec& spec);

/// First and second derivatives from a single transform.
FieldDerivatives derivatives(const PeriodicField& field, const GridSpec& spec);
FieldDerivatives derivatives(const TwistedField& field, const GridSpec& spec);

/// Rectangle rule for the integral over [0, 1) of f * weight. The weight must
/// be strictly positive.
double integrate(const PeriodicField& f, const PeriodicField& weight, const GridSpec& spec);
double integrate(const PeriodicField& f, const GridSpec& spec);

/// Value of the trigonometric interpolant at an arbitrary coordinate.
double evaluate_at(const PeriodicField& field, double y, const GridSpec& spec);

/// Trigonometric interpolation onto another grid.
PeriodicField resample(const PeriodicField& field, const GridSpec& from, const GridSpec& to);

/// Zeroes every Fourier mode with |m| > keep_fraction * n / 2.
PeriodicField low_pass(const PeriodicField& field, double keep_fraction, const GridSpec& spec);

/// Dense matrix taking node samples to first derivatives at the midpoints
/// y_{j+1/2}. Skew-adjoint pairs of this operator give symmetric
/// discretizations of -(a w')'; the spectral variant keeps the Nyquist mode.
Eigen::MatrixXd staggered_derivative_matrix(const GridSpec& spec);
/// Dense matrix interpolating node samples to the midpoints y_{j+1/2}.
Eigen::MatrixXd midpoint_interpolation_matrix(const GridSpec& spec);

namespace detail {
void require_size(const PeriodicField& f, const GridSpec& spec, std::string_view what);
}  // namespace detail

}  // namespace gricci
