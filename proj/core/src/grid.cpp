#include "gricci/grid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "fft.hpp"

namespace gricci {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Spectrum = std::vector<std::complex<double>>;

Spectrum forward_transform(const Eigen::ArrayXd& v) {
  const auto& fft = detail::RealFft::for_size(static_cast<int>(v.size()));
  Spectrum c(fft.spectrum_size());
  fft.forward(v.data(), c.data());
  return c;
}

Eigen::ArrayXd inverse_transform(const Spectrum& c, int n) {
  const auto& fft = detail::RealFft::for_size(n);
  Eigen::ArrayXd out(n);
  fft.inverse(c.data(), out.data());
  return out;
}

int wrap(int j, int n) { return ((j % n) + n) % n; }

FieldDerivatives spectral_derivatives(const Eigen::ArrayXd& v) {
  const int n = static_cast<int>(v.size());
  const Spectrum c = forward_transform(v);
  Spectrum c1(c.size()), c2(c.size());
  const double inv_n = 1.0 / n;
  for (std::size_t m = 0; m < c.size(); ++m) {
    const double k = kTwoPi * static_cast<double>(m);
    c1[m] = std::complex<double>(0.0, k * inv_n) * c[m];
    c2[m] = (-k * k * inv_n) * c[m];
  }
  // The odd derivative of the Nyquist cosine vanishes on the grid.
  if (n % 2 == 0) c1[n / 2] = 0.0;
  return {PeriodicField(inverse_transform(c1, n)), PeriodicField(inverse_transform(c2, n))};
}

FieldDerivatives fd4_derivatives(const Eigen::ArrayXd& v) {
  const int n = static_cast<int>(v.size());
  const double h = 1.0 / n;
  Eigen::ArrayXd d1(n), d2(n);
  for (int j = 0; j < n; ++j) {
    const double fm2 = v[wrap(j - 2, n)], fm1 = v[wrap(j - 1, n)], f0 = v[j];
    const double fp1 = v[wrap(j + 1, n)], fp2 = v[wrap(j + 2, n)];
    d1[j] = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    d2[j] = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
  }
  return {PeriodicField(std::move(d1)), PeriodicField(std::move(d2))};
}

double trig_value(const Spectrum& c, int n, double y) {
  double sum = c[0].real();
  const int half = (n - 1) / 2;
  for (int m = 1; m <= half; ++m) {
    const std::complex<double> phase = std::polar(1.0, kTwoPi * m * y);
    sum += 2.0 * (c[m] * phase).real();
  }
  if (n % 2 == 0) sum += c[n / 2].real() * std::cos(std::numbers::pi * n * y);
  return sum / n;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::spectral: return "spectral";
    case Scheme::fd4: return "fd4";
  }
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "spectral") return Scheme::spectral;
  if (name == "fd4") return Scheme::fd4;
  throw DomainError("unknown differentiation scheme '" + std::string(name) + "'");
}

GridSpec::GridSpec(int n_nodes, Scheme scheme) : n_(n_nodes), scheme_(scheme) {
  if (n_nodes < 8) {
    throw DomainError("grid needs at least 8 nodes, got " + std::to_string(n_nodes));
  }
  if (scheme == Scheme::spectral && n_nodes % 2 != 0) {
    throw DomainError("spectral grids need an even node count, got " + std::to_string(n_nodes));
  }
}

Eigen::ArrayXd GridSpec::nodes() const {
  return Eigen::ArrayXd::LinSpaced(n_, 0.0, static_cast<double>(n_ - 1)) / n_;
}

TwistedField TwistedField::from_samples(const GridSpec& spec, const Eigen::ArrayXd& raw,
                                        double holonomy) {
  if (raw.size() != spec.n_nodes()) {
    throw DimensionError("twisted samples do not match the grid size");
  }
  const Eigen::ArrayXd ramp = holonomy * spec.nodes();
  Eigen::ArrayXd periodic = raw - ramp;
  // Nudge by ulps so that samples() reproduces raw exactly.
  for (Eigen::Index j = 0; j < raw.size(); ++j) {
    for (int attempt = 0; attempt < 8 && periodic[j] + ramp[j] != raw[j]; ++attempt) {
      const double toward = periodic[j] + ramp[j] < raw[j] ? INFINITY : -INFINITY;
      periodic[j] = std::nextafter(periodic[j], toward);
    }
  }
  return TwistedField(PeriodicField(std::move(periodic)), holonomy);
}

Eigen::ArrayXd TwistedField::samples(const GridSpec& spec) const {
  detail::require_size(periodic_part, spec, "twisted field");
  return periodic_part.values + holonomy * spec.nodes();
}

namespace detail {

void require_size(const PeriodicField& f, const GridSpec& spec, std::string_view what) {
  if (f.size() != spec.n_nodes()) {
    throw DimensionError(std::string(what) + " has " + std::to_string(f.size()) +
                         " samples but the grid has " + std::to_string(spec.n_nodes()));
  }
}

}  // namespace detail

FieldDerivatives derivatives(const PeriodicField& field, const GridSpec& spec) {
  detail::require_size(field, spec, "field");
  return spec.scheme() == Scheme::spectral ? spectral_derivatives(field.values)
                                           : fd4_derivatives(field.values);
}

FieldDerivatives derivatives(const TwistedField& field, const GridSpec& spec) {
  FieldDerivatives d = derivatives(field.periodic_part, spec);
  d.first.values += field.holonomy;
  return d;
}

PeriodicField derivative(const PeriodicField& field, int order, const GridSpec& spec) {
  if (order < 1 || order > 2) {
    throw UnsupportedOrderError("derivative order " + std::to_string(order) +
                                " is not supported (expected 1 or 2)");
  }
  FieldDerivatives d = derivatives(field, spec);
  return order == 1 ? std::move(d.first) : std::move(d.second);
}

PeriodicField derivative(const TwistedField& field, int order, const GridSpec& spec) {
  PeriodicField d = derivative(field.periodic_part, order, spec);
  if (order == 1) d.values += field.holonomy;
  return d;
}

double integrate(const PeriodicField& f, const PeriodicField& weight, const GridSpec& spec) {
  detail::require_size(f, spec, "integrand");
  detail::require_size(weight, spec, "weight");
  if (!(weight.values > 0.0).all()) {
    throw DomainError("quadrature weight must be strictly positive");
  }
  return (f.values * weight.values).sum() * spec.spacing();
}

double integrate(const PeriodicField& f, const GridSpec& spec) {
  detail::require_size(f, spec, "integrand");
  return f.values.sum() * spec.spacing();
}

double evaluate_at(const PeriodicField& field, double y, const GridSpec& spec) {
  detail::require_size(field, spec, "field");
  return trig_value(forward_transform(field.values), spec.n_nodes(), y);
}

PeriodicField resample(const PeriodicField& field, const GridSpec& from, const GridSpec& to) {
  detail::require_size(field, from, "field");
  const Spectrum c = forward_transform(field.values);
  return PeriodicField::sample(to, [&](double y) { return trig_value(c, from.n_nodes(), y); });
}

PeriodicField low_pass(const PeriodicField& field, double keep_fraction, const GridSpec& spec) {
  detail::require_size(field, spec, "field");
  const int n = spec.n_nodes();
  Spectrum c = forward_transform(field.values);
  const double cutoff = keep_fraction * 0.5 * n;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (static_cast<double>(m) > cutoff) c[m] = 0.0;
  }
  return PeriodicField(inverse_transform(c, n) / n);
}

Eigen::MatrixXd staggered_derivative_matrix(const GridSpec& spec) {
  const int n = spec.n_nodes();
  const double h = spec.spacing();
  // Circulant: entry (j, l) depends on (j - l) mod n only.
  Eigen::ArrayXd column(n);
  if (spec.scheme() == Scheme::spectral) {
    for (int d = 0; d < n; ++d) {
      // Derivative at y = (d + 1/2) h of the cardinal interpolant centred at 0.
      const double y = (d + 0.5) * h;
      double sum = 0.0;
      for (int m = 1; m < n / 2; ++m) sum -= 2.0 * kTwoPi * m * std::sin(kTwoPi * m * y);
      sum -= std::numbers::pi * n * std::sin(std::numbers::pi * n * y);
      column[d] = sum / n;
    }
  } else {
    column.setZero();
    // (f_{j-1} - 27 f_j + 27 f_{j+1} - f_{j+2}) / (24 h) at y_{j+1/2}.
    column[wrap(1, n)] += 1.0 / (24.0 * h);
    column[0] += -27.0 / (24.0 * h);
    column[wrap(-1, n)] += 27.0 / (24.0 * h);
    column[wrap(-2, n)] += -1.0 / (24.0 * h);
  }
  Eigen::MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) out(j, l) = column[wrap(j - l, n)];
  }
  return out;
}

Eigen::MatrixXd midpoint_interpolation_matrix(const GridSpec& spec) {
  const int n = spec.n_nodes();
  const double h = spec.spacing();
  Eigen::ArrayXd column(n);
  if (spec.scheme() == Scheme::spectral) {
    for (int d = 0; d < n; ++d) {
      const double y = (d + 0.5) * h;
      double sum = 1.0;
      for (int m = 1; m < n / 2; ++m) sum += 2.0 * std::cos(kTwoPi * m * y);
      // Nyquist cosine vanishes at midpoints.
      column[d] = sum / n;
    }
  } else {
    column.setZero();
    column[wrap(1, n)] += -1.0 / 16.0;
    column[0] += 9.0 / 16.0;
    column[wrap(-1, n)] += 9.0 / 16.0;
    column[wrap(-2, n)] += -1.0 / 16.0;
  }
  Eigen::MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) out(j, l) = column[wrap(j - l, n)];
  }
  return out;
}

}  // namespace gricci
