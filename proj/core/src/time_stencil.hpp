#pragma once

#include <cstddef>
#include <vector>

namespace gricci::detail {

/// First-derivative weights at t[i] from samples t[i-half .. i+half]
/// (Fornberg's recursion, any spacing).
inline std::vector<double> centered_first_weights(const std::vector<double>& t, std::size_t i,
                                                  std::size_t half) {
  const std::size_t m = 2 * half + 1;
  const double x0 = t[i];
  const double* x = t.data() + (i - half);
  // c[j][k]: weight of sample j for derivative order k (k = 0, 1).
  std::vector<double> c0(m, 0.0), c1(m, 0.0);
  c0[0] = 1.0;
  double c_prev = 1.0;
  for (std::size_t a = 1; a < m; ++a) {
    double c2 = 1.0;
    for (std::size_t b = 0; b < a; ++b) {
      const double c3 = x[a] - x[b];
      c2 *= c3;
      if (b == a - 1) {
        c1[a] = c_prev * (c0[a - 1] - (x[a - 1] - x0) * c1[a - 1]) / c2;
        c0[a] = -c_prev * (x[a - 1] - x0) * c0[a - 1] / c2;
      }
      c1[b] = ((x[a] - x0) * c1[b] - c0[b]) / c3;
      c0[b] = (x[a] - x0) * c0[b] / c3;
    }
    c_prev = c2;
  }
  return c1;
}

/// Largest usable half width (at most 2) for a centered stencil over count samples.
inline std::size_t stencil_half_width(std::size_t count) { return count >= 7 ? 3 : count >= 5 ? 2 : 1; }

}  // namespace gricci::detail
