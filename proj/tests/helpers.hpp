#pragma once

#include "ibstring/curve.hpp"
#include "ibstring/spectral.hpp"

#include <cmath>
#include <random>

namespace ibstring::testing {

inline double max_diff(const GridField& a, const GridField& b) { return (a - b).max_norm(); }

inline GridField scalar_x(std::size_t n, double (*f)(double)) {
  return GridField::sample(n, [&](double s) -> Vec2 { return Vec2(f(s), 0.0); });
}

/// Smooth, band-limited random field with modes up to `kmax`.
inline GridField random_smooth_field(std::mt19937_64& rng, std::size_t n, int kmax = 6) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  GridField f(n);
  for (int k = 0; k <= kmax; ++k) {
    const Vec2 a(gauss(rng), gauss(rng));
    const Vec2 b(gauss(rng), gauss(rng));
    const double damp = 1.0 / (1.0 + k * k);
    for (std::size_t j = 0; j < n; ++j) {
      const double s = f.node(j);
      f[j] += damp * (a * std::cos(k * s) + b * std::sin(k * s));
    }
  }
  return f;
}

/// Slow-branch mode-k disturbance eps (cos ks, sin ks) of the unit circle.
inline CurveState slow_mode_circle(std::size_t n, int k, double eps) {
  return make_perturbed_circle(n, 1.0, {{k, Vec2(eps, eps), Vec2(0.0, -kPi / 2.0)}});
}

}  // namespace ibstring::testing
