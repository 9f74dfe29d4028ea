#include "ibstring/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace ibstring::oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Integrates each component separately; the integrands are bounded and
// smooth on (0, pi], so adaptive Gauss-Kronrod converges quickly.
template <typename F>
Vec2 integrate_components(F&& integrand) {
  Vec2 out;
  for (int c = 0; c < 2; ++c) {
    auto scalar = [&](double t) { return integrand(t)[c]; };
    out[c] = gauss_kronrod<double, 61>::integrate(scalar, 0.0, kPi, 15, 1e-14);
  }
  return out;
}

}  // namespace

Vec2 fractional_laplacian_half_pv(const CurveFn& f, double s) {
  const Vec2 center = f(s);
  const Vec2 integral = integrate_components([&](double t) -> Vec2 {
    const double sn = std::sin(0.5 * t);
    return (2.0 * center - f(s + t) - f(s - t)) / (4.0 * sn * sn);
  });
  return integral / kPi;
}

Vec2 hilbert_pv(const CurveFn& f, double s) {
  const Vec2 integral = integrate_components([&](double t) -> Vec2 {
    return (f(s - t) - f(s + t)) / std::tan(0.5 * t);
  });
  return integral / kTwoPi;
}

double polygon_area(const CurveFn& f, std::size_t points) {
  std::vector<Vec2> p(points);
  for (std::size_t i = 0; i < points; ++i) {
    p[i] = f(kTwoPi * static_cast<double>(i) / static_cast<double>(points));
  }
  long double acc = 0.0L;
  for (std::size_t i = 0; i < points; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % points];
    acc += static_cast<long double>(a.x()) * b.y() - static_cast<long double>(b.x()) * a.y();
  }
  return static_cast<double>(0.5L * acc);
}

double circle_distance_squared(const GridField& Y, const Vec2& center, double radius,
                               double theta) {
  double acc = 0.0;
  for (std::size_t j = 0; j < Y.size(); ++j) {
    const double a = Y.node(j) + theta;
    const Vec2 c = center + radius * Vec2(std::cos(a), std::sin(a));
    acc += (Y[j] - c).squaredNorm();
  }
  return Y.spacing() * acc;
}

double grid_search_theta(const GridField& Y, const Vec2& center, double radius,
                         std::size_t count) {
  // Angle addition keeps the inner loop free of trig calls.
  const std::size_t n = Y.size();
  std::vector<double> cs(n), sn(n);
  for (std::size_t j = 0; j < n; ++j) {
    cs[j] = std::cos(Y.node(j));
    sn[j] = std::sin(Y.node(j));
  }
  double best_theta = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(count);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = Y[j].x() - center.x() - radius * (cs[j] * ct - sn[j] * st);
      const double dy = Y[j].y() - center.y() - radius * (sn[j] * ct + cs[j] * st);
      acc += dx * dx + dy * dy;
    }
    if (acc < best) {
      best = acc;
      best_theta = theta;
    }
  }
  return best_theta;
}

}  // namespace ibstring::oracle
