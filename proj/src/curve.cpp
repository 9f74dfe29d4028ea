#include "ibstring/curve.hpp"

#include "ibstring/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ibstring {

CurveState::CurveState(GridField x) : x_(std::move(x)) {
  if (!x_.all_finite()) throw InvalidArgument("curve samples must be finite");
  d1_ = derivative(x_, 1);
  d2_ = derivative(x_, 2);
}

double torus_offset(std::size_t j, std::size_t jp, std::size_t n) {
  const auto ni = static_cast<long>(n);
  long d = (static_cast<long>(jp) - static_cast<long>(j)) % ni;
  if (d < 0) d += ni;
  if (d >= ni / 2) d -= ni;
  return kTwoPi * static_cast<double>(d) / static_cast<double>(n);
}

DiffQuotients diff_quotients(const CurveState& X, std::size_t j, std::size_t jp) {
  const auto& d1 = X.first_derivative();
  const auto& d2 = X.second_derivative();
  DiffQuotients q;
  if (j == jp) {
    q.L = d1[j];
    q.M = d2[j];
    q.N = 0.5 * d2[j];
    q.tau = 0.0;
    return q;
  }
  q.tau = torus_offset(j, jp, X.size());
  const double inv = 1.0 / q.tau;
  q.L = (X[jp] - X[j]) * inv;
  q.M = (d1[jp] - d1[j]) * inv;
  q.N = (q.L - d1[j]) * inv;
  return q;
}

double well_stretched_constant(const CurveState& X) {
  const std::size_t n = X.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t jp = j + 1; jp < n; ++jp) {
      const double d = std::abs(torus_offset(j, jp, n));
      const double ratio2 = (X[jp] - X[j]).squaredNorm() / (d * d);
      best = std::min(best, ratio2);
    }
  }
  return std::sqrt(best);
}

double enclosed_area(const CurveState& X) {
  const auto& d1 = X.first_derivative();
  double acc = 0.0;
  for (std::size_t j = 0; j < X.size(); ++j) {
    acc += X[j].x() * d1[j].y() - X[j].y() * d1[j].x();
  }
  const double area = 0.5 * X.spacing() * acc;
  if (!(area > 0.0)) {
    throw OrientationError("enclosed area is " + std::to_string(area) +
                           "; curve is reversed or self-intersecting");
  }
  return area;
}

double effective_radius(const CurveState& X) { return std::sqrt(enclosed_area(X) / kPi); }

double elastic_energy(const CurveState& X) {
  const double s1 = sobolev_seminorm(X.samples(), 1.0);
  return 0.5 * s1 * s1;
}

CurveState make_circle(std::size_t n, double radius, double theta, const Vec2& center) {
  return CurveState(GridField::sample(n, [&](double s) -> Vec2 {
    return Vec2(radius * std::cos(s + theta), radius * std::sin(s + theta)) + center;
  }));
}

CurveState make_perturbed_circle(std::size_t n, double radius,
                                 const std::vector<PerturbationMode>& modes) {
  return CurveState(GridField::sample(n, [&](double s) -> Vec2 {
    Vec2 x(radius * std::cos(s), radius * std::sin(s));
    for (const auto& m : modes) {
      const double ks = static_cast<double>(m.k) * s;
      x.x() += m.amplitude.x() * std::cos(ks + m.phase.x());
      x.y() += m.amplitude.y() * std::cos(ks + m.phase.y());
    }
    return x;
  }));
}

CurveState make_reparam_circle(std::size_t n, double radius, double beta) {
  if (!(std::abs(beta) < 1.0)) throw InvalidArgument("reparameterization needs |beta| < 1");
  return CurveState(GridField::sample(n, [&](double s) -> Vec2 {
    const double phi = s + beta * std::sin(s);
    return Vec2(radius * std::cos(phi), radius * std::sin(phi));
  }));
}

}  // namespace ibstring
