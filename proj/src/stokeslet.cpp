#include "ibstring/stokeslet.hpp"

#include "ibstring/errors.hpp"
#include "ibstring/parallel.hpp"
#include "summation.hpp"

#include <cmath>
#include <limits>

namespace ibstring {

namespace {

constexpr double kInvFourPi = 1.0 / (4.0 * kPi);

void require_nonzero(const Vec2& x, const char* what) {
  if (x.squaredNorm() == 0.0) throw InvalidArgument(std::string(what) + " is singular at 0");
}

// Directional derivative of 4 pi G at r along v.
Mat2 stokeslet_derivative(const Vec2& r, const Vec2& v) {
  const double r2 = r.squaredNorm();
  const double rv = r.dot(v);
  Mat2 out = (-rv / r2) * Mat2::Identity();
  out += (v * r.transpose() + r * v.transpose()) / r2;
  out -= (2.0 * rv / (r2 * r2)) * (r * r.transpose());
  return out;
}

// Mixed second derivative of 4 pi G at r along v and w.
Mat2 stokeslet_second_derivative(const Vec2& r, const Vec2& v, const Vec2& w) {
  const double r2 = r.squaredNorm();
  const double r4 = r2 * r2;
  const double rv = r.dot(v);
  const double rw = r.dot(w);
  const double vw = v.dot(w);
  const Mat2 rr = r * r.transpose();

  Mat2 out = (-vw / r2 + 2.0 * rv * rw / r4) * Mat2::Identity();
  out += (v * w.transpose() + w * v.transpose()) / r2;
  out -= (2.0 * rw / r4) * (v * r.transpose() + r * v.transpose());
  out -= (2.0 * vw / r4) * rr;
  out -= (2.0 * rv / r4) * (w * r.transpose() + r * w.transpose());
  out += (8.0 * rv * rw / (r4 * r2)) * rr;
  return out;
}

void require_off_samples(const CurveState& X, const Vec2& x, const char* what) {
  for (std::size_t j = 0; j < X.size(); ++j) {
    if (X[j] == x) {
      throw InvalidArgument(std::string(what) +
                            ": point coincides with a curve sample; use on_curve_velocity");
    }
  }
}

}  // namespace

Mat2 stokeslet_G(const Vec2& x) {
  require_nonzero(x, "stokeslet_G");
  const double r2 = x.squaredNorm();
  return kInvFourPi * (-0.5 * std::log(r2) * Mat2::Identity() + x * x.transpose() / r2);
}

Vec2 pressure_kernel_Q(const Vec2& x) {
  require_nonzero(x, "pressure_kernel_Q");
  return x / (kTwoPi * x.squaredNorm());
}

Vec2 gamma0(const CurveState& X, std::size_t j, std::size_t jp) {
  if (j == jp) return kInvFourPi * X.second_derivative()[j];

  // The bracket is homogeneous of degree zero in (L, M), so the raw
  // differences can stand in for the quotients.
  const auto& d1 = X.first_derivative();
  const Vec2 chord = X[jp] - X[j];
  const Vec2 slope = d1[jp] - d1[j];
  const Vec2& b = d1[jp];
  const double c2 = chord.squaredNorm();
  if (c2 == 0.0) throw DegenerateCurve("coincident samples at indices " + std::to_string(j) +
                                       " and " + std::to_string(jp));
  const double cb = chord.dot(b);
  const double cm = chord.dot(slope);
  const Vec2 bracket = (cb * slope - cm * b - b.dot(slope) * chord) / c2 +
                       (2.0 * cb * cm / (c2 * c2)) * chord;
  return kInvFourPi * bracket;
}

GridField on_curve_velocity(const CurveState& X) {
  const std::size_t n = X.size();
  const double h = X.spacing();
  GridField u(n);
  parallel_for(n, [&](std::size_t j) {
    detail::CompensatedSum2 acc;
    for (std::size_t jp = 0; jp < n; ++jp) acc.add(gamma0(X, j, jp));
    u[j] = h * acc.value();
  });
  return u;
}

GridField on_curve_velocity_cauchy(const CurveState& X) {
  const std::size_t n = X.size();
  const double h = X.spacing();
  const auto& d1 = X.first_derivative();
  GridField u(n);
  parallel_for(n, [&](std::size_t j) {
    detail::CompensatedSum2 acc;
    for (std::size_t jp = 0; jp < n; ++jp) {
      if (jp == j) continue;
      const Vec2 chord = X[jp] - X[j];
      const double c2 = chord.squaredNorm();
      if (c2 == 0.0) throw DegenerateCurve("coincident samples");
      const Vec2& b = d1[jp];
      const double cb = chord.dot(b);
      acc.add((-b.squaredNorm() / c2 + 2.0 * cb * cb / (c2 * c2)) * chord);
    }
    u[j] = kInvFourPi * h * acc.value();
  });
  return u;
}

std::size_t nearest_sample(const CurveState& X, const Vec2& x) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < X.size(); ++j) {
    const double d2 = (X[j] - x).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

Vec2 off_curve_velocity(const CurveState& X, const Vec2& x) {
  require_off_samples(X, x, "off_curve_velocity");
  const auto& d1 = X.first_derivative();
  const Vec2 c = d1[nearest_sample(X, x)];
  detail::CompensatedSum2 acc;
  for (std::size_t jp = 0; jp < X.size(); ++jp) {
    const Vec2 r = x - X[jp];
    acc.add(stokeslet_derivative(r, d1[jp]) * (d1[jp] - c));
  }
  return kInvFourPi * X.spacing() * acc.value();
}

double pressure_at(const CurveState& X, const Vec2& x) {
  require_off_samples(X, x, "pressure_at");
  const auto& d1 = X.first_derivative();
  detail::CompensatedSum acc;
  for (std::size_t jp = 0; jp < X.size(); ++jp) {
    const Vec2 r = X[jp] - x;
    const double r2 = r.squaredNorm();
    const double rb = r.dot(d1[jp]);
    acc.add(d1[jp].squaredNorm() / r2 - 2.0 * rb * rb / (r2 * r2));
  }
  return X.spacing() * acc.value() / kTwoPi;
}

FlowSample sample_flow(const CurveState& X, const Vec2& x) {
  return FlowSample{x, off_curve_velocity(X, x), pressure_at(X, x)};
}

double dissipation_rate(const CurveState& X, const GridField& velocity) {
  if (velocity.size() != X.size()) throw InvalidArgument("velocity size mismatch");
  const auto& d2 = X.second_derivative();
  detail::CompensatedSum acc;
  for (std::size_t j = 0; j < X.size(); ++j) acc.add(velocity[j].dot(d2[j]));
  return X.spacing() * acc.value();
}

double dissipation_rate(const CurveState& X) { return dissipation_rate(X, on_curve_velocity(X)); }

GridField g_X(const CurveState& X, const GridField& velocity) {
  return velocity + 0.25 * fractional_laplacian_half(X.samples());
}

GridField g_X(const CurveState& X) { return g_X(X, on_curve_velocity(X)); }

double near_diagonal_factor(double tau) {
  if (std::abs(tau) < 1e-2) {
    const double t2 = tau * tau;
    return tau * (1.0 / 12.0 + t2 * (1.0 / 240.0 + t2 * (1.0 / 6048.0 + t2 / 172800.0)));
  }
  const double s = std::sin(0.5 * tau);
  const double s2 = s * s;
  return (tau * tau - 4.0 * s2) / (4.0 * tau * s2);
}

Vec2 gamma1(const CurveState& X, std::size_t j, std::size_t jp) {
  if (j == jp) return Vec2::Zero();
  const auto q = diff_quotients(X, j, jp);
  const auto& d1 = X.first_derivative();
  const Vec2& a = d1[j];   // X'(s)
  const Vec2& b = d1[jp];  // X'(s')
  const Vec2& L = q.L;
  const Vec2& M = q.M;
  const Vec2& N = q.N;

  const double l2 = L.squaredNorm();
  if (l2 == 0.0) throw DegenerateCurve("coincident samples");
  const double l4 = l2 * l2;
  const double l6 = l4 * l2;
  const double LM = L.dot(M);
  const double LN = L.dot(N);
  const double La = L.dot(a);
  const double Lb = L.dot(b);

  Vec2 out = ((a - L).dot(N) / l2 - 2.0 * LN * La / l4 - near_diagonal_factor(q.tau)) * M;
  out += ((M - 2.0 * N).dot(M) / l2 + 2.0 * LN * LM / l4) * a;
  out += (2.0 * LM * L.dot(M - N) * La / l6 + 2.0 * (N - M).dot(M) * La / l4) * L;
  out += (-6.0 * LM * Lb * LN / l6 + 2.0 * N.dot(M) * Lb / l4 + 2.0 * LM * N.dot(b) / l4) * L;
  out += (2.0 * LM * Lb / l4) * N;
  return kInvFourPi * out;
}

Vec2 gamma1_direct(const CurveState& X, std::size_t j, std::size_t jp) {
  if (j == jp) throw InvalidArgument("gamma1_direct is undefined on the diagonal");
  const auto& d1 = X.first_derivative();
  const Vec2 r = X[j] - X[jp];
  if (r.squaredNorm() == 0.0) throw DegenerateCurve("coincident samples");
  const double tau = torus_offset(j, jp, X.size());
  const double s = std::sin(0.5 * tau);
  const Mat2 kernel = kInvFourPi * stokeslet_second_derivative(r, d1[j], d1[jp]) -
                      Mat2::Identity() / (16.0 * kPi * s * s);
  return kernel * (d1[jp] - d1[j]);
}

GridField g_X_derivative_quadrature(const CurveState& X) {
  const std::size_t n = X.size();
  const double h = X.spacing();
  GridField out(n);
  parallel_for(n, [&](std::size_t j) {
    detail::CompensatedSum2 acc;
    for (std::size_t jp = 0; jp < n; ++jp) acc.add(gamma1(X, j, jp));
    out[j] = h * acc.value();
  });
  return out;
}

}  // namespace ibstring
