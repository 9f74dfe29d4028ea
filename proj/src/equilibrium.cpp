#include "ibstring/equilibrium.hpp"

#include "ibstring/errors.hpp"
#include "summation.hpp"

#include <cmath>
#include <vector>

namespace ibstring {

namespace {

Mat2 rotation(double theta) {
  Mat2 q;
  q << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return q;
}

GridField rotate(const GridField& f, const Mat2& q) {
  GridField out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = q * f[j];
  return out;
}

}  // namespace

EquilibriumFit closest_equilibrium(const CurveState& Y) {
  EquilibriumFit fit;
  fit.x_star = Y.samples().mean();
  fit.radius = effective_radius(Y);

  const SpectralField coeffs = to_spectral(Y.samples());
  const CVec2& first = coeffs.mode(1);
  const Complex c = first.x() + Complex(0.0, 1.0) * first.y();

  // Scale for the degeneracy test: rms distance from the centroid.
  double spread = 0.0;
  for (std::size_t j = 0; j < Y.size(); ++j) spread += (Y[j] - fit.x_star).squaredNorm();
  spread = std::sqrt(spread / static_cast<double>(Y.size()));

  if (std::abs(c) <= 1e-14 * spread) {
    fit.degenerate = true;
    fit.theta_star = 0.0;
  } else {
    double theta = std::arg(c);
    if (theta < 0.0) theta += kTwoPi;
    if (theta >= kTwoPi) theta = 0.0;
    fit.theta_star = theta;
  }

  const double r = fit.radius;
  const double th = fit.theta_star;
  const Vec2 center = fit.x_star;
  fit.samples = GridField::sample(Y.size(), [&](double s) -> Vec2 {
    return Vec2(r * std::cos(s + th), r * std::sin(s + th)) + center;
  });
  return fit;
}

GridField equilibrium_tangent(const EquilibriumFit& fit) {
  const double r = fit.radius;
  const double th = fit.theta_star;
  return GridField::sample(fit.samples.size(), [&](double s) -> Vec2 {
    return Vec2(-r * std::sin(s + th), r * std::cos(s + th));
  });
}

double first_order_residual(const CurveState& Y, const EquilibriumFit& fit) {
  if (fit.samples.size() != Y.size()) throw InvalidArgument("fit does not match curve size");
  const GridField tangent = equilibrium_tangent(fit);
  detail::CompensatedSum acc;
  for (std::size_t j = 0; j < Y.size(); ++j) acc.add((Y[j] - fit.samples[j]).dot(tangent[j]));
  return Y.spacing() * acc.value();
}

EnergySandwich h1_energy_equivalence(const CurveState& Y, const EquilibriumFit& fit) {
  const double y1 = sobolev_seminorm(Y.samples(), 1.0);
  const double excess = y1 * y1 - kTwoPi * fit.radius * fit.radius;
  const double dist = sobolev_seminorm(Y.samples() - fit.samples, 1.0);
  return EnergySandwich{0.5 * excess, dist * dist, 4.0 * excess};
}

EnergySandwich h1_energy_equivalence(const CurveState& Y) {
  return h1_energy_equivalence(Y, closest_equilibrium(Y));
}

GridField linearized_velocity(const GridField& D) {
  const GridField hd = hilbert_transform(D);
  const GridField hdp = hilbert_transform(derivative(D, 1));
  GridField out(D.size());
  for (std::size_t j = 0; j < D.size(); ++j) {
    const Vec2 jhd(hd[j].y(), -hd[j].x());
    out[j] = -0.25 * (jhd + hdp[j]);
  }
  return out;
}

GridField linearized_velocity(const GridField& D, const EquilibriumFit& about) {
  const Mat2 q = rotation(about.theta_star);
  return rotate(linearized_velocity(rotate(D, q.transpose())), q);
}

ModeBlock mode_block(int k) {
  ModeBlock mb;
  mb.k = k;
  if (k == 0) return mb;
  const double ak = std::abs(k);
  const double sg = k > 0 ? 1.0 : -1.0;
  const Complex i(0.0, 1.0);
  mb.block << ak, -i * sg, i * sg, ak;
  mb.block *= -0.25;
  mb.eig_minus = -(ak + 1.0) / 4.0;
  mb.eig_plus = -(ak - 1.0) / 4.0 + 0.0;  // avoid printing -0 at k = 1
  return mb;
}

double fit_decay_rate(std::span<const double> t, std::span<const double> values, double t_begin,
                      double t_end) {
  if (t.size() != values.size()) throw InvalidArgument("time and value columns differ in length");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_begin || t[i] > t_end) continue;
    if (!(values[i] > 0.0)) {
      throw InvalidArgument("decay fit needs positive values; got " + std::to_string(values[i]) +
                            " at t = " + std::to_string(t[i]));
    }
    const double y = std::log(values[i]);
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
    ++count;
  }
  if (count < 2) throw InvalidArgument("decay fit window holds fewer than two samples");
  const double n = static_cast<double>(count);
  const double denom = n * stt - st * st;
  if (!(denom > 0.0)) throw InvalidArgument("decay fit window has no time spread");
  return -(n * sty - st * sy) / denom;
}

double measure_decay_rate(std::span<const DiagnosticsRow> rows, DistanceColumn column,
                          double t_begin, double t_end) {
  std::vector<double> t, v;
  t.reserve(rows.size());
  v.reserve(rows.size());
  for (const auto& r : rows) {
    t.push_back(r.t);
    v.push_back(column == DistanceColumn::h1 ? r.dist_h1 : r.dist_h52);
  }
  return fit_decay_rate(t, v, t_begin, t_end);
}

double measure_decay_rate(std::span<const DiagnosticsRow> rows, DistanceColumn column) {
  if (rows.empty()) throw InvalidArgument("no diagnostics rows");
  const double t0 = rows.front().t;
  const double t1 = rows.back().t;
  return measure_decay_rate(rows, column, 0.5 * (t0 + t1), t1);
}

}  // namespace ibstring
