#pragma once

#include "ibstring/curve.hpp"
#include "ibstring/diagnostics.hpp"
#include "ibstring/spectral.hpp"

#include <Eigen/Core>

#include <span>

namespace ibstring {

/// Uniformly parameterized circle R (cos(s + theta), sin(s + theta)) + x_star
/// closest in L2 to a configuration with the same enclosed area.
struct EquilibriumFit {
  double theta_star = 0.0;  // in [0, 2 pi)
  Vec2 x_star = Vec2::Zero();
  double radius = 0.0;
  GridField samples;
  /// True when Y has no mode +-1 content, so every theta is optimal.
  /// theta_star is then reported as 0.
  bool degenerate = false;
};

/// Closed-form fit: x_star is the mean of Y, radius its effective radius, and
/// theta_star the phase of the mode +1 coefficient of Y_x + i Y_y.
/// Throws OrientationError for nonpositive enclosed area.
EquilibriumFit closest_equilibrium(const CurveState& Y);

/// Samples of the fitted circle's derivative, R (-sin(s+theta), cos(s+theta)).
GridField equilibrium_tangent(const EquilibriumFit& fit);

/// h sum_j (Y - Y_*) . Y_*' ; vanishes at the optimum.
double first_order_residual(const CurveState& Y, const EquilibriumFit& fit);

/// The three members of
///   (1/2)(|Y'|^2 - |Y_*'|^2) <= |Y' - Y_*'|^2 <= 4 (|Y'|^2 - |Y_*'|^2),
/// all squared L2 norms.
struct EnergySandwich {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;

  bool holds(double slack = 1e-12) const {
    return lower <= middle + slack && middle <= upper + slack;
  }
};

EnergySandwich h1_energy_equivalence(const CurveState& Y);
EnergySandwich h1_energy_equivalence(const CurveState& Y, const EquilibriumFit& fit);

/// Derivative of the string velocity at the unit circle (cos s, sin s) in the
/// direction D: -(1/4) J H D - (1/4) H D', J = [[0, 1], [-1, 0]], H the
/// Hilbert transform.
GridField linearized_velocity(const GridField& D);

/// Linearization about an arbitrary fitted circle. The operator is invariant
/// under translation and scaling, and rotation by theta conjugates it.
GridField linearized_velocity(const GridField& D, const EquilibriumFit& about);

/// Action of the linearized operator on the wavenumber-k coefficient pair:
/// -(1/4) [[|k|, -i sgn k], [i sgn k, |k|]].
struct ModeBlock {
  int k = 0;
  Eigen::Matrix2cd block = Eigen::Matrix2cd::Zero();
  double eig_minus = 0.0;  // -(|k| + 1)/4, or 0 at k = 0
  double eig_plus = 0.0;   // -(|k| - 1)/4, or 0 at k = 0
};

ModeBlock mode_block(int k);

enum class DistanceColumn { h1, h52 };

/// Least-squares decay rate: minus the slope of log(value) against t over
/// samples with t in [t_begin, t_end]. Throws InvalidArgument on nonpositive
/// values in the window or fewer than two samples.
double fit_decay_rate(std::span<const double> t, std::span<const double> values, double t_begin,
                      double t_end);

double measure_decay_rate(std::span<const DiagnosticsRow> rows, DistanceColumn column,
                          double t_begin, double t_end);

/// Same, over the second half of the recorded time span.
double measure_decay_rate(std::span<const DiagnosticsRow> rows, DistanceColumn column);

}  // namespace ibstring
