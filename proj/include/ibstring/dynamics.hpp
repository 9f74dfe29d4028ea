#pragma once

// Time integration of X_t = u(X), written as X_t = -(1/4)(-Delta)^{1/2} X + g_X.

#include "ibstring/curve.hpp"
#include "ibstring/diagnostics.hpp"
#include "ibstring/spectral.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ibstring {

enum class Scheme { rk4, exp_euler };

struct DealiasConfig {
  bool enabled = false;
  double cutoff_fraction = 2.0 / 3.0;
  double krasny_floor = 1e-13;

  /// Filtering is switched on for runs longer than one time unit.
  static DealiasConfig automatic(double t_end) {
    DealiasConfig d;
    d.enabled = t_end > 1.0;
    return d;
  }

  friend bool operator==(const DealiasConfig&, const DealiasConfig&) = default;
};

struct StepperConfig {
  Scheme scheme = Scheme::exp_euler;
  double dt = 1e-2;
  double t_end = 10.0;
  DealiasConfig dealias = DealiasConfig::automatic(10.0);
  /// Abort once lambda drops below this; unset means lambda(0)/2.
  std::optional<double> lambda_abort;
  /// Snapshot cadence in steps; 0 disables snapshots.
  std::size_t snapshot_every = 0;

  /// Throws InvalidArgument if dt, t_end or lambda_abort are out of range.
  void validate() const;

  friend bool operator==(const StepperConfig&, const StepperConfig&) = default;
};

/// (e^z - 1)/z with a series for |z| < 1e-4; phi1(0) = 1.
double phi1(double z);

/// String velocity, the full right-hand side.
GridField rhs(const CurveState& X);

/// X(t + dt) - X(t) for one classical RK4 step. `velocity` may carry rhs(X)
/// to save the first stage.
GridField rk4_increment(const CurveState& X, double dt, const GridField* velocity = nullptr);

CurveState step_rk4(const CurveState& X, double dt, const GridField* velocity = nullptr);

/// Exponential Euler: per mode k,
///   X_k <- e^{-|k| dt/4} X_k + dt phi1(-|k| dt/4) g_k,  g = g_X(X).
CurveState step_exp_euler(const CurveState& X, double dt, const GridField* velocity = nullptr);

/// The mode-wise update behind step_exp_euler for an arbitrary field x and
/// nonlinear term g. With g = 0 it reduces to semigroup_apply(x, dt).
GridField exponential_euler_update(const GridField& x, const GridField& g, double dt);

/// Change in elastic energy caused by adding `increment` to X, computed as
/// <X', dX'> + |dX'|^2 / 2 to avoid cancellation between two nearby energies.
double energy_change(const CurveState& X, const GridField& increment);

/// Diagnostics of a state given its velocity.
DiagnosticsRow diagnose(const CurveState& X, double t, const GridField& velocity);
DiagnosticsRow diagnose(const CurveState& X, double t);

struct Snapshot {
  std::size_t step = 0;
  double t = 0.0;
  CurveState state;
};

enum class AbortReason { lambda, non_finite };

struct RunAbort {
  AbortReason reason = AbortReason::lambda;
  std::size_t step = 0;
  double t = 0.0;
  std::string message;
};

struct RunResult {
  std::vector<DiagnosticsRow> rows;
  std::vector<Snapshot> snapshots;  // empty when a snapshot sink was supplied
  CurveState final_state;
  std::optional<RunAbort> abort;
  double lambda_threshold = 0.0;
};

using SnapshotSink = std::function<void(const Snapshot&)>;

/// Steps from t = 0 to t_end, recording a diagnostics row at t = 0 and after
/// every step. The last step is shortened so the run ends exactly at t_end.
/// Snapshots (including step 0) go to `sink` if given, otherwise into the
/// result. Abort conditions end the run early and are reported in the result.
/// Throws InvalidArgument if the initial curve already violates the lambda
/// threshold.
RunResult run(const CurveState& initial, const StepperConfig& cfg, const SnapshotSink& sink = {});

}  // namespace ibstring
