#include "ibstring/dynamics.hpp"

#include "ibstring/equilibrium.hpp"
#include "ibstring/errors.hpp"
#include "ibstring/stokeslet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ibstring {

namespace {

GridField rk4_samples(const CurveState& X, double dt, const GridField* velocity) {
  return X.samples() + rk4_increment(X, dt, velocity);
}

GridField exp_euler_samples(const CurveState& X, double dt, const GridField* velocity) {
  const GridField u = velocity ? *velocity : rhs(X);
  return exponential_euler_update(X.samples(), g_X(X, u), dt);
}

}  // namespace

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be positive");
  if (dt > t_end) throw InvalidArgument("dt must not exceed t_end");
  if (lambda_abort && !(*lambda_abort > 0.0)) throw InvalidArgument("lambda_abort must be positive");
  if (dealias.enabled) {
    if (!(dealias.cutoff_fraction > 0.0 && dealias.cutoff_fraction <= 1.0)) {
      throw InvalidArgument("dealias cutoff_fraction must lie in (0, 1]");
    }
    if (!(dealias.krasny_floor >= 0.0)) throw InvalidArgument("krasny_floor must be nonnegative");
  }
}

double phi1(double z) {
  if (std::abs(z) < 1e-4) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  return std::expm1(z) / z;
}

GridField exponential_euler_update(const GridField& x, const GridField& g, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  SpectralField xs = to_spectral(x);
  const SpectralField gs = to_spectral(g);
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double k = i == n / 2 ? static_cast<double>(n / 2) : std::abs(xs.wavenumber(i));
    const double z = -k * dt / 4.0;
    xs[i] = std::exp(z) * xs[i] + (dt * phi1(z)) * gs[i];
  }
  return from_spectral(xs);
}

GridField rhs(const CurveState& X) { return on_curve_velocity(X); }

GridField rk4_increment(const CurveState& X, double dt, const GridField* velocity) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  const GridField k1 = velocity ? *velocity : rhs(X);
  const GridField k2 = rhs(CurveState(X.samples() + (0.5 * dt) * k1));
  const GridField k3 = rhs(CurveState(X.samples() + (0.5 * dt) * k2));
  const GridField k4 = rhs(CurveState(X.samples() + dt * k3));
  return (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

CurveState step_rk4(const CurveState& X, double dt, const GridField* velocity) {
  return CurveState(rk4_samples(X, dt, velocity));
}

CurveState step_exp_euler(const CurveState& X, double dt, const GridField* velocity) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  return CurveState(exp_euler_samples(X, dt, velocity));
}

double energy_change(const CurveState& X, const GridField& increment) {
  const SpectralField xs = to_spectral(X.samples());
  const SpectralField ds = to_spectral(increment);
  const std::size_t n = xs.size();
  double cross = 0.0;
  double square = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = i == n / 2 ? static_cast<double>(n / 2) : std::abs(xs.wavenumber(i));
    cross += k * k * xs[i].dot(ds[i]).real();
    square += k * k * ds[i].squaredNorm();
  }
  return kTwoPi * (cross + 0.5 * square);
}

DiagnosticsRow diagnose(const CurveState& X, double t, const GridField& velocity) {
  DiagnosticsRow row;
  row.t = t;
  row.energy = elastic_energy(X);
  row.dissipation = dissipation_rate(X, velocity);
  row.lambda = well_stretched_constant(X);
  row.area = enclosed_area(X);
  row.radius = std::sqrt(row.area / kPi);
  const EquilibriumFit fit = closest_equilibrium(X);
  const GridField gap = X.samples() - fit.samples;
  row.dist_h1 = sobolev_seminorm(gap, 1.0);
  row.dist_h52 = sobolev_seminorm(gap, 2.5);
  row.theta_star = fit.theta_star;
  row.xstar = fit.x_star;
  return row;
}

DiagnosticsRow diagnose(const CurveState& X, double t) { return diagnose(X, t, rhs(X)); }

RunResult run(const CurveState& initial, const StepperConfig& cfg, const SnapshotSink& sink) {
  cfg.validate();
  RunResult result;
  const double lambda0 = well_stretched_constant(initial);
  result.lambda_threshold = cfg.lambda_abort.value_or(0.5 * lambda0);
  if (!(lambda0 > result.lambda_threshold)) {
    throw InvalidArgument("initial curve has lambda = " + std::to_string(lambda0) +
                          ", not above the abort threshold " +
                          std::to_string(result.lambda_threshold));
  }

  auto emit = [&](std::size_t step, double t, const CurveState& state) {
    Snapshot snap{step, t, state};
    if (sink) {
      sink(snap);
    } else {
      result.snapshots.push_back(std::move(snap));
    }
  };

  CurveState X = initial;
  GridField velocity = rhs(X);
  result.rows.push_back(diagnose(X, 0.0, velocity));
  if (cfg.snapshot_every > 0) emit(0, 0.0, X);

  const auto n_steps = static_cast<std::size_t>(std::max(1.0, std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  for (std::size_t step = 1; step <= n_steps; ++step) {
    const bool last = step == n_steps;
    const double t_prev = static_cast<double>(step - 1) * cfg.dt;
    const double t = last ? cfg.t_end : static_cast<double>(step) * cfg.dt;
    const double dt = t - t_prev;

    std::string failure;
    GridField next;
    try {
      next = cfg.scheme == Scheme::rk4 ? rk4_samples(X, dt, &velocity)
                                       : exp_euler_samples(X, dt, &velocity);
    } catch (const DegenerateCurve& e) {
      failure = e.what();
    } catch (const InvalidArgument& e) {
      // a non-finite stage state is rejected by the CurveState constructor
      result.abort = RunAbort{AbortReason::non_finite, step, t, e.what()};
      break;
    }
    if (!failure.empty()) {
      result.abort = RunAbort{AbortReason::lambda, step, t, "curve degenerated: " + failure};
      break;
    }
    if (cfg.dealias.enabled) {
      next = dealias(next, cfg.dealias.cutoff_fraction, cfg.dealias.krasny_floor);
    }
    if (!next.all_finite()) {
      result.abort = RunAbort{AbortReason::non_finite, step, t, "non-finite curve samples"};
      break;
    }

    X = CurveState(std::move(next));
    try {
      velocity = rhs(X);
      if (!velocity.all_finite()) {
        result.abort = RunAbort{AbortReason::non_finite, step, t, "non-finite velocity"};
        break;
      }
      result.rows.push_back(diagnose(X, t, velocity));
    } catch (const DegenerateCurve& e) {
      result.abort = RunAbort{AbortReason::lambda, step, t, std::string("curve degenerated: ") + e.what()};
      break;
    } catch (const OrientationError& e) {
      result.abort = RunAbort{AbortReason::lambda, step, t, e.what()};
      break;
    }

    if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) emit(step, t, X);

    const double lambda = result.rows.back().lambda;
    if (lambda < result.lambda_threshold) {
      result.abort = RunAbort{AbortReason::lambda, step, t,
                              "lambda = " + std::to_string(lambda) + " fell below " +
                                  std::to_string(result.lambda_threshold)};
      break;
    }
  }
  result.final_state = X;
  return result;
}

}  // namespace ibstring
