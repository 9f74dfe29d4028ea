#include "helpers.hpp"

#include "ibstring/dynamics.hpp"
#include "ibstring/equilibrium.hpp"
#include "ibstring/errors.hpp"
#include "ibstring/stokeslet.hpp"
#include "ibstring/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ibstring;
using ibstring::testing::max_diff;
using ibstring::testing::slow_mode_circle;

namespace {

CurveState mode2_curve(std::size_t n, double eps) {
  return make_perturbed_circle(n, 1.0, {{2, Vec2(eps, 0.0), Vec2::Zero()}});
}

StepperConfig plain(Scheme scheme, double dt, double t_end) {
  StepperConfig cfg;
  cfg.scheme = scheme;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.dealias.enabled = false;
  return cfg;
}

CurveState integrate(const CurveState& X0, Scheme scheme, double dt, double t_end) {
  const RunResult r = run(X0, plain(scheme, dt, t_end));
  REQUIRE_FALSE(r.abort);
  return r.final_state;
}

// Bounded over 200 steps: no abort, and the H^{5/2} distance has not grown.
bool stays_bounded(Scheme scheme, double dt) {
  const CurveState X0 = slow_mode_circle(128, 2, 1e-2);
  StepperConfig cfg = plain(scheme, dt, 200.0 * dt);
  const RunResult r = run(X0, cfg);
  if (r.abort) return false;
  const double last = r.rows.back().dist_h52;
  return std::isfinite(last) && last <= 10.0 * r.rows.front().dist_h52;
}

double largest_stable_dt(Scheme scheme) {
  double lo = 0.01, hi = 4.0;
  if (stays_bounded(scheme, hi)) return hi;
  for (int i = 0; i < 12; ++i) {
    const double mid = std::sqrt(lo * hi);
    (stays_bounded(scheme, mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("phi1") {
  CHECK(phi1(0.0) == 1.0);
  for (double z : {1e-5, -3e-5, 2e-4, -0.5, -2.0, -30.0})
    CHECK(phi1(z) == doctest::Approx(std::expm1(z) / z).epsilon(1e-14));
  CHECK(std::abs(phi1(std::nextafter(1e-4, 0.0)) - phi1(1e-4)) < 1e-14);
}

TEST_CASE("stepper configuration") {
  CHECK_FALSE(DealiasConfig::automatic(1.0).enabled);
  CHECK(DealiasConfig::automatic(1.5).enabled);

  StepperConfig cfg;
  CHECK(cfg.scheme == Scheme::exp_euler);
  CHECK(cfg.dt == 1e-2);
  CHECK_NOTHROW(cfg.validate());
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.dt = 20.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.dt = 0.1;
  cfg.lambda_abort = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.lambda_abort.reset();
  cfg.dealias.cutoff_fraction = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("right-hand side") {
  CHECK(rhs(make_circle(256, 1.0)).max_norm() < 1e-10);
  std::mt19937_64 rng(31);
  const CurveState Y = random_near_circle(rng, 128, 0.1);
  CHECK(max_diff(rhs(Y), -0.25 * fractional_laplacian_half(Y.samples()) + g_X(Y)) < 1e-14);
  CHECK(rhs(make_reparam_circle(128, 1.0, 0.3)).max_norm() > 1e-3);
}

TEST_CASE("RK4 step") {
  const CurveState X = make_circle(256, 1.0);
  for (double dt : {1e-3, 1e-2, 0.1}) CHECK(max_diff(step_rk4(X, dt).samples(), X.samples()) < 1e-10);

  const CurveState Y = mode2_curve(64, 0.1);
  const GridField u = rhs(Y);
  const double dt = 1e-6;
  GridField quotient = step_rk4(Y, dt).samples() - Y.samples();
  quotient *= 1.0 / dt;
  CHECK(max_diff(quotient, u) < 1e-5);
  CHECK(max_diff(rk4_increment(Y, 0.05, &u), rk4_increment(Y, 0.05)) == 0.0);
  CHECK_THROWS_AS(step_rk4(Y, 0.0), InvalidArgument);
}

TEST_CASE("RK4 is fourth order") {
  const CurveState X0 = mode2_curve(64, 0.1);
  const double T = 1.0;
  const CurveState ref = integrate(X0, Scheme::rk4, 0.0125, T);
  const double e1 = max_diff(integrate(X0, Scheme::rk4, 0.1, T).samples(), ref.samples());
  const double e2 = max_diff(integrate(X0, Scheme::rk4, 0.05, T).samples(), ref.samples());
  MESSAGE("RK4 error ratio " << e1 / e2);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("exponential Euler step") {
  // With g = 0 the update is exactly the semigroup.
  std::mt19937_64 rng(32);
  GridField x = ibstring::testing::random_smooth_field(rng, 64);
  const Vec2 m = x.mean();
  for (std::size_t j = 0; j < x.size(); ++j) x[j] -= m;
  CHECK(max_diff(exponential_euler_update(x, GridField(64), 0.3), semigroup_apply(x, 0.3)) < 1e-15);

  const CurveState X = make_circle(256, 1.0);
  for (double dt : {1e-2, 0.1, 1.0}) CHECK(max_diff(step_exp_euler(X, dt).samples(), X.samples()) < 1e-10);
  CHECK_THROWS_AS(step_exp_euler(X, -1.0), InvalidArgument);
}

TEST_CASE("exponential Euler converges at first order and agrees with RK4") {
  const CurveState X0 = mode2_curve(64, 0.1);
  const double T = 1.0;
  const CurveState ref = integrate(X0, Scheme::rk4, 0.0125, T);
  const CurveState ee1 = integrate(X0, Scheme::exp_euler, 0.02, T);
  const CurveState ee2 = integrate(X0, Scheme::exp_euler, 0.01, T);
  const double e1 = max_diff(ee1.samples(), ref.samples());
  const double e2 = max_diff(ee2.samples(), ref.samples());
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));

  const CurveState rk = integrate(X0, Scheme::rk4, 0.01, T);
  CHECK(max_diff(rk.samples(), ee2.samples()) <= 1.1 * e2);
}

TEST_CASE("stability: exponential Euler tolerates larger steps than RK4") {
  CHECK(stays_bounded(Scheme::rk4, 0.05));
  CHECK(stays_bounded(Scheme::exp_euler, 0.05));
  const double rk4_max = largest_stable_dt(Scheme::rk4);
  const double ee_max = largest_stable_dt(Scheme::exp_euler);
  MESSAGE("largest stable dt at N = 128: rk4 " << rk4_max << ", exp_euler " << ee_max);
  CHECK(ee_max > rk4_max);
}

TEST_CASE("energy change and diagnostics") {
  const CurveState Y = mode2_curve(128, 0.1);
  const GridField inc = rk4_increment(Y, 0.05);
  const double direct = elastic_energy(CurveState(Y.samples() + inc)) - elastic_energy(Y);
  CHECK(energy_change(Y, inc) == doctest::Approx(direct).epsilon(1e-10));

  const CurveState X = make_circle(128, 2.0, 0.4, Vec2(1.0, 1.0));
  const DiagnosticsRow row = diagnose(X, 0.5);
  CHECK(row.t == 0.5);
  CHECK(row.energy == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(std::abs(row.dissipation) < 1e-10);
  CHECK(row.lambda == doctest::Approx(4.0 / kPi).epsilon(1e-12));
  CHECK(row.radius == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(row.area == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(row.dist_h1 < 1e-12);
  CHECK(row.theta_star == doctest::Approx(0.4).epsilon(1e-12));
  CHECK((row.xstar - Vec2(1.0, 1.0)).norm() < 1e-14);
}

TEST_CASE("run: circle stays put") {
  const double R = 1.5;
  const RunResult r = run(make_circle(128, R), plain(Scheme::exp_euler, 1e-2, 1.0));
  CHECK_FALSE(r.abort);
  REQUIRE(r.rows.size() == 101);
  for (const auto& row : r.rows) {
    CHECK(row.energy == doctest::Approx(kPi * R * R).epsilon(1e-12));
    CHECK(std::abs(row.dissipation) < 1e-10);
    CHECK(row.lambda == doctest::Approx(2.0 * R / kPi).epsilon(1e-10));
  }
}

TEST_CASE("run: time grid, snapshots and sink") {
  const CurveState X0 = mode2_curve(64, 0.05);
  StepperConfig cfg = plain(Scheme::rk4, 0.1, 0.25);
  RunResult r = run(X0, cfg);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[1].t == doctest::Approx(0.1));
  CHECK(r.rows.back().t == 0.25);
  CHECK(r.snapshots.empty());

  cfg = plain(Scheme::exp_euler, 0.01, 0.5);
  cfg.snapshot_every = 10;
  r = run(X0, cfg);
  REQUIRE(r.snapshots.size() == 6);
  for (std::size_t i = 0; i < r.snapshots.size(); ++i) CHECK(r.snapshots[i].step == 10 * i);
  CHECK(max_diff(r.snapshots.front().state.samples(), X0.samples()) == 0.0);
  CHECK(max_diff(r.snapshots.back().state.samples(), r.final_state.samples()) == 0.0);

  std::vector<std::size_t> seen;
  r = run(X0, cfg, [&](const Snapshot& s) { seen.push_back(s.step); });
  CHECK(r.snapshots.empty());
  CHECK(seen == std::vector<std::size_t>{0, 10, 20, 30, 40, 50});

  // Runs are deterministic.
  const RunResult again = run(X0, cfg);
  CHECK(max_diff(again.final_state.samples(), r.final_state.samples()) == 0.0);
}

TEST_CASE("run: lambda threshold") {
  StepperConfig cfg = plain(Scheme::exp_euler, 0.01, 1.0);
  cfg.lambda_abort = 1.0;  // above 2/pi
  CHECK_THROWS_AS(run(make_circle(64, 1.0), cfg), InvalidArgument);

  // The fast mode-2 branch lowers lambda from 0.63662.
  const CurveState fast = make_perturbed_circle(128, 1.0, {{2, Vec2(0.1, 0.1), Vec2(0.0, kPi / 2.0)}});
  cfg.lambda_abort = 0.6363;
  const RunResult r = run(fast, cfg);
  REQUIRE(r.abort);
  CHECK(r.abort->reason == AbortReason::lambda);
  CHECK(r.lambda_threshold == 0.6363);
  CHECK(r.rows.back().lambda < 0.6363);

  const RunResult ok = run(fast, plain(Scheme::exp_euler, 0.01, 1.0));
  CHECK_FALSE(ok.abort);
  CHECK(ok.lambda_threshold == doctest::Approx(0.5 * well_stretched_constant(fast)));

  // A wildly unstable step collapses the curve inside the RK4 stages.
  const RunResult blown = run(slow_mode_circle(256, 2, 1e-2), plain(Scheme::rk4, 10.0, 100.0));
  REQUIRE(blown.abort);
  CHECK(blown.abort->reason == AbortReason::lambda);
  CHECK(blown.abort->step < 10);
}

TEST_CASE("run: energy decreases and area is conserved") {
  const RunResult& decay = standard_run("mode2_decay").result;
  for (std::size_t i = 1; i < decay.rows.size(); ++i) CHECK(decay.rows[i].energy <= decay.rows[i - 1].energy + 1e-14);

  std::mt19937_64 rng(33);
  const CurveState X0 = random_near_circle(rng, 256, 0.05);
  const RunResult r = run(X0, plain(Scheme::rk4, 1e-2, 5.0));
  REQUIRE_FALSE(r.abort);
  const double a0 = r.rows.front().area;
  double drift = 0.0;
  double lambda_min = r.rows.front().lambda;
  for (const auto& row : r.rows) {
    drift = std::max(drift, std::abs(row.area - a0) / a0);
    lambda_min = std::min(lambda_min, row.lambda);
  }
  CHECK(drift < 1e-6);
  CHECK(lambda_min >= 0.5 * r.rows.front().lambda);
}

TEST_CASE("energy balance is second order for RK4") {
  const CurveState X0 = mode2_curve(64, 0.1);
  auto imbalance = [&](double dt) {
    const GridField inc = rk4_increment(X0, dt);
    const CurveState half(X0.samples() + rk4_increment(X0, 0.5 * dt));
    return std::abs(energy_change(X0, inc) / dt + dissipation_rate(half));
  };
  const double i1 = imbalance(1e-2);
  const double i2 = imbalance(5e-3);
  CHECK(i1 / i2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("reparameterized circle relaxes at the slow linear rate") {
  const RunResult& r = standard_run("reparam_t20").result;
  REQUIRE_FALSE(r.abort);
  const double rate = measure_decay_rate(r.rows, DistanceColumn::h1, 10.0, 20.0);
  MESSAGE("reparameterized circle: rate " << rate << ", dist ratio "
                                          << r.rows.back().dist_h1 / r.rows.front().dist_h1);
  CHECK(rate == doctest::Approx(0.25).epsilon(0.1));
  CHECK(r.rows.back().dist_h1 < 1e-2 * r.rows.front().dist_h1);
}
