#include "ibstring/verify.hpp"

#include "ibstring/equilibrium.hpp"
#include "ibstring/errors.hpp"
#include "ibstring/io.hpp"
#include "ibstring/oracles.hpp"
#include "ibstring/stokeslet.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace ibstring {

namespace {

constexpr std::size_t kGrid = 256;

// eps (cos ks, sin ks): the slowly decaying branch of wavenumber k.
PerturbationMode slow_mode(int k, double eps) {
  return PerturbationMode{k, Vec2(eps, eps), Vec2(0.0, -kPi / 2.0)};
}

CurveState slow_mode_circle(std::size_t n, int k, double eps) {
  return make_perturbed_circle(n, 1.0, {slow_mode(k, eps)});
}

double angle_gap(double a, double b) {
  const double d = std::remainder(a - b, kTwoPi);
  return std::abs(d);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GridField random_field(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GridField f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = Vec2(u(rng), u(rng));
  const Vec2 m = f.mean();
  for (std::size_t j = 0; j < n; ++j) f[j] -= m;
  return f;
}

// Smooth random direction: Fourier modes 0..6 with random coefficients.
GridField random_smooth_field(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::array<double, 4>> coeffs(7);
  for (auto& c : coeffs) c = {u(rng), u(rng), u(rng), u(rng)};
  GridField f = GridField::sample(n, [&](double s) -> Vec2 {
    Vec2 v = Vec2::Zero();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const double ks = static_cast<double>(k) * s;
      v.x() += coeffs[k][0] * std::cos(ks) + coeffs[k][1] * std::sin(ks);
      v.y() += coeffs[k][2] * std::cos(ks) + coeffs[k][3] * std::sin(ks);
    }
    return v;
  });
  return (1.0 / f.max_norm()) * f;
}

double relative_l2(const GridField& a, const GridField& reference) {
  return sobolev_seminorm(a - reference, 0.0) / sobolev_seminorm(reference, 0.0);
}

struct LambdaRecord {
  double initial = 0.0;
  double minimum = 0.0;
};

LambdaRecord lambda_record(const RunResult& r) {
  LambdaRecord rec{r.rows.front().lambda, r.rows.front().lambda};
  for (const auto& row : r.rows) rec.minimum = std::min(rec.minimum, row.lambda);
  return rec;
}

// ---------------------------------------------------------------- runs

StepperConfig stepper(Scheme scheme, double dt, double t_end) {
  StepperConfig cfg;
  cfg.scheme = scheme;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.dealias = DealiasConfig::automatic(t_end);
  return cfg;
}

struct RunRecipe {
  std::function<CurveState()> initial;
  StepperConfig cfg;
};

const std::map<std::string, RunRecipe>& run_recipes() {
  static const std::map<std::string, RunRecipe> recipes = {
      {"circle_t1", {[] { return make_circle(kGrid, 1.0); }, stepper(Scheme::exp_euler, 1e-2, 1.0)}},
      {"mode2_rk4_fine",
       {[] { return slow_mode_circle(kGrid, 2, 1e-2); }, stepper(Scheme::rk4, 1e-3, 5.0)}},
      {"mode2_rk4_coarse",
       {[] { return slow_mode_circle(kGrid, 2, 1e-2); }, stepper(Scheme::rk4, 1e-2, 5.0)}},
      {"mode2_decay",
       {[] { return slow_mode_circle(kGrid, 2, 1e-3); }, stepper(Scheme::exp_euler, 1e-2, 8.0)}},
      {"mode3_decay",
       {[] { return slow_mode_circle(kGrid, 3, 1e-3); }, stepper(Scheme::exp_euler, 1e-2, 8.0)}},
      {"reparam_t20",
       {[] { return make_reparam_circle(kGrid, 1.0, 0.5); }, stepper(Scheme::exp_euler, 1e-2, 20.0)}},
  };
  return recipes;
}

// ---------------------------------------------------------------- invariants

CheckOutcome check_spectral_identities() {
  std::mt19937_64 rng(11);
  const GridField f = random_smooth_field(rng, kGrid);
  const GridField hh = hilbert_transform(hilbert_transform(f));
  GridField centered = f;
  const Vec2 m = f.mean();
  for (std::size_t j = 0; j < f.size(); ++j) centered[j] -= m;
  const double e_hh = (hh + centered).max_norm();
  const double e_fl = (fractional_laplacian_half(f) - hilbert_transform(derivative(f, 1))).max_norm();
  const double e_sg =
      (semigroup_apply(semigroup_apply(f, 0.3), 0.7) - semigroup_apply(f, 1.0)).max_norm();
  const bool ok = e_hh < 1e-12 && e_fl < 1e-12 && e_sg < 1e-12;
  return {ok, fmt::format("HH+I {:.2e}, |D|-HD {:.2e}, semigroup {:.2e}", e_hh, e_fl, e_sg)};
}

CheckOutcome check_singular_integral_oracles() {
  // A smooth non-polynomial test field with all Fourier modes present.
  auto field = [](double s) -> Vec2 {
    return Vec2(std::exp(std::cos(s)), std::sin(2.0 * s) / (2.0 + std::cos(s)));
  };
  const GridField f = GridField::sample(kGrid, field);
  const GridField fl = fractional_laplacian_half(f);
  const GridField hf = hilbert_transform(f);
  double fl_err = 0, fl_scale = 0, h_err = 0, h_scale = 0;
  for (std::size_t j = 0; j < kGrid; j += 16) {
    const Vec2 a = oracle::fractional_laplacian_half_pv(field, f.node(j));
    const Vec2 b = oracle::hilbert_pv(field, f.node(j));
    fl_err = std::max(fl_err, (a - fl[j]).norm());
    fl_scale = std::max(fl_scale, a.norm());
    h_err = std::max(h_err, (b - hf[j]).norm());
    h_scale = std::max(h_scale, b.norm());
  }
  const double r1 = fl_err / fl_scale;
  const double r2 = h_err / h_scale;
  return {r1 < 1e-6 && r2 < 1e-6,
          fmt::format("(-Delta)^1/2 rel err {:.2e}, Hilbert rel err {:.2e}", r1, r2)};
}

CheckOutcome check_curve_geometry() {
  const double lam = well_stretched_constant(make_circle(kGrid, 3.0, 0.4, Vec2(2.0, -1.0)));
  const double lam_err = std::abs(lam - 6.0 / kPi);
  auto shape = [](double s) -> Vec2 {
    const double r = 1.0 + 0.1 * std::cos(2.0 * s);
    return Vec2(r * std::cos(s), r * std::sin(s));
  };
  const double area = enclosed_area(CurveState(GridField::sample(kGrid, shape)));
  const double area_err = std::abs(area - oracle::polygon_area(shape));
  return {lam_err < 1e-10 && area_err < 1e-10,
          fmt::format("lambda err {:.2e}, area vs polygon oracle {:.2e}", lam_err, area_err)};
}

CheckOutcome check_velocity_symmetries() {
  std::mt19937_64 rng(5);
  const CurveState X = random_near_circle(rng, kGrid);
  const GridField u = on_curve_velocity(X);

  GridField shifted = X.samples();
  GridField rotated = X.samples();
  const double a = 0.83;
  Mat2 q;
  q << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  for (std::size_t j = 0; j < kGrid; ++j) {
    shifted[j] += Vec2(3.0, -7.0);
    rotated[j] = q * rotated[j];
  }
  const GridField us = on_curve_velocity(CurveState(shifted));
  const GridField ur = on_curve_velocity(CurveState(rotated));
  GridField qu = u;
  for (std::size_t j = 0; j < kGrid; ++j) qu[j] = q * u[j];
  const double e_t = (us - u).max_norm();
  const double e_r = (ur - qu).max_norm();
  const double circle = on_curve_velocity(make_circle(kGrid, 2.0, 1.1, Vec2(-1.0, 4.0))).max_norm();
  return {e_t < 1e-12 && e_r < 1e-12 && circle < 1e-10,
          fmt::format("translation {:.2e}, rotation {:.2e}, moved circle |u| {:.2e}", e_t, e_r,
                      circle)};
}

CheckOutcome check_cauchy_form() {
  // Symmetric truncation of the unsubtracted integral converges at first
  // order; halving h should roughly halve the gap.
  std::vector<double> gaps;
  for (std::size_t n : {128u, 256u, 512u}) {
    const CurveState X = slow_mode_circle(n, 2, 0.1);
    gaps.push_back((on_curve_velocity_cauchy(X) - on_curve_velocity(X)).max_norm());
  }
  const double r1 = gaps[0] / gaps[1];
  const double r2 = gaps[1] / gaps[2];
  const bool ok = r1 > 1.8 && r2 > 1.8 && gaps[2] < 1e-2;
  return {ok, fmt::format("gaps {:.2e} {:.2e} {:.2e}, ratios {:.2f} {:.2f}", gaps[0], gaps[1],
                          gaps[2], r1, r2)};
}

CheckOutcome check_flow_reconstruction() {
  const CurveState c = make_circle(kGrid, 1.0);
  const double u0 = off_curve_velocity(c, Vec2(0.0, 0.0)).norm();
  const double u5 = off_curve_velocity(c, Vec2(5.0, 5.0)).norm();
  const double p0 = pressure_at(c, Vec2(0.0, 0.0));
  const double pfar = pressure_at(c, Vec2(100.0, 0.0));
  const bool ok = u0 < 1e-12 && u5 < 1e-12 && std::abs(p0 - 1.0) < 1e-12 && std::abs(pfar) < 1e-3;
  return {ok, fmt::format("|u(0)| {:.2e}, |u(5,5)| {:.2e}, p(0)-1 {:.2e}, p(100,0) {:.2e}", u0,
                          u5, p0 - 1.0, pfar)};
}

CheckOutcome check_dissipation_sign() {
  std::mt19937_64 rng(17);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) worst = std::min(worst, dissipation_rate(random_near_circle(rng, kGrid)));
  worst = std::min(worst, dissipation_rate(make_reparam_circle(kGrid, 1.0, 0.3)));
  return {worst >= -1e-10, fmt::format("min dissipation over 11 curves {:.3e}", worst)};
}

CheckOutcome check_area_coarse() {
  const auto& r = standard_run("mode2_rk4_coarse").result;
  double drift = 0.0;
  for (const auto& row : r.rows) {
    drift = std::max(drift, std::abs(row.area - r.rows.front().area) / r.rows.front().area);
  }
  return {drift < 1e-6 && !r.abort, fmt::format("RK4 dt=1e-2 on [0,5]: max relative drift {:.2e}", drift)};
}

CheckOutcome check_energy_monotone() {
  const auto& r = standard_run("mode2_decay").result;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    worst = std::max(worst, r.rows[i].energy - r.rows[i - 1].energy);
  }
  return {worst <= 1e-14 && !r.abort,
          fmt::format("largest step-to-step energy increase {:.2e} over {} steps", worst,
                      r.rows.size() - 1)};
}

CheckOutcome check_fit_structure() {
  const CurveState c = make_circle(kGrid, 2.0, 0.7, Vec2(1.0, -1.0));
  const EquilibriumFit fit = closest_equilibrium(c);
  const double e_fixed = std::abs(fit.theta_star - 0.7) + (fit.x_star - Vec2(1.0, -1.0)).norm() +
                         std::abs(fit.radius - 2.0);
  const double dist = sobolev_seminorm(c.samples() - fit.samples, 0.0);

  const EquilibriumFit again = closest_equilibrium(CurveState(fit.samples));
  const double e_idem = angle_gap(again.theta_star, fit.theta_star) +
                        (again.x_star - fit.x_star).norm() + std::abs(again.radius - fit.radius);

  CurveState with_mode3 = make_perturbed_circle(kGrid, 1.0, {slow_mode(3, 0.05)});
  const EquilibriumFit f3 = closest_equilibrium(with_mode3);
  const double e_mode3 = angle_gap(f3.theta_star, 0.0) + f3.x_star.norm();

  const bool ok = e_fixed < 1e-12 && dist < 1e-12 && e_idem < 1e-12 && e_mode3 < 1e-12;
  return {ok, fmt::format("circle fit {:.1e}, distance {:.1e}, idempotence {:.1e}, mode-3 "
                          "invariance {:.1e}",
                          e_fixed, dist, e_idem, e_mode3)};
}

CheckOutcome check_linearized_structure() {
  std::mt19937_64 rng(23);
  double mean_worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    mean_worst = std::max(mean_worst, linearized_velocity(random_smooth_field(rng, kGrid)).mean().norm());
  }
  // Generators of translation, rotation and dilation of the unit circle.
  const GridField translate = GridField::sample(kGrid, [](double) -> Vec2 { return Vec2(0.3, -0.2); });
  const GridField rotate =
      GridField::sample(kGrid, [](double s) -> Vec2 { return Vec2(-std::sin(s), std::cos(s)); });
  const GridField dilate =
      GridField::sample(kGrid, [](double s) -> Vec2 { return Vec2(std::cos(s), std::sin(s)); });
  const double kernel = std::max({linearized_velocity(translate).max_norm(),
                                  linearized_velocity(rotate).max_norm(),
                                  linearized_velocity(dilate).max_norm()});
  const ModeBlock b2 = mode_block(2);
  const double e_spectrum = std::abs(b2.eig_minus + 0.75) + std::abs(b2.eig_plus + 0.25);
  std::ostringstream csv;
  write_spectrum_csv(csv, 4);
  const bool csv_ok = csv.str().find("\n2,-0.75,-0.25\n") != std::string::npos;
  const bool ok = mean_worst < 1e-13 && kernel < 1e-13 && e_spectrum == 0.0 && csv_ok;
  return {ok, fmt::format("mean {:.1e}, neutral modes {:.1e}, spectrum k=2 {}", mean_worst, kernel,
                          csv_ok ? "(-0.75, -0.25)" : "wrong")};
}

// ---------------------------------------------------------------- acceptance

CheckOutcome criterion_steadiness() {
  const double u = on_curve_velocity(make_circle(kGrid, 1.0)).max_norm();
  const auto& r = standard_run("circle_t1").result;
  const DiagnosticsRow& first = r.rows.front();
  double change = 0.0;
  for (const auto& row : r.rows) {
    const double d[] = {row.energy - first.energy,   row.dissipation - first.dissipation,
                        row.lambda - first.lambda,   row.radius - first.radius,
                        row.area - first.area,       row.dist_h1 - first.dist_h1,
                        row.dist_h52 - first.dist_h52, angle_gap(row.theta_star, first.theta_star),
                        (row.xstar - first.xstar).norm()};
    for (double v : d) change = std::max(change, std::abs(v));
  }
  const bool ok = u < 1e-10 && change < 1e-9 && !r.abort;
  return {ok, fmt::format("max|u| {:.2e} (< 1e-10), max diagnostic change over t in [0,1] {:.2e} "
                          "(< 1e-9)",
                          u, change)};
}

CheckOutcome criterion_energy_balance() {
  const CurveState X = slow_mode_circle(kGrid, 2, 1e-2);
  std::vector<double> err;
  for (double dt : {1e-3, 5e-4}) {
    const double de_dt = energy_change(X, rk4_increment(X, dt)) / dt;
    const double d_mid = dissipation_rate(step_rk4(X, 0.5 * dt));
    err.push_back(std::abs(de_dt + d_mid) / d_mid);
  }
  const double gain = err[0] / err[1];
  const bool ok = err[0] < 1e-3 && gain >= 4.0;
  return {ok, fmt::format("relative imbalance {:.3e} at dt=1e-3 (< 1e-3), {:.3e} at dt=5e-4, "
                          "improvement {:.6f}x (>= 4)",
                          err[0], err[1], gain)};
}

CheckOutcome criterion_area() {
  const auto& r = standard_run("mode2_rk4_fine").result;
  double drift = 0.0;
  for (const auto& row : r.rows) {
    drift = std::max(drift, std::abs(row.area - r.rows.front().area) / r.rows.front().area);
  }
  return {drift < 1e-6 && !r.abort,
          fmt::format("RK4 dt=1e-3 on [0,5]: max relative area drift {:.2e} (< 1e-6)", drift)};
}

CheckOutcome criterion_decay_rates() {
  const double r2 = measure_decay_rate(standard_run("mode2_decay").result.rows, DistanceColumn::h1, 2.0, 8.0);
  const double r3 = measure_decay_rate(standard_run("mode3_decay").result.rows, DistanceColumn::h1, 2.0, 8.0);
  const double p2 = -mode_block(2).eig_plus;
  const double p3 = -mode_block(3).eig_plus;
  const bool ok = r2 >= 0.225 && r2 <= 0.275 && r3 >= 0.45 && r3 <= 0.55;
  return {ok, fmt::format("mode 2 rate {:.5f} (predicted {:.2f}), mode 3 rate {:.5f} (predicted "
                          "{:.2f})",
                          r2, p2, r3, p3)};
}

CheckOutcome criterion_gamma1_algebra() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> pick(0, kGrid - 1);
  double worst = 0.0;
  for (int c = 0; c < 10; ++c) {
    const CurveState X = random_near_circle(rng, kGrid, 0.1);
    for (int p = 0; p < 1000; ++p) {
      std::size_t j = pick(rng), jp = pick(rng);
      while (jp == j) jp = pick(rng);
      worst = std::max(worst, (gamma1(X, j, jp) - gamma1_direct(X, j, jp)).norm());
    }
  }
  return {worst < 1e-10,
          fmt::format("max |closed form - definition| over 10 curves x 1000 pairs {:.2e} (< 1e-10)",
                      worst)};
}

CheckOutcome criterion_g_derivative() {
  std::mt19937_64 rng(202);
  std::vector<CurveState> curves = {make_circle(kGrid, 1.0), slow_mode_circle(kGrid, 2, 0.1),
                                    make_reparam_circle(kGrid, 1.0, 0.3),
                                    random_near_circle(rng, kGrid, 0.1)};
  double worst = 0.0;
  for (const auto& X : curves) {
    worst = std::max(worst, relative_l2(g_X_derivative_quadrature(X), derivative(g_X(X), 1)));
  }
  return {worst < 1e-6, fmt::format("max relative L2 discrepancy over {} curves {:.2e} (< 1e-6)",
                                    curves.size(), worst)};
}

CheckOutcome criterion_sandwich() {
  std::mt19937_64 rng(303);
  int violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const EnergySandwich s = h1_energy_equivalence(random_near_circle(rng, kGrid));
    if (!s.holds(1e-12)) ++violations;
    min_margin = std::min({min_margin, s.middle - s.lower, s.upper - s.middle});
  }
  return {violations == 0,
          fmt::format("{} violations in 100 members; smallest margin {:.3e}", violations, min_margin)};
}

CheckOutcome criterion_fit() {
  std::mt19937_64 rng(404);
  double worst_theta = 0.0;
  double worst_residual = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CurveState Y = random_near_circle(rng, kGrid);
    const EquilibriumFit fit = closest_equilibrium(Y);
    const double oracle_theta = oracle::grid_search_theta(Y.samples(), fit.x_star, fit.radius);
    worst_theta = std::max(worst_theta, angle_gap(fit.theta_star, oracle_theta));
    worst_residual = std::max(worst_residual, std::abs(first_order_residual(Y, fit)));
  }
  return {worst_theta < 1e-4 && worst_residual < 1e-10,
          fmt::format("max |theta - grid search| {:.2e} rad (< 1e-4), max first-order residual "
                      "{:.2e} (< 1e-10)",
                      worst_theta, worst_residual)};
}

CheckOutcome criterion_linearization() {
  std::mt19937_64 rng(505);
  const CurveState circle = make_circle(kGrid, 1.0);
  const std::vector<double> eps = {1e-2, 5e-3, 2.5e-3};
  double min_slope = std::numeric_limits<double>::infinity();
  for (int d = 0; d < 5; ++d) {
    const GridField D = random_smooth_field(rng, kGrid);
    const GridField lin = linearized_velocity(D);
    std::vector<double> lx, ly;
    for (double e : eps) {
      const GridField u = on_curve_velocity(CurveState(circle.samples() + e * D));
      lx.push_back(std::log(e));
      ly.push_back(std::log((u - e * lin).max_norm()));
    }
    min_slope = std::min(min_slope, least_squares_slope(lx, ly));
  }
  return {min_slope >= 1.9,
          fmt::format("smallest remainder slope over 5 directions {:.4f} (>= 1.9)", min_slope)};
}

CheckOutcome criterion_membrane_continuity() {
  const std::size_t n = 1024;
  const CurveState X = slow_mode_circle(n, 2, 0.1);
  const GridField u = on_curve_velocity(X);
  const std::size_t j0 = n / 7;
  const Vec2 tangent = X.first_derivative()[j0];
  const Vec2 normal = Vec2(tangent.y(), -tangent.x()).normalized();  // outward
  std::vector<double> gaps;
  for (double d : {1e-1, 1e-2, 1e-3}) {
    double gap = 0.0;
    for (double side : {1.0, -1.0}) {
      gap = std::max(gap, (off_curve_velocity(X, X[j0] + side * d * normal) - u[j0]).norm());
    }
    gaps.push_back(gap);
  }
  const bool ok = gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 1e-3;
  return {ok, fmt::format("gap at d = 1e-1, 1e-2, 1e-3: {:.2e}, {:.2e}, {:.2e} (monotone, last < "
                          "1e-3)",
                          gaps[0], gaps[1], gaps[2])};
}

CheckOutcome criterion_lambda_persistence() {
  std::string detail;
  bool ok = true;
  for (const auto& name : standard_run_names()) {
    const RunResult& r = standard_run(name).result;
    const LambdaRecord rec = lambda_record(r);
    const bool run_ok = !r.abort && rec.minimum >= 0.5 * rec.initial;
    ok = ok && run_ok;
    if (!detail.empty()) detail += "; ";
    detail += fmt::format("{} min/initial {:.4f}{}", name, rec.minimum / rec.initial,
                          r.abort ? " ABORTED" : "");
  }
  return {ok, detail};
}

CheckOutcome criterion_semigroup_decay() {
  std::mt19937_64 rng(606);
  int violations = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 20; ++i) {
    const GridField f = random_field(rng, kGrid);
    for (double t : {0.5, 1.0, 2.0}) {
      const GridField g = semigroup_apply(f, t);
      for (double l : {0.0, 1.0, 2.5}) {
        const double before = sobolev_seminorm(f, l);
        const double after = sobolev_seminorm(g, l);
        const double bound = std::exp(-t / 4.0) * before;
        if (after > bound + 1e-12 * before) ++violations;
        worst_ratio = std::max(worst_ratio, after / bound);
      }
    }
  }
  return {violations == 0, fmt::format("{} violations in 180 cases; largest norm / bound {:.6f}",
                                       violations, worst_ratio)};
}

}  // namespace

CurveState random_near_circle(std::mt19937_64& rng, std::size_t n, double max_amplitude) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const double radius = 0.5 + 1.5 * unit(rng);
  const double theta = kTwoPi * unit(rng);
  const Vec2 center(sym(rng), sym(rng));
  const double eps = max_amplitude * unit(rng);
  std::vector<PerturbationMode> modes;
  for (int k = 2; k <= 6; ++k) {
    modes.push_back(PerturbationMode{k, eps * radius * Vec2(sym(rng), sym(rng)),
                                     kTwoPi * Vec2(unit(rng), unit(rng))});
  }
  return CurveState(GridField::sample(n, [&](double s) -> Vec2 {
    Vec2 x = center + radius * Vec2(std::cos(s + theta), std::sin(s + theta));
    for (const auto& m : modes) {
      const double ks = m.k * s;
      x.x() += m.amplitude.x() * std::cos(ks + m.phase.x());
      x.y() += m.amplitude.y() * std::cos(ks + m.phase.y());
    }
    return x;
  }));
}

std::vector<std::string> standard_run_names() {
  std::vector<std::string> names;
  for (const auto& [name, recipe] : run_recipes()) names.push_back(name);
  return names;
}

const StandardRun& standard_run(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, StandardRun> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  const auto& recipes = run_recipes();
  const auto recipe = recipes.find(name);
  if (recipe == recipes.end()) throw InvalidArgument("unknown standard run '" + name + "'");
  StandardRun sr{name, run(recipe->second.initial(), recipe->second.cfg)};
  return cache.emplace(name, std::move(sr)).first->second;
}

std::vector<Check> invariant_checks() {
  return {
      {"I01", "spectral operator identities", check_spectral_identities},
      {"I02", "multipliers vs singular-integral quadrature", check_singular_integral_oracles},
      {"I03", "well-stretched constant and area", check_curve_geometry},
      {"I04", "velocity translation/rotation symmetry", check_velocity_symmetries},
      {"I05", "unsubtracted integral agrees at first order", check_cauchy_form},
      {"I06", "off-curve velocity and pressure for a circle", check_flow_reconstruction},
      {"I07", "dissipation is nonnegative", check_dissipation_sign},
      {"I08", "area conservation, coarse RK4", check_area_coarse},
      {"I09", "energy decreases step to step", check_energy_monotone},
      {"I10", "equilibrium fit structure", check_fit_structure},
      {"I11", "linearized operator structure", check_linearized_structure},
  };
}

std::vector<Check> acceptance_checks() {
  return {
      {"A01", "equilibrium steadiness", criterion_steadiness},
      {"A02", "energy-dissipation balance", criterion_energy_balance},
      {"A03", "area conservation", criterion_area},
      {"A04", "decay rate vs linearized spectrum", criterion_decay_rates},
      {"A05", "Gamma1 closed form vs definition", criterion_gamma1_algebra},
      {"A06", "g' spectral vs quadrature", criterion_g_derivative},
      {"A07", "H1 / energy sandwich", criterion_sandwich},
      {"A08", "closest-equilibrium fit", criterion_fit},
      {"A09", "linearization remainder is quadratic", criterion_linearization},
      {"A10", "velocity continuity across the membrane", criterion_membrane_continuity},
      {"A11", "lambda persistence", criterion_lambda_persistence},
      {"A12", "semigroup decay bound", criterion_semigroup_decay},
  };
}

std::vector<Check> verify_suite(VerifyLevel level) {
  std::vector<Check> checks = invariant_checks();
  if (level == VerifyLevel::full) {
    auto more = acceptance_checks();
    checks.insert(checks.end(), more.begin(), more.end());
  }
  return checks;
}

CheckReport run_check(const Check& check) {
  CheckReport report{check.id, check.title, false, "", 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    const CheckOutcome outcome = check.run();
    report.passed = outcome.passed;
    report.detail = outcome.detail;
  } catch (const std::exception& e) {
    report.passed = false;
    report.detail = std::string("exception: ") + e.what();
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool run_suite(const std::vector<Check>& checks, std::ostream& out) {
  bool all = true;
  for (const auto& check : checks) {
    const CheckReport r = run_check(check);
    all = all && r.passed;
    out << fmt::format("{} {} {}: {} [{:.1f} s]\n", r.passed ? "PASS" : "FAIL", r.id, r.title,
                       r.detail, r.seconds)
        << std::flush;
  }
  return all;
}

}  // namespace ibstring
