#include "helpers.hpp"

#include "ibstring/errors.hpp"
#include "ibstring/stokeslet.hpp"
#include "ibstring/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

using namespace ibstring;
using ibstring::testing::max_diff;
using ibstring::testing::slow_mode_circle;

namespace {

constexpr double kInv4Pi = 1.0 / (4.0 * kPi);

CurveState mode2_curve(std::size_t n, double eps) {
  return make_perturbed_circle(n, 1.0, {{2, Vec2(eps, 0.0), Vec2::Zero()}});
}

}  // namespace

TEST_CASE("Stokeslet kernel values and symmetry") {
  const Mat2 g1 = stokeslet_G(Vec2(1.0, 0.0));
  CHECK(g1(0, 0) == doctest::Approx(kInv4Pi));
  CHECK(std::abs(g1(0, 1)) < 1e-16);
  CHECK(std::abs(g1(1, 1)) < 1e-16);

  const Mat2 ge = stokeslet_G(Vec2(0.0, std::exp(1.0)));
  CHECK(ge(0, 0) == doctest::Approx(-kInv4Pi));
  CHECK(ge(1, 1) == doctest::Approx(0.0).epsilon(1e-15));

  const Vec2 x(0.3, -1.7);
  CHECK((stokeslet_G(x) - stokeslet_G(-x)).norm() < 1e-16);
  CHECK((stokeslet_G(x) - stokeslet_G(x).transpose()).norm() < 1e-16);
  // Eigenvalues: x is an eigenvector with (1 - ln|x|)/4pi, its normal with -ln|x|/4pi.
  const double r = x.norm();
  CHECK((stokeslet_G(x) * x - (1.0 - std::log(r)) * kInv4Pi * x).norm() < 1e-15);
  const Vec2 nrm(-x.y(), x.x());
  CHECK((stokeslet_G(x) * nrm + std::log(r) * kInv4Pi * nrm).norm() < 1e-15);

  CHECK_THROWS_AS(stokeslet_G(Vec2::Zero()), InvalidArgument);
}

TEST_CASE("pressure kernel values and oddness") {
  CHECK((pressure_kernel_Q(Vec2(1.0, 0.0)) - Vec2(1.0 / kTwoPi, 0.0)).norm() < 1e-16);
  CHECK((pressure_kernel_Q(Vec2(0.0, 2.0)) - Vec2(0.0, 1.0 / (4.0 * kPi))).norm() < 1e-16);
  const Vec2 x(-0.4, 2.2);
  CHECK((pressure_kernel_Q(x) + pressure_kernel_Q(-x)).norm() < 1e-16);
  CHECK_THROWS_AS(pressure_kernel_Q(Vec2::Zero()), InvalidArgument);
}

TEST_CASE("regularized integrand on the diagonal and nearby") {
  const CurveState X = make_circle(64, 1.0);
  CHECK((gamma0(X, 0, 0) - Vec2(-kInv4Pi, 0.0)).norm() < 1e-14);

  // First-order continuity: the gap to the neighbouring sample halves with h.
  double previous = 0.0;
  for (std::size_t n : {64u, 128u, 256u}) {
    const CurveState Y = mode2_curve(n, 0.1);
    const double gap = (gamma0(Y, 5, 6) - gamma0(Y, 5, 5)).norm();
    if (previous > 0.0) CHECK(previous / gap == doctest::Approx(2.0).epsilon(0.1));
    previous = gap;
  }

  GridField g = X.samples();
  g[7] = g[3];
  CHECK_THROWS_AS(gamma0(CurveState(g), 3, 7), DegenerateCurve);
}

TEST_CASE("circles are stationary") {
  CHECK(on_curve_velocity(make_circle(256, 1.0)).max_norm() < 1e-12);
  CHECK(on_curve_velocity(make_circle(128, 2.5, 0.9, Vec2(4.0, -3.0))).max_norm() < 1e-11);
  const CurveState X = make_circle(128, 1.0);
  for (const Vec2& p : {Vec2(0.0, 0.0), Vec2(0.3, -0.2), Vec2(5.0, 5.0), Vec2(-1.5, 0.1)})
    CHECK(off_curve_velocity(X, p).norm() < 1e-12);
}

TEST_CASE("tangential flow of a reparameterized circle") {
  const CurveState Y = make_reparam_circle(256, 1.0, 0.3);
  const GridField u = on_curve_velocity(Y);
  double tangential = 0.0;
  for (std::size_t j = 0; j < Y.size(); ++j)
    tangential = std::max(tangential, std::abs(u[j].dot(Y.first_derivative()[j].normalized())));
  CHECK(tangential > 1e-3);

  // The construction is symmetric about the x-axis, which kills the mean
  // y-velocity only. The x-mean is odd in beta and is confirmed by the
  // punctured sum on a fine grid.
  const Vec2 mean = u.mean();
  CHECK(std::abs(mean.y()) < 1e-8);
  CHECK(std::abs(mean.x()) > 1e-4);
  CHECK(on_curve_velocity(make_reparam_circle(256, 1.0, -0.3)).mean().x() ==
        doctest::Approx(-mean.x()).epsilon(1e-10));
  const Vec2 fine = on_curve_velocity_cauchy(make_reparam_circle(4096, 1.0, 0.3)).mean();
  CHECK(std::abs(fine.x() - mean.x()) < 0.05 * std::abs(mean.x()));
}

TEST_CASE("velocity is equivariant under rigid motions") {
  std::mt19937_64 rng(4);
  const CurveState Y = random_near_circle(rng, 128, 0.1);
  const double a = 0.8;
  Mat2 q;
  q << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  GridField moved(Y.size());
  for (std::size_t j = 0; j < Y.size(); ++j) moved[j] = q * Y[j] + Vec2(2.0, 1.0);
  const GridField u = on_curve_velocity(Y);
  const GridField v = on_curve_velocity(CurveState(moved));
  for (std::size_t j = 0; j < Y.size(); ++j) CHECK((v[j] - q * u[j]).norm() < 1e-12);
}

TEST_CASE("punctured sum converges at first order") {
  double previous = 0.0;
  for (std::size_t n : {64u, 128u, 256u}) {
    const CurveState Y = mode2_curve(n, 0.1);
    const double gap = max_diff(on_curve_velocity_cauchy(Y), on_curve_velocity(Y));
    if (previous > 0.0) CHECK(previous / gap == doctest::Approx(2.0).epsilon(0.1));
    previous = gap;
  }
}

TEST_CASE("off-curve velocity") {
  const CurveState Y = mode2_curve(256, 0.1);
  CHECK_THROWS_AS(off_curve_velocity(Y, Y[10]), InvalidArgument);
  CHECK(nearest_sample(Y, Y[10] + Vec2(1e-6, 0.0)) == 10);

  // Zero net force: the far field decays like 1/r.
  const double ratio = off_curve_velocity(Y, Vec2(200.0, 37.0)).norm() /
                       off_curve_velocity(Y, Vec2(100.0, 18.5)).norm();
  CHECK(ratio == doctest::Approx(0.5).epsilon(0.02));

  // The velocity is continuous across the curve: compare a point just inside
  // and just outside against the on-curve value.
  const CurveState Z = mode2_curve(1024, 0.1);
  const std::size_t j0 = 1024 / 7;
  const Vec2 t = Z.first_derivative()[j0].normalized();
  const Vec2 nrm(t.y(), -t.x());
  const Vec2 on = on_curve_velocity(Z)[j0];
  for (double delta : {0.02, -0.02}) {
    const Vec2 off = off_curve_velocity(Z, Z[j0] + delta * nrm);
    CHECK((off - on).norm() < 0.1);
  }
}

TEST_CASE("pressure of a circle is piecewise constant") {
  const CurveState X = make_circle(256, 1.0);
  CHECK(pressure_at(X, Vec2(0.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(pressure_at(X, Vec2(0.5, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pressure_at(X, Vec2(0.0, 0.5)) == doctest::Approx(pressure_at(X, Vec2(0.5, 0.0))).epsilon(1e-12));
  CHECK(std::abs(pressure_at(X, Vec2(3.0, 0.0))) < 1e-12);
  CHECK(std::abs(pressure_at(X, Vec2(3.0, 0.0)) - pressure_at(X, Vec2(0.0, 3.0))) < 1e-13);
  CHECK(std::abs(pressure_at(X, Vec2(100.0, 0.0))) < 1e-3);
  CHECK_THROWS_AS(pressure_at(X, X[5]), InvalidArgument);

  const FlowSample fs = sample_flow(X, Vec2(0.2, 0.1));
  CHECK(fs.location == Vec2(0.2, 0.1));
  CHECK(fs.p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dissipation") {
  CHECK(std::abs(dissipation_rate(make_circle(128, 1.0))) < 1e-12);

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) CHECK(dissipation_rate(random_near_circle(rng, 64, 0.1)) >= -1e-12);

  // D = -dE/dt: compare with a centred difference of the energy along u.
  const CurveState Y = mode2_curve(128, 0.05);
  const GridField u = on_curve_velocity(Y);
  const double delta = 1e-5;
  const double rate = (elastic_energy(CurveState(Y.samples() + delta * u)) -
                       elastic_energy(CurveState(Y.samples() - delta * u))) / (2.0 * delta);
  CHECK(dissipation_rate(Y, u) == doctest::Approx(-rate).epsilon(1e-6));

  // Quadratic in the perturbation amplitude.
  const double d1 = dissipation_rate(slow_mode_circle(128, 3, 2e-3));
  const double d2 = dissipation_rate(slow_mode_circle(128, 3, 1e-3));
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("nonlinear remainder") {
  const std::size_t n = 128;
  for (double R : {1.0, 2.0}) {
    const CurveState X = make_circle(n, R);
    GridField expected = X.samples();
    expected *= 0.25;
    CHECK(max_diff(g_X(X), expected) < 1e-11);
  }
  std::mt19937_64 rng(13);
  const CurveState Y = random_near_circle(rng, n, 0.1);
  const GridField u = on_curve_velocity(Y);
  CHECK(max_diff(-0.25 * fractional_laplacian_half(Y.samples()) + g_X(Y, u), u) < 1e-14);
}

TEST_CASE("near-diagonal factor") {
  CHECK(near_diagonal_factor(0.0) == 0.0);
  const double below = std::nextafter(1e-2, 0.0);
  CHECK(std::abs(near_diagonal_factor(below) - near_diagonal_factor(1e-2)) < 1e-12);
  CHECK(near_diagonal_factor(-0.5) == doctest::Approx(-near_diagonal_factor(0.5)));
  const double tau = 1.0;
  const double s = std::sin(0.5);
  CHECK(near_diagonal_factor(tau) == doctest::Approx((1.0 - 4.0 * s * s) / (4.0 * s * s)).epsilon(1e-14));
}

TEST_CASE("derivative integrand: closed form against direct evaluation") {
  std::mt19937_64 rng(14);
  const CurveState Y = random_near_circle(rng, 64, 0.1);
  CHECK(gamma1(Y, 4, 4) == Vec2::Zero());
  CHECK_THROWS_AS(gamma1_direct(Y, 4, 4), InvalidArgument);
  double worst = 0.0;
  for (std::size_t j = 0; j < Y.size(); j += 3)
    for (std::size_t jp = 0; jp < Y.size(); ++jp)
      if (j != jp) worst = std::max(worst, (gamma1(Y, j, jp) - gamma1_direct(Y, j, jp)).norm());
  CHECK(worst < 1e-10);

  const CurveState X = make_circle(64, 1.0);
  CHECK((gamma1(X, 0, 32) - gamma1_direct(X, 0, 32)).norm() < 1e-12);
}

TEST_CASE("quadrature for the derivative of the remainder") {
  CHECK(g_X_derivative_quadrature(make_circle(128, 1.0)).max_norm() ==
        doctest::Approx(0.25).epsilon(1e-8));
  const CurveState Y = mode2_curve(256, 0.1);
  CHECK(max_diff(g_X_derivative_quadrature(Y), derivative(g_X(Y), 1)) < 1e-8);
}

TEST_CASE("thread count does not change results") {
  std::mt19937_64 rng(15);
  const CurveState Y = random_near_circle(rng, 128, 0.1);
  ::setenv("IBSTRING_THREADS", "1", 1);
  const GridField serial = on_curve_velocity(Y);
  ::setenv("IBSTRING_THREADS", "4", 1);
  const GridField threaded = on_curve_velocity(Y);
  ::unsetenv("IBSTRING_THREADS");
  for (std::size_t j = 0; j < Y.size(); ++j) CHECK(serial[j] == threaded[j]);
}
