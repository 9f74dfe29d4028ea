#include "helpers.hpp"

#include "ibstring/curve.hpp"
#include "ibstring/errors.hpp"
#include "ibstring/oracles.hpp"
#include "ibstring/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace ibstring;
using ibstring::testing::max_diff;

namespace {

CurveState transformed(const CurveState& X, double angle, const Vec2& shift) {
  Mat2 q;
  q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  GridField y(X.size());
  for (std::size_t j = 0; j < X.size(); ++j) y[j] = q * X[j] + shift;
  return CurveState(y);
}

// Brute-force lambda over all pairs, written independently of the library.
double brute_lambda(const CurveState& X) {
  const std::size_t n = X.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double ds = kTwoPi * static_cast<double>(b - a) / static_cast<double>(n);
      const double d = std::min(ds, kTwoPi - ds);
      best = std::min(best, (X[a] - X[b]).norm() / d);
    }
  return best;
}

}  // namespace

TEST_CASE("circle samples and derivatives") {
  const CurveState X = make_circle(64, 1.0);
  CHECK((X[0] - Vec2(1.0, 0.0)).norm() < 1e-15);
  CHECK((X[16] - Vec2(0.0, 1.0)).norm() < 1e-15);
  for (std::size_t j = 0; j < X.size(); ++j) {
    const double s = X.node(j);
    CHECK((X.first_derivative()[j] - Vec2(-std::sin(s), std::cos(s))).norm() < 1e-13);
    CHECK((X.second_derivative()[j] + X[j]).norm() < 1e-12);
  }
  const CurveState Y = make_circle(32, 2.0, 0.5, Vec2(1.0, -1.0));
  CHECK((Y[0] - Vec2(1.0 + 2.0 * std::cos(0.5), -1.0 + 2.0 * std::sin(0.5))).norm() < 1e-14);
}

TEST_CASE("non-finite samples are rejected") {
  GridField g = make_circle(16, 1.0).samples();
  g[3].x() = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(CurveState{g}, InvalidArgument);
}

TEST_CASE("torus offset lies in [-pi, pi)") {
  CHECK(torus_offset(0, 0, 16) == 0.0);
  CHECK(torus_offset(0, 4, 16) == doctest::Approx(kPi / 2));
  CHECK(torus_offset(4, 0, 16) == doctest::Approx(-kPi / 2));
  CHECK(torus_offset(0, 8, 16) == doctest::Approx(-kPi));
  CHECK(torus_offset(1, 15, 16) == doctest::Approx(-kPi / 4));
}

TEST_CASE("difference quotients of the unit circle") {
  const std::size_t n = 64;
  const CurveState X = make_circle(n, 1.0);

  const DiffQuotients same = diff_quotients(X, 0, 0);
  CHECK((same.L - Vec2(0.0, 1.0)).norm() < 1e-13);
  CHECK((same.M - Vec2(-1.0, 0.0)).norm() < 1e-12);
  CHECK((same.N - Vec2(-0.5, 0.0)).norm() < 1e-12);

  const DiffQuotients quarter = diff_quotients(X, 0, n / 4);
  CHECK((quarter.L - Vec2(-2.0 / kPi, 2.0 / kPi)).norm() < 1e-13);

  // Definitions off the diagonal.
  std::mt19937_64 rng(1);
  const CurveState Y = random_near_circle(rng, n, 0.1);
  for (auto [j, jp] : {std::pair<std::size_t, std::size_t>{3, 10}, {50, 2}, {7, 39}}) {
    const DiffQuotients q = diff_quotients(Y, j, jp);
    const double tau = torus_offset(j, jp, n);
    CHECK(q.tau == tau);
    CHECK((q.L - (Y[jp] - Y[j]) / tau).norm() < 1e-12);
    CHECK((q.M - (Y.first_derivative()[jp] - Y.first_derivative()[j]) / tau).norm() < 1e-12);
    CHECK((q.N - (q.L - Y.first_derivative()[j]) / tau).norm() < 1e-12);
  }
}

TEST_CASE("well-stretched constant") {
  CHECK(well_stretched_constant(make_circle(128, 1.0)) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
  CHECK(well_stretched_constant(make_circle(128, 3.0)) == doctest::Approx(6.0 / kPi).epsilon(1e-12));

  // A peanut whose waist nearly closes: the two lobes come within 2e-3.
  const double waist = 1e-3;
  const CurveState pinched(GridField::sample(256, [&](double s) -> Vec2 {
    return Vec2(std::cos(s), std::sin(s) * (waist + std::cos(s) * std::cos(s)));
  }));
  CHECK(well_stretched_constant(pinched) < 1e-3);
  CHECK_FALSE(is_degenerate(well_stretched_constant(pinched)));
  CHECK(is_degenerate(0.0));

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 4; ++trial) {
    const CurveState Y = random_near_circle(rng, 64, 0.1);
    const double lambda = well_stretched_constant(Y);
    CHECK(lambda == doctest::Approx(brute_lambda(Y)).epsilon(1e-14));
    CHECK(well_stretched_constant(transformed(Y, 0.7, Vec2(3.0, -2.0))) ==
          doctest::Approx(lambda).epsilon(1e-12));
  }
}

TEST_CASE("enclosed area, radius and orientation") {
  const CurveState X = make_circle(128, 2.0);
  CHECK(enclosed_area(X) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(effective_radius(X) == doctest::Approx(2.0).epsilon(1e-13));

  const CurveState reversed(GridField::sample(128, [](double s) -> Vec2 { return Vec2(std::cos(s), -std::sin(s)); }));
  CHECK_THROWS_AS(enclosed_area(reversed), OrientationError);
  CHECK_THROWS_AS(effective_radius(reversed), OrientationError);

  // Perturbed curve against a dense polygon.
  auto f = [](double s) -> Vec2 {
    const double r = 1.0 + 0.1 * std::cos(3.0 * s) + 0.05 * std::sin(5.0 * s);
    return Vec2(r * std::cos(s), r * std::sin(s));
  };
  const CurveState P(GridField::sample(128, f));
  CHECK(enclosed_area(P) == doctest::Approx(oracle::polygon_area(f)).epsilon(1e-10));

  // Rigid motions keep the area; scaling multiplies it by the square.
  CHECK(enclosed_area(transformed(P, 1.3, Vec2(5.0, 7.0))) == doctest::Approx(enclosed_area(P)).epsilon(1e-13));
  GridField scaled = P.samples();
  scaled *= 3.0;
  CHECK(enclosed_area(CurveState(scaled)) == doctest::Approx(9.0 * enclosed_area(P)).epsilon(1e-13));
}

TEST_CASE("elastic energy") {
  CHECK(elastic_energy(make_circle(64, 1.0)) == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(elastic_energy(make_circle(64, 2.5)) == doctest::Approx(kPi * 6.25).epsilon(1e-13));

  // Isoperimetric-type bound: energy is at least that of the circle of equal area.
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const CurveState Y = random_near_circle(rng, 64, 0.1);
    const double r = effective_radius(Y);
    CHECK(elastic_energy(Y) >= kPi * r * r * (1.0 - 1e-13));
  }
}

TEST_CASE("perturbed circle constructor") {
  const double eps = 0.01;
  const CurveState Y = ibstring::testing::slow_mode_circle(128, 2, eps);
  const CurveState X = make_circle(128, 1.0);
  const GridField d = Y.samples() - X.samples();
  // eps (cos 2s, sin 2s) has H^1 seminorm 2 eps sqrt(2 pi).
  CHECK(sobolev_seminorm(d, 1.0) == doctest::Approx(2.0 * eps * std::sqrt(kTwoPi)).epsilon(1e-12));
  CHECK((d[0] - Vec2(eps, 0.0)).norm() < 1e-15);

  const CurveState none = make_perturbed_circle(32, 1.5, {});
  CHECK(max_diff(none.samples(), make_circle(32, 1.5).samples()) < 1e-15);
}

TEST_CASE("reparameterized circle") {
  const CurveState Y = make_reparam_circle(128, 2.0, 0.5);
  for (std::size_t j = 0; j < Y.size(); ++j) CHECK(Y[j].norm() == doctest::Approx(2.0).epsilon(1e-14));
  // Same image, different parameterization.
  CHECK(max_diff(Y.samples(), make_circle(128, 2.0).samples()) > 0.1);
  CHECK(enclosed_area(Y) == doctest::Approx(4.0 * kPi).epsilon(1e-10));
  CHECK(max_diff(make_reparam_circle(32, 1.0, 0.0).samples(), make_circle(32, 1.0).samples()) < 1e-15);
  CHECK_THROWS_AS(make_reparam_circle(64, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_reparam_circle(64, 1.0, -1.2), InvalidArgument);
}
