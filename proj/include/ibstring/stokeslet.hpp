#pragma once

// Boundary-integral evaluations for a closed elastic string in 2-D Stokes flow
// with unit viscosity and Hookean force density X''.
//
// Every quadrature is the periodic trapezoid rule on the sample grid. Loops
// over target indices run in parallel; the summation order for each target
// is fixed, so results do not depend on the thread count.

#include "ibstring/curve.hpp"
#include "ibstring/spectral.hpp"

#include <cstddef>

namespace ibstring {

/// Velocity Green's function (1/4pi)(-ln|x| I + x x^T / |x|^2). Rejects x = 0.
Mat2 stokeslet_G(const Vec2& x);

/// Pressure Green's function x / (2 pi |x|^2). Rejects x = 0.
Vec2 pressure_kernel_Q(const Vec2& x);

/// Regularized on-curve integrand. For j != j' this is
///   (1/4pi) [ (L.b)/|L|^2 M - (L.M)/|L|^2 b - (b.M)/|L|^2 L + 2 (L.b)(L.M)/|L|^4 L ]
/// with b = X'(s_j'); the diagonal returns the limit X''(s_j)/(4pi).
/// Throws DegenerateCurve if two samples coincide.
Vec2 gamma0(const CurveState& X, std::size_t j, std::size_t jp);

/// String velocity u(X(s_j)) = h sum_j' gamma0(X, j, j'). This is the whole
/// right-hand side of the contour dynamics.
GridField on_curve_velocity(const CurveState& X);

/// The same velocity with the subtracted constant set to zero. The integrand
/// is then singular at the diagonal and the sum omits it (symmetric
/// truncation), so this form is only first-order accurate in h.
GridField on_curve_velocity_cauchy(const CurveState& X);

/// Index of the sample nearest to x, ties broken by the lowest index.
std::size_t nearest_sample(const CurveState& X, const Vec2& x);

/// Velocity at a point off the curve, using X'(s_x) at the nearest sample as
/// the subtracted constant. Accuracy degrades once x is within a few grid
/// spacings of the curve. Throws InvalidArgument if x is a sample point.
Vec2 off_curve_velocity(const CurveState& X, const Vec2& x);

/// Pressure at a point off the curve, gauge fixed so that it vanishes at
/// infinity. Throws InvalidArgument if x is a sample point.
double pressure_at(const CurveState& X, const Vec2& x);

struct FlowSample {
  Vec2 location = Vec2::Zero();
  Vec2 u = Vec2::Zero();
  double p = 0.0;
};

FlowSample sample_flow(const CurveState& X, const Vec2& x);

/// h sum_j u(X(s_j)) . X''(s_j), which equals the viscous dissipation
/// int |grad u|^2 over the plane.
double dissipation_rate(const CurveState& X);
/// Same, with a precomputed on-curve velocity.
double dissipation_rate(const CurveState& X, const GridField& velocity);

/// Nonlinear remainder g_X = u + (1/4)(-Delta)^{1/2} X.
GridField g_X(const CurveState& X);
GridField g_X(const CurveState& X, const GridField& velocity);

/// (tau^2 - 4 sin^2(tau/2)) / (4 tau sin^2(tau/2)), with a Taylor branch for
/// |tau| < 1e-2. Zero at tau = 0.
double near_diagonal_factor(double tau);

/// Integrand of g_X' in the cancelled closed form built from (L, M, N).
/// The diagonal returns its limit, zero.
Vec2 gamma1(const CurveState& X, std::size_t j, std::size_t jp);

/// The same integrand from its definition,
///   [ d^2 G(r)[X'(s), X'(s')] - I / (16 pi sin^2(tau/2)) ] (X'(s') - X'(s)),
/// r = X(s) - X(s'), with the second derivative of G expanded analytically.
/// Rejects j == j'.
Vec2 gamma1_direct(const CurveState& X, std::size_t j, std::size_t jp);

/// g_X' by trapezoid quadrature of gamma1.
GridField g_X_derivative_quadrature(const CurveState& X);

}  // namespace ibstring
