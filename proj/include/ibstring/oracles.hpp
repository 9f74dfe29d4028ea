#pragma once

// Reference computations that share no code path with the spectral and
// boundary-integral machinery. They are slow and exist to check it.

#include "ibstring/spectral.hpp"

#include <cstddef>
#include <functional>

namespace ibstring::oracle {

using CurveFn = std::function<Vec2(double)>;

/// (1/pi) int_0^pi [2 f(s) - f(s + t) - f(s - t)] / (4 sin^2(t/2)) dt, the
/// symmetrized principal value of the singular-integral form of (-Delta)^{1/2},
/// by adaptive Gauss-Kronrod quadrature.
Vec2 fractional_laplacian_half_pv(const CurveFn& f, double s);

/// (1/2pi) int_0^pi cot(t/2) [f(s - t) - f(s + t)] dt, the symmetrized
/// principal value of the periodic Hilbert transform.
Vec2 hilbert_pv(const CurveFn& f, double s);

/// Shoelace area of the polygon through `points` equispaced samples of f.
double polygon_area(const CurveFn& f, std::size_t points = 1'000'000);

/// Brute-force minimizer over theta_i = 2 pi i / count of
///   sum_j |Y_j - center - R (cos(s_j + theta), sin(s_j + theta))|^2.
double grid_search_theta(const GridField& Y, const Vec2& center, double radius,
                         std::size_t count = 100'000);

/// Squared L2 distance (trapezoid) between Y and the circle at angle theta.
double circle_distance_squared(const GridField& Y, const Vec2& center, double radius,
                               double theta);

}  // namespace ibstring::oracle
