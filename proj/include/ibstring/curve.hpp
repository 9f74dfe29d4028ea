#pragma once

#include "ibstring/spectral.hpp"

#include <cstddef>
#include <vector>

namespace ibstring {

/// Sampled string configuration X(s_j). X' and X'' are spectral derivatives
/// computed once at construction; the object is immutable afterwards.
class CurveState {
 public:
  CurveState() = default;
  explicit CurveState(GridField x);

  std::size_t size() const noexcept { return x_.size(); }
  double spacing() const noexcept { return x_.spacing(); }
  double node(std::size_t j) const noexcept { return x_.node(j); }

  const GridField& samples() const noexcept { return x_; }
  const GridField& first_derivative() const noexcept { return d1_; }
  const GridField& second_derivative() const noexcept { return d2_; }

  const Vec2& operator[](std::size_t j) const { return x_[j]; }

 private:
  GridField x_;
  GridField d1_;
  GridField d2_;
};

/// Signed torus offset tau = s_{j'} - s_j wrapped into [-pi, pi).
double torus_offset(std::size_t j, std::size_t jp, std::size_t n);

/// Chord and derivative slopes
///   L = (X(s') - X(s))/tau,  M = (X'(s') - X'(s))/tau,  N = (L - X'(s))/tau,
/// with the diagonal values L = X'(s), M = X''(s), N = X''(s)/2.
struct DiffQuotients {
  Vec2 L;
  Vec2 M;
  Vec2 N;
  double tau = 0.0;
};

DiffQuotients diff_quotients(const CurveState& X, std::size_t j, std::size_t jp);

/// min over distinct grid pairs of |X(s1) - X(s2)| / d_T(s1, s2).
/// A value <= 0 signals a self-intersection at grid resolution.
double well_stretched_constant(const CurveState& X);

inline bool is_degenerate(double lambda) noexcept { return !(lambda > 0.0); }

/// (1/2) closed integral of X x X'. Throws OrientationError if not positive.
double enclosed_area(const CurveState& X);
/// sqrt(area / pi).
double effective_radius(const CurveState& X);

/// (1/2) ||X'||_{L2}^2.
double elastic_energy(const CurveState& X);

/// (R cos(s + theta), R sin(s + theta)) + center.
CurveState make_circle(std::size_t n, double radius, double theta = 0.0,
                       const Vec2& center = Vec2::Zero());

/// One Fourier perturbation mode: component c receives
/// amplitude[c] * cos(k s + phase[c]).
struct PerturbationMode {
  int k = 0;
  Vec2 amplitude = Vec2::Zero();
  Vec2 phase = Vec2::Zero();

  friend bool operator==(const PerturbationMode&, const PerturbationMode&) = default;
};

/// Unit-parameterized circle of radius R plus the listed modes.
CurveState make_perturbed_circle(std::size_t n, double radius,
                                 const std::vector<PerturbationMode>& modes);

/// Circle of radius R parameterized by s + beta sin s; |beta| < 1.
CurveState make_reparam_circle(std::size_t n, double radius, double beta);

}  // namespace ibstring
