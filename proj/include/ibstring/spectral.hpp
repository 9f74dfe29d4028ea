#pragma once

// Fourier toolkit on the torus T = R / 2piZ.
//
// Conventions
//   * Samples live at s_j = 2*pi*j/N, j = 0..N-1, N even and >= 8.
//   * SpectralField stores Fourier-series coefficients
//         c_k = (1/N) * sum_j f_j exp(-i k s_j),
//     so f(s) = sum_k c_k exp(i k s). Index i holds wavenumber k = i for
//     i < N/2 and k = i - N otherwise; the Nyquist slot i = N/2 is k = -N/2.
//   * Multipliers with an even symbol (|k|^p, exp(-|k|t/4), (ik)^m for even m)
//     act on the Nyquist slot with |k| = N/2. Multipliers with an odd symbol
//     ((ik)^m for odd m, -i sgn k) annihilate it, since the result has to stay
//     real.

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ibstring {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using CVec2 = Eigen::Vector2cd;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Samples of a 2-vector field on the uniform torus grid.
class GridField {
 public:
  GridField() = default;
  explicit GridField(std::size_t n);
  explicit GridField(std::vector<Vec2> values);

  template <typename F>
  static GridField sample(std::size_t n, F&& f) {
    GridField out(n);
    for (std::size_t j = 0; j < n; ++j) out.values_[j] = f(out.node(j));
    return out;
  }

  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(values_.size()); }
  double node(std::size_t j) const noexcept { return spacing() * static_cast<double>(j); }

  const Vec2& operator[](std::size_t j) const { return values_[j]; }
  Vec2& operator[](std::size_t j) { return values_[j]; }
  std::span<const Vec2> values() const noexcept { return values_; }

  Vec2 mean() const;
  bool all_finite() const;
  double max_norm() const;

  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(double a);

  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(double a, GridField f) { return f *= a; }
  friend GridField operator*(GridField f, double a) { return f *= a; }

 private:
  std::vector<Vec2> values_;
};

/// Fourier coefficients of a 2-vector field, FFT index order (see above).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(std::size_t n);

  std::size_t size() const noexcept { return coeffs_.size(); }
  const CVec2& operator[](std::size_t i) const { return coeffs_[i]; }
  CVec2& operator[](std::size_t i) { return coeffs_[i]; }

  /// Wavenumber stored at index i.
  int wavenumber(std::size_t i) const noexcept;
  /// Index of wavenumber k, k in [-N/2, N/2 - 1].
  std::size_t index(int k) const;
  const CVec2& mode(int k) const { return coeffs_[index(k)]; }
  CVec2& mode(int k) { return coeffs_[index(k)]; }

 private:
  std::vector<CVec2> coeffs_;
};

/// Throws InvalidArgument unless n is even and >= 8.
void require_grid_size(std::size_t n);

SpectralField to_spectral(const GridField& f);
/// Inverse transform; the imaginary part of the synthesis is discarded.
GridField from_spectral(const SpectralField& F);

/// m-th derivative, multiplier (ik)^m.
GridField derivative(const GridField& f, int m);
/// (-Delta)^{1/2}, multiplier |k|.
GridField fractional_laplacian_half(const GridField& f);
/// Hilbert transform (1/2pi) p.v. int cot((s-s')/2) f(s') ds', multiplier -i sgn k.
GridField hilbert_transform(const GridField& f);
/// exp(t L) with L = -(1/4)(-Delta)^{1/2}, multiplier exp(-|k| t / 4).
GridField semigroup_apply(const GridField& f, double t);
/// (2 pi sum_k |k|^{2s} |c_k|^2)^{1/2}; s = 0 is the full L2 norm.
double sobolev_seminorm(const GridField& f, double s);
double sobolev_seminorm(const SpectralField& F, double s);
/// Zeroes modes with |k| > cutoff_fraction * N/2 and scalar coefficients
/// with magnitude below krasny_floor.
GridField dealias(const GridField& f, double cutoff_fraction, double krasny_floor);

}  // namespace ibstring
