#include "ibstring/spectral.hpp"

#include "ibstring/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace ibstring {

namespace {

// FFTW's planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per size and never destroyed.
struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<Complex> a(n), b(n);
  auto* in = reinterpret_cast<fftw_complex*>(a.data());
  auto* out = reinterpret_cast<fftw_complex*>(b.data());
  const int len = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p{fftw_plan_dft_1d(len, in, out, FFTW_FORWARD, flags),
             fftw_plan_dft_1d(len, in, out, FFTW_BACKWARD, flags)};
  return cache.emplace(n, p).first->second;
}

void execute(fftw_plan plan, std::vector<Complex>& in, std::vector<Complex>& out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

enum class Parity { even, odd };

// Applies a Fourier multiplier. The symbol is called with the signed
// wavenumber; at the Nyquist slot it is called with +N/2 for even symbols and
// skipped (coefficient zeroed) for odd ones.
template <typename Symbol>
GridField apply_multiplier(const GridField& f, Parity parity, Symbol&& symbol) {
  SpectralField F = to_spectral(f);
  const std::size_t n = F.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == n / 2) {
      if (parity == Parity::odd) {
        F[i].setZero();
      } else {
        F[i] *= symbol(static_cast<int>(n / 2));
      }
      continue;
    }
    F[i] *= symbol(F.wavenumber(i));
  }
  return from_spectral(F);
}

}  // namespace

void require_grid_size(std::size_t n) {
  if (n < 8 || n % 2 != 0) {
    throw InvalidArgument("grid size must be even and >= 8, got " + std::to_string(n));
  }
}

GridField::GridField(std::size_t n) : values_(n, Vec2::Zero()) { require_grid_size(n); }

GridField::GridField(std::vector<Vec2> values) : values_(std::move(values)) {
  require_grid_size(values_.size());
}

Vec2 GridField::mean() const {
  Vec2 acc = Vec2::Zero();
  for (const auto& v : values_) acc += v;
  return acc / static_cast<double>(values_.size());
}

bool GridField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Vec2& v) { return std::isfinite(v.x()) && std::isfinite(v.y()); });
}

double GridField::max_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.norm());
  return m;
}

GridField& GridField::operator+=(const GridField& o) {
  if (o.size() != size()) throw InvalidArgument("GridField size mismatch");
  for (std::size_t j = 0; j < size(); ++j) values_[j] += o.values_[j];
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  if (o.size() != size()) throw InvalidArgument("GridField size mismatch");
  for (std::size_t j = 0; j < size(); ++j) values_[j] -= o.values_[j];
  return *this;
}

GridField& GridField::operator*=(double a) {
  for (auto& v : values_) v *= a;
  return *this;
}

SpectralField::SpectralField(std::size_t n) : coeffs_(n, CVec2::Zero()) { require_grid_size(n); }

int SpectralField::wavenumber(std::size_t i) const noexcept {
  const auto n = static_cast<long>(coeffs_.size());
  const auto k = static_cast<long>(i);
  return static_cast<int>(k < n / 2 ? k : k - n);
}

std::size_t SpectralField::index(int k) const {
  const auto n = static_cast<long>(coeffs_.size());
  if (k < -n / 2 || k >= n / 2) {
    throw InvalidArgument("wavenumber " + std::to_string(k) + " not representable on N = " +
                          std::to_string(n));
  }
  return static_cast<std::size_t>(k >= 0 ? k : k + n);
}

SpectralField to_spectral(const GridField& f) {
  const std::size_t n = f.size();
  const PlanPair& p = plans_for(n);
  SpectralField F(n);
  std::vector<Complex> in(n), out(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < n; ++j) in[j] = Complex(f[j][c], 0.0);
    execute(p.forward, in, out);
    for (std::size_t i = 0; i < n; ++i) F[i][c] = out[i] * scale;
  }
  return F;
}

GridField from_spectral(const SpectralField& F) {
  const std::size_t n = F.size();
  const PlanPair& p = plans_for(n);
  GridField f(n);
  std::vector<Complex> in(n), out(n);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < n; ++i) in[i] = F[i][c];
    execute(p.backward, in, out);
    for (std::size_t j = 0; j < n; ++j) f[j][c] = out[j].real();
  }
  return f;
}

GridField derivative(const GridField& f, int m) {
  if (m < 1) throw InvalidArgument("derivative order must be >= 1");
  const Parity parity = (m % 2 == 0) ? Parity::even : Parity::odd;
  return apply_multiplier(f, parity, [m](int k) { return std::pow(Complex(0.0, k), m); });
}

GridField fractional_laplacian_half(const GridField& f) {
  return apply_multiplier(f, Parity::even, [](int k) { return Complex(std::abs(k), 0.0); });
}

GridField hilbert_transform(const GridField& f) {
  return apply_multiplier(f, Parity::odd, [](int k) {
    return Complex(0.0, k > 0 ? -1.0 : (k < 0 ? 1.0 : 0.0));
  });
}

GridField semigroup_apply(const GridField& f, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("semigroup time must be nonnegative");
  return apply_multiplier(f, Parity::even,
                          [t](int k) { return Complex(std::exp(-std::abs(k) * t / 4.0), 0.0); });
}

double sobolev_seminorm(const SpectralField& F, double s) {
  if (!(s >= 0.0)) throw InvalidArgument("Sobolev index must be nonnegative");
  const std::size_t n = F.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = std::abs(i == n / 2 ? static_cast<double>(n / 2) : F.wavenumber(i));
    double weight;
    if (k == 0.0) {
      weight = (s == 0.0) ? 1.0 : 0.0;
    } else {
      weight = std::pow(k, 2.0 * s);
    }
    acc += weight * F[i].squaredNorm();
  }
  return std::sqrt(kTwoPi * acc);
}

double sobolev_seminorm(const GridField& f, double s) { return sobolev_seminorm(to_spectral(f), s); }

GridField dealias(const GridField& f, double cutoff_fraction, double krasny_floor) {
  if (!(cutoff_fraction > 0.0 && cutoff_fraction <= 1.0)) {
    throw InvalidArgument("cutoff_fraction must lie in (0, 1]");
  }
  if (!(krasny_floor >= 0.0)) throw InvalidArgument("krasny_floor must be nonnegative");
  SpectralField F = to_spectral(f);
  const std::size_t n = F.size();
  const double kmax = cutoff_fraction * static_cast<double>(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = std::abs(i == n / 2 ? static_cast<double>(n / 2) : F.wavenumber(i));
    if (k > kmax) {
      F[i].setZero();
      continue;
    }
    for (int c = 0; c < 2; ++c) {
      if (std::abs(F[i][c]) < krasny_floor) F[i][c] = 0.0;
    }
  }
  return from_spectral(F);
}

}  // namespace ibstring
