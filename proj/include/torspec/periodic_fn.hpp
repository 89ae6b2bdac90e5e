#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace torspec {

using Complex = std::complex<double>;

/// A real 1-periodic function held on the uniform grid x_k = k/M together with
/// its discrete Fourier coefficients
///
///     f(x) = sum_{|n| <= M/2} c_n exp(2 pi i n x),   c_{-n} = conj(c_n).
///
/// Only the modes n = 0..M/2 are stored. The Nyquist mode enters the
/// interpolant as c_{M/2} cos(pi M x) and is dropped by differentiation.
/// Instances are immutable; every transformation returns a new value.
class PeriodicFn {
 public:
  /// Smallest grid accepted by the analysis routines.
  static constexpr std::size_t kMinGrid = 16;
  static constexpr std::size_t kDefaultGrid = 256;

  PeriodicFn() = default;

  /// Throws InvalidInput unless the size is a power of two >= kMinGrid and all
  /// values are finite.
  static PeriodicFn from_samples(std::vector<double> samples);

  /// `modes` holds c_0..c_{M/2}; imaginary parts of c_0 and c_{M/2} are dropped.
  static PeriodicFn from_modes(std::size_t grid_size, std::vector<Complex> modes);

  static PeriodicFn zero(std::size_t grid_size = kDefaultGrid);
  static PeriodicFn constant(double value, std::size_t grid_size = kDefaultGrid);

  template <class F>
  static PeriodicFn sample(F&& f, std::size_t grid_size = kDefaultGrid) {
    std::vector<double> v(grid_size);
    for (std::size_t k = 0; k < grid_size; ++k)
      v[k] = f(static_cast<double>(k) / static_cast<double>(grid_size));
    return from_samples(std::move(v));
  }

  bool empty() const { return samples_.empty(); }
  std::size_t grid_size() const { return samples_.size(); }
  std::span<const double> samples() const { return samples_; }
  std::span<const Complex> modes() const { return modes_; }
  double operator[](std::size_t k) const { return samples_[k]; }

  /// Coefficient c_n for any |n| <= M/2.
  Complex coeff(int n) const;
  double mean() const { return modes_.empty() ? 0.0 : modes_[0].real(); }

  /// Trigonometric interpolant at an arbitrary abscissa.
  double operator()(double x) const;

  /// Largest mode whose coefficient exceeds rel_tol * max|c_n|.
  int band_limit(double rel_tol = 1e-14) const;

  double max_abs() const;
  double min_value() const;
  double max_value() const;

  PeriodicFn derivative(int order = 1) const;
  PeriodicFn with_zero_mean() const;
  /// x -> f(x + tau), computed spectrally.
  PeriodicFn shifted(double tau) const;
  /// Spectral interpolation (or truncation) onto another power-of-two grid.
  PeriodicFn resampled(std::size_t grid_size) const;

  /// Pointwise transform on the grid followed by re-analysis.
  template <class F>
  PeriodicFn map(F&& f) const {
    std::vector<double> v(samples_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(samples_[k]);
    return from_samples(std::move(v));
  }

  friend PeriodicFn operator+(const PeriodicFn& a, const PeriodicFn& b);
  friend PeriodicFn operator-(const PeriodicFn& a, const PeriodicFn& b);
  /// Pointwise product on the grid (aliasing is the caller's concern).
  friend PeriodicFn operator*(const PeriodicFn& a, const PeriodicFn& b);
  friend PeriodicFn operator*(double s, const PeriodicFn& a);
  friend PeriodicFn operator+(const PeriodicFn& a, double c);
  friend PeriodicFn operator-(const PeriodicFn& a);

 private:
  PeriodicFn(std::vector<double> samples, std::vector<Complex> modes)
      : samples_(std::move(samples)), modes_(std::move(modes)) {}

  std::vector<double> samples_;
  std::vector<Complex> modes_;
};

/// Forward discrete Fourier analysis of grid samples.
PeriodicFn analyze(std::span<const double> samples);

/// Grid values recomputed from the stored coefficients.
std::vector<double> synthesize(const PeriodicFn& f);

/// Q(x) = int_0^x q. Rejects |mean(q)| > kMeanTolerance since Q would not be
/// periodic.
PeriodicFn antiderivative_zero_start(const PeriodicFn& q);

/// The antiderivative with zero mean (the g of f = g').
PeriodicFn antiderivative_zero_mean(const PeriodicFn& f);

inline constexpr double kMeanTolerance = 1e-10;

/// Throws InvalidInput if |mean(f)| exceeds kMeanTolerance.
void require_zero_mean(const PeriodicFn& f, const char* what);

enum class SobolevIndex : int { minus_one = -1, zero = 0, one = 1, two = 2 };

/// ||f||_j^2 = int |f^{(j)}|^2 for j >= 0; ||f||_{-1} = ||g|| where f = g' and
/// g has zero mean (requires zero-mean f).
double norm(const PeriodicFn& f, SobolevIndex j);

inline double norm(const PeriodicFn& f) { return norm(f, SobolevIndex::zero); }

/// Real L^2(0,1) pairing by the trapezoid rule.
double inner(const PeriodicFn& f, const PeriodicFn& g);

/// Trapezoid rule for int_0^1 f.
inline double integral(const PeriodicFn& f) { return f.mean(); }

/// (even, odd) with respect to the reflection x -> 1 - x.
std::pair<PeriodicFn, PeriodicFn> even_odd_split(const PeriodicFn& f);

}  // namespace torspec
