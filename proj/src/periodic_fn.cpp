#include "torspec/periodic_fn.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "torspec/errors.hpp"

namespace torspec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_grid(std::size_t m) {
  if (m < PeriodicFn::kMinGrid || !is_power_of_two(m)) {
    std::ostringstream os;
    os << "grid size must be a power of two >= " << PeriodicFn::kMinGrid << ", got " << m;
    throw InvalidInput(os.str());
  }
}

std::vector<Complex> forward_modes(std::span<const double> samples) {
  const std::size_t m = samples.size();
  Eigen::FFT<double> fft;
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<Complex> out;
  fft.fwd(out, in);
  std::vector<Complex> modes(m / 2 + 1);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t n = 0; n <= m / 2; ++n) modes[n] = out[n] * scale;
  modes[0] = modes[0].real();
  modes[m / 2] = modes[m / 2].real();
  return modes;
}

std::vector<double> inverse_modes(std::size_t m, std::span<const Complex> modes) {
  std::vector<Complex> full(m);
  full[0] = modes[0].real();
  for (std::size_t n = 1; n < m / 2; ++n) {
    full[n] = modes[n];
    full[m - n] = std::conj(modes[n]);
  }
  full[m / 2] = modes[m / 2].real();
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> out;
  fft.inv(out, full);
  std::vector<double> samples(m);
  for (std::size_t k = 0; k < m; ++k) samples[k] = out[k].real();
  return samples;
}

template <class Op>
PeriodicFn pointwise(const PeriodicFn& a, const PeriodicFn& b, Op op) {
  if (a.grid_size() != b.grid_size())
    throw InvalidInput("pointwise operation on functions with different grids");
  std::vector<double> v(a.grid_size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = op(a[k], b[k]);
  return PeriodicFn::from_samples(std::move(v));
}

}  // namespace

PeriodicFn PeriodicFn::from_samples(std::vector<double> samples) {
  check_grid(samples.size());
  for (double v : samples)
    if (!std::isfinite(v)) throw InvalidInput("non-finite sample value");
  auto modes = forward_modes(samples);
  return PeriodicFn(std::move(samples), std::move(modes));
}

PeriodicFn PeriodicFn::from_modes(std::size_t grid_size, std::vector<Complex> modes) {
  check_grid(grid_size);
  if (modes.size() != grid_size / 2 + 1) throw InvalidInput("mode count must be M/2 + 1");
  for (const auto& c : modes)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvalidInput("non-finite Fourier coefficient");
  modes.front() = modes.front().real();
  modes.back() = modes.back().real();
  auto samples = inverse_modes(grid_size, modes);
  return PeriodicFn(std::move(samples), std::move(modes));
}

PeriodicFn PeriodicFn::zero(std::size_t grid_size) { return constant(0.0, grid_size); }

PeriodicFn PeriodicFn::constant(double value, std::size_t grid_size) {
  check_grid(grid_size);
  std::vector<Complex> modes(grid_size / 2 + 1, Complex{});
  modes[0] = value;
  return PeriodicFn(std::vector<double>(grid_size, value), std::move(modes));
}

Complex PeriodicFn::coeff(int n) const {
  const int half = static_cast<int>(grid_size() / 2);
  if (std::abs(n) > half) return {};
  if (n == half || n == -half) return modes_[half];
  return n >= 0 ? modes_[n] : std::conj(modes_[-n]);
}

double PeriodicFn::operator()(double x) const {
  const std::size_t half = grid_size() / 2;
  const Complex step = std::polar(1.0, kTwoPi * x);
  Complex z = step;
  double acc = modes_[0].real();
  for (std::size_t n = 1; n < half; ++n) {
    acc += 2.0 * (modes_[n] * z).real();
    z *= step;
  }
  acc += modes_[half].real() * std::cos(std::numbers::pi * static_cast<double>(grid_size()) * x);
  return acc;
}

int PeriodicFn::band_limit(double rel_tol) const {
  double peak = 0.0;
  for (const auto& c : modes_) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return 0;
  for (int n = static_cast<int>(modes_.size()) - 1; n > 0; --n)
    if (std::abs(modes_[n]) > rel_tol * peak) return n;
  return 0;
}

double PeriodicFn::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

double PeriodicFn::min_value() const { return *std::min_element(samples_.begin(), samples_.end()); }
double PeriodicFn::max_value() const { return *std::max_element(samples_.begin(), samples_.end()); }

PeriodicFn PeriodicFn::derivative(int order) const {
  if (order < 0) throw InvalidInput("derivative order must be nonnegative");
  if (order == 0) return *this;
  const std::size_t half = grid_size() / 2;
  std::vector<Complex> d(modes_.size());
  const Complex i{0.0, 1.0};
  for (std::size_t n = 0; n < half; ++n)
    d[n] = modes_[n] * std::pow(i * (kTwoPi * static_cast<double>(n)), order);
  d[half] = 0.0;
  return from_modes(grid_size(), std::move(d));
}

PeriodicFn PeriodicFn::with_zero_mean() const {
  auto modes = modes_;
  modes[0] = 0.0;
  auto samples = samples_;
  const double m = mean();
  for (double& v : samples) v -= m;
  return PeriodicFn(std::move(samples), std::move(modes));
}

PeriodicFn PeriodicFn::shifted(double tau) const {
  const std::size_t half = grid_size() / 2;
  std::vector<Complex> d(modes_.size());
  d[0] = modes_[0];
  for (std::size_t n = 1; n < half; ++n)
    d[n] = modes_[n] * std::polar(1.0, kTwoPi * static_cast<double>(n) * tau);
  d[half] = modes_[half] * std::cos(std::numbers::pi * static_cast<double>(grid_size()) * tau);
  return from_modes(grid_size(), std::move(d));
}

PeriodicFn PeriodicFn::resampled(std::size_t grid_size) const {
  check_grid(grid_size);
  if (grid_size == this->grid_size()) return *this;
  std::vector<Complex> d(grid_size / 2 + 1, Complex{});
  const std::size_t own_half = this->grid_size() / 2;
  const std::size_t keep = std::min(own_half, grid_size / 2);
  for (std::size_t n = 0; n < keep; ++n) d[n] = modes_[n];
  if (grid_size > this->grid_size()) {
    // The Nyquist cosine splits evenly between modes +-M/2 of the finer grid.
    d[own_half] = 0.5 * modes_[own_half].real();
  }
  return from_modes(grid_size, std::move(d));
}

PeriodicFn operator+(const PeriodicFn& a, const PeriodicFn& b) {
  return pointwise(a, b, [](double x, double y) { return x + y; });
}
PeriodicFn operator-(const PeriodicFn& a, const PeriodicFn& b) {
  return pointwise(a, b, [](double x, double y) { return x - y; });
}
PeriodicFn operator*(const PeriodicFn& a, const PeriodicFn& b) {
  return pointwise(a, b, [](double x, double y) { return x * y; });
}
PeriodicFn operator*(double s, const PeriodicFn& a) {
  auto samples = a.samples_;
  for (double& v : samples) v *= s;
  auto modes = a.modes_;
  for (auto& c : modes) c *= s;
  return PeriodicFn(std::move(samples), std::move(modes));
}
PeriodicFn operator+(const PeriodicFn& a, double c) {
  auto samples = a.samples_;
  for (double& v : samples) v += c;
  auto modes = a.modes_;
  modes[0] += c;
  return PeriodicFn(std::move(samples), std::move(modes));
}
PeriodicFn operator-(const PeriodicFn& a) { return -1.0 * a; }

PeriodicFn analyze(std::span<const double> samples) {
  return PeriodicFn::from_samples(std::vector<double>(samples.begin(), samples.end()));
}

std::vector<double> synthesize(const PeriodicFn& f) {
  return inverse_modes(f.grid_size(), f.modes());
}

void require_zero_mean(const PeriodicFn& f, const char* what) {
  if (std::abs(f.mean()) > kMeanTolerance) {
    std::ostringstream os;
    os << what << " must have zero mean (|mean| = " << std::abs(f.mean()) << ")";
    throw InvalidInput(os.str());
  }
}

PeriodicFn antiderivative_zero_mean(const PeriodicFn& f) {
  const std::size_t half = f.grid_size() / 2;
  std::vector<Complex> d(half + 1, Complex{});
  const Complex i{0.0, 1.0};
  for (std::size_t n = 1; n < half; ++n)
    d[n] = f.modes()[n] / (i * (kTwoPi * static_cast<double>(n)));
  return PeriodicFn::from_modes(f.grid_size(), std::move(d));
}

PeriodicFn antiderivative_zero_start(const PeriodicFn& q) {
  require_zero_mean(q, "antiderivative argument");
  const PeriodicFn g = antiderivative_zero_mean(q);
  // g(0) is the sum of the real parts of the synthesized modes.
  double g0 = 0.0;
  for (std::size_t n = 1; n < g.grid_size() / 2; ++n) g0 += 2.0 * g.modes()[n].real();
  return g + (-g0);
}

double norm(const PeriodicFn& f, SobolevIndex j) {
  switch (j) {
    case SobolevIndex::minus_one:
      require_zero_mean(f, "H_{-1} norm argument");
      return norm(antiderivative_zero_mean(f), SobolevIndex::zero);
    case SobolevIndex::zero: {
      double s = 0.0;
      for (double v : f.samples()) s += v * v;
      return std::sqrt(s / static_cast<double>(f.grid_size()));
    }
    case SobolevIndex::one:
      return norm(f.derivative(1), SobolevIndex::zero);
    case SobolevIndex::two:
      return norm(f.derivative(2), SobolevIndex::zero);
  }
  throw InvalidInput("unsupported Sobolev index");
}

double inner(const PeriodicFn& f, const PeriodicFn& g) {
  if (f.grid_size() != g.grid_size()) throw InvalidInput("inner product on different grids");
  double s = 0.0;
  for (std::size_t k = 0; k < f.grid_size(); ++k) s += f[k] * g[k];
  return s / static_cast<double>(f.grid_size());
}

std::pair<PeriodicFn, PeriodicFn> even_odd_split(const PeriodicFn& f) {
  const std::size_t m = f.grid_size();
  std::vector<double> even(m), odd(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double reflected = f[(m - k) % m];
    even[k] = 0.5 * (f[k] + reflected);
    odd[k] = 0.5 * (f[k] - reflected);
  }
  return {PeriodicFn::from_samples(std::move(even)), PeriodicFn::from_samples(std::move(odd))};
}

}  // namespace torspec
