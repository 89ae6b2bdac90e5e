#pragma once

// Reference computations used only by the tests. They share no numerical code
// with the library beyond PeriodicFn sampling.

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

/// Classical RK4 for -y'' + p y = lambda y on [0, 1]; returns
/// (theta(1), theta'(1), phi(1), phi'(1)).
inline std::array<double, 4> rk4_monodromy(const Fn& p, double lambda, int steps) {
  auto run = [&](double y, double dy) {
    const double h = 1.0 / steps;
    auto f = [&](double x, double a, double b) { return std::array<double, 2>{b, (p(x) - lambda) * a}; };
    for (int k = 0; k < steps; ++k) {
      const double x = k * h;
      const auto k1 = f(x, y, dy);
      const auto k2 = f(x + h / 2, y + h / 2 * k1[0], dy + h / 2 * k1[1]);
      const auto k3 = f(x + h / 2, y + h / 2 * k2[0], dy + h / 2 * k2[1]);
      const auto k4 = f(x + h, y + h * k3[0], dy + h * k3[1]);
      y += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
      dy += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    }
    return std::array<double, 2>{y, dy};
  };
  const auto t = run(1.0, 0.0);
  const auto f = run(0.0, 1.0);
  return {t[0], t[1], f[0], f[1]};
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const Fn& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Random trigonometric polynomial given by explicit coefficients.
struct Trig {
  std::vector<double> a;  // sine coefficients, mode k + 1
  std::vector<double> b;  // cosine coefficients, mode k + 1
  double c = 0.0;         // constant

  double operator()(double x) const {
    double v = c;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double t = 2.0 * M_PI * (k + 1) * x;
      v += a[k] * std::sin(t) + b[k] * std::cos(t);
    }
    return v;
  }
  double derivative(double x) const {
    double v = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double w = 2.0 * M_PI * (k + 1);
      v += w * (a[k] * std::cos(w * x) - b[k] * std::sin(w * x));
    }
    return v;
  }
  /// int_0^x of the non-constant part.
  double antiderivative(double x) const {
    double v = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double w = 2.0 * M_PI * (k + 1);
      v += a[k] * (1.0 - std::cos(w * x)) / w + b[k] * std::sin(w * x) / w;
    }
    return v;
  }

  static Trig random(std::uint64_t seed, int modes, double scale, bool decay = true) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Trig t;
    for (int k = 1; k <= modes; ++k) {
      const double s = decay ? scale / (k * k) : scale;
      t.a.push_back(s * u(rng));
      t.b.push_back(s * u(rng));
    }
    return t;
  }
};

}  // namespace oracle
