#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "torspec/errors.hpp"
#include "torspec/hill.hpp"

namespace torspec {
namespace {

constexpr double kPi = std::numbers::pi;

// Exponential-form coefficient; the Nyquist cosine splits over +-M/2.
Complex fourier(const PeriodicFn& p, int n) {
  const int half = static_cast<int>(p.grid_size() / 2);
  if (std::abs(n) > half) return {};
  if (std::abs(n) == half) return 0.5 * p.coeff(n);
  return p.coeff(n);
}

// int_0^1 p(x) cos(m pi x) dx
double cosine_moment(const PeriodicFn& p, int m) {
  m = std::abs(m);
  if (m % 2 == 0) return fourier(p, m / 2).real();
  const int half = static_cast<int>(p.grid_size() / 2);
  double s = 0.0;
  for (int n = 1; n <= half; ++n) {
    const double a = 2.0 * kPi * n;
    const double b = m * kPi;
    s += fourier(p, n).imag() * (1.0 / (a + b) + 1.0 / (a - b));
  }
  return -2.0 * s;
}

std::vector<double> fourier_basis(const PeriodicFn& p, int count, double offset) {
  const int K = std::max(2 * count + 16, p.band_limit(1e-15) + count + 8);
  const int dim = 2 * K + 1;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const double kj = 2.0 * kPi * (j - K + offset);
    for (int k = 0; k < dim; ++k) H(j, k) = fourier(p, j - k);
    H(j, j) += kj * kj;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("Galerkin eigensolver failed");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + count};
}

std::vector<double> sine_basis(const PeriodicFn& p, int count) {
  const int dim = std::max({4 * count + 32, 2 * p.band_limit(1e-15) + count + 16, 256});
  Eigen::MatrixXd H(dim, dim);
  std::vector<double> C(2 * dim + 2);
  for (int m = 0; m < static_cast<int>(C.size()); ++m) C[m] = cosine_moment(p, m);
  for (int j = 1; j <= dim; ++j) {
    for (int k = 1; k <= dim; ++k) H(j - 1, k - 1) = C[std::abs(j - k)] - C[j + k];
    H(j - 1, j - 1) += j * j * kPi * kPi;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("Galerkin eigensolver failed");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + count};
}

}  // namespace

std::vector<double> galerkin_spectrum(const PeriodicFn& p, int count, Boundary bc) {
  if (count < 1) throw InvalidInput("eigenvalue count must be >= 1");
  switch (bc) {
    case Boundary::periodic:
      return fourier_basis(p, count, 0.0);
    case Boundary::antiperiodic:
      return fourier_basis(p, count, 0.5);
    case Boundary::dirichlet:
      return sine_basis(p, count);
  }
  return {};
}

}  // namespace torspec
