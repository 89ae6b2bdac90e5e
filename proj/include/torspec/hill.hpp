#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torspec/periodic_fn.hpp"
#include "torspec/riccati.hpp"
#include "torspec/sturm_system.hpp"

namespace torspec {

enum class Boundary { periodic, antiperiodic, dirichlet };

/// Band edges, Dirichlet spectrum and norming constants up to index N.
struct SpectralData {
  double lambda0 = 0.0;                               ///< lambda_0^+
  std::vector<std::pair<double, double>> band_edges;  ///< (lambda_n^-, lambda_n^+), n = 1..N
  std::vector<double> dirichlet;                      ///< mu_n
  std::vector<double> norming;                        ///< kappa_n = log|phi'(1, mu_n)|
  int N = 0;

  double gap(int n) const { return band_edges.at(n - 1).second - band_edges.at(n - 1).first; }
};

/// Result of checking interlacing, mu_n in [lambda_n^-, lambda_n^+] and
/// Lambda(lambda_n^+-) = (-1)^n.
struct SpectralCheck {
  bool interlacing = true;
  bool dirichlet_in_gap = true;
  double max_discriminant_error = 0.0;
  bool ok(double tol = 1e-7) const {
    return interlacing && dirichlet_in_gap && max_discriminant_error <= tol;
  }
};

/// Eigenvalue isolation for a SturmSystem. Dirichlet (mu_n, n >= 1) and
/// Neumann (nu_n, n >= 0) eigenvalues are isolated by node counting and then
/// polished on phi(1) resp. theta_z(1); band edges are bracketed between
/// consecutive Dirichlet/Neumann eigenvalues and found as roots of
/// det(M - sigma I). Results are cached, so an instance is not thread-safe.
class SpectralSolver {
 public:
  explicit SpectralSolver(SturmSystem system);

  const SturmSystem& system() const { return sys_; }

  double dirichlet(int n);
  double neumann(int n);
  double lambda0();
  /// (lambda_n^-, lambda_n^+); a gap narrower than kClosedGap is reported
  /// closed at mu_n.
  std::pair<double, double> edges(int n);
  /// log|phi'(1, mu_n)|
  double norming(int n);

  SpectralData data(int N);
  /// First `count` eigenvalues for the boundary condition, ascending.
  std::vector<double> eigenvalues(int count, Boundary bc);

  SpectralCheck check(const SpectralData& d) const;

  static constexpr double kClosedGap = 1e-9;

 private:
  enum class Kind { dirichlet, neumann };
  double isolate(Kind kind, int index);
  double edge_root(double lo, double hi, double sigma, double f_lo, double f_hi);
  /// det(M - sigma I) at a Dirichlet or Neumann eigenvalue, where one
  /// off-diagonal entry vanishes and the diagonal is (x, 1/x).
  double edge_value_at(Kind kind, int n, double sigma);

  SturmSystem sys_;
  std::vector<std::optional<double>> mu_, nu_;
  std::vector<std::optional<double>> mu_slope_, nu_diag_;
  std::optional<double> lambda0_;
  std::vector<std::optional<std::pair<double, double>>> edges_;
};

Monodromy monodromy(const PeriodicFn& p, double lambda);
double discriminant(const PeriodicFn& p, double lambda);
/// (lambda, Lambda(lambda)) on `count` equally spaced points of [lo, hi].
std::vector<std::pair<double, double>> discriminant_sweep(const PeriodicFn& p, double lo, double hi,
                                                          int count);

struct BandEdges {
  double lambda0 = 0.0;
  std::vector<std::pair<double, double>> edges;
};
BandEdges periodic_eigenvalues(const PeriodicFn& p, int N);
std::vector<double> dirichlet_eigenvalues(const PeriodicFn& p, int N);
/// Throws SolverError if |phi'(1, mu)| < 1e-14, which only happens when mu is
/// not a Dirichlet eigenvalue.
std::vector<double> norming_constants(const PeriodicFn& p, const std::vector<double>& mu);

SpectralData spectral_data(const PeriodicFn& p, int N);
SpectralData impedance_spectral_data(const PeriodicFn& q, const OperatorSpec& spec, int N);

/// Spectrum of -y'' + p y by shooting, in the same layout as galerkin_spectrum.
std::vector<double> schrodinger_spectrum(const PeriodicFn& p, int count, Boundary bc);
/// Spectrum of the impedance operator -(rho^2 f')'/rho^2 + (E/r^2) f.
std::vector<double> impedance_spectrum(const PeriodicFn& q, const OperatorSpec& spec, int count,
                                       Boundary bc);

/// First `count` eigenvalues of -d^2/dx^2 + p by Galerkin truncation: Fourier
/// modes (integer or half-integer) for periodic/antiperiodic, sin(n pi x) for
/// Dirichlet. Dimension is at least 4 count + 32.
std::vector<double> galerkin_spectrum(const PeriodicFn& p, int count, Boundary bc);

}  // namespace torspec
