#include "torspec/random_profile.hpp"

#include <random>

#include "torspec/errors.hpp"

namespace torspec {

PeriodicFn random_profile(std::uint64_t seed, const RandomProfileOptions& opt) {
  if (opt.modes < 1 || 2 * static_cast<std::size_t>(opt.modes) >= opt.grid_size)
    throw InvalidInput("random profile mode count does not fit the grid");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> modes(opt.grid_size / 2 + 1);
  for (int n = 1; n <= opt.modes; ++n) {
    const double scale = opt.amplitude / (static_cast<double>(n) * n);
    const double a = scale * u(rng);  // sine
    const double b = scale * u(rng);  // cosine
    modes[n] = Complex(0.5 * b, -0.5 * a);
  }
  PeriodicFn q = PeriodicFn::from_modes(opt.grid_size, std::move(modes));
  if (opt.h1_cap > 0.0) {
    const double d = norm(q, SobolevIndex::one);
    if (d > opt.h1_cap) q = (opt.h1_cap / d) * q;
  }
  return q;
}

}  // namespace torspec
