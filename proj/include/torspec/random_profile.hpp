#pragma once

#include <cstdint>

#include "torspec/periodic_fn.hpp"

namespace torspec {

struct RandomProfileOptions {
  int modes = 6;
  double amplitude = 0.3;
  /// If positive, the draw is rescaled so that ||q'|| <= h1_cap.
  double h1_cap = 0.0;
  std::size_t grid_size = PeriodicFn::kDefaultGrid;
};

/// Zero-mean trigonometric polynomial sum_n (a_n sin 2 pi n x + b_n cos 2 pi n x)
/// with a_n, b_n uniform in [-amplitude, amplitude] / n^2, drawn from a
/// mt19937_64 seeded with `seed`.
PeriodicFn random_profile(std::uint64_t seed, const RandomProfileOptions& opt = {});

}  // namespace torspec
