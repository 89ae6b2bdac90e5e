#include "torspec/gap_vector.hpp"

#include <cmath>
#include <numbers>

#include "torspec/errors.hpp"

namespace torspec {

double weighted_l2_norm(const GapVector& v, int j) {
  if (j != -1 && j != 0) throw InvalidInput("weighted_l2_norm supports j = -1 and j = 0");
  double s = 0.0;
  for (std::size_t n = 1; n <= v.size(); ++n) {
    const auto& e = v.at(n);
    const double w = std::pow(2.0 * std::numbers::pi * static_cast<double>(n), 2 * j);
    s += w * (e.first * e.first + e.second * e.second);
  }
  return std::sqrt(s);
}

}  // namespace torspec
