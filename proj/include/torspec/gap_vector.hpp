#pragma once

#include <cstddef>
#include <vector>

namespace torspec {

/// One entry (psi_{n1}, psi_{n2}) of a gap-length vector.
struct GapEntry {
  double first = 0.0;
  double second = 0.0;
};

/// Finite section (psi_n)_{n=1..N} of a gap-length vector; entries[0] is n = 1.
struct GapVector {
  std::vector<GapEntry> entries;

  std::size_t size() const { return entries.size(); }
  const GapEntry& at(std::size_t n) const { return entries.at(n - 1); }
};

/// (sum_n (2 pi n)^{2j} (psi_{n1}^2 + psi_{n2}^2))^{1/2}; j is -1 or 0.
double weighted_l2_norm(const GapVector& v, int j);

}  // namespace torspec
