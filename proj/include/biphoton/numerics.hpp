#ifndef BIPHOTON_NUMERICS_HPP
#define BIPHOTON_NUMERICS_HPP

#include <cstddef>

namespace biphoton {

// Deterministic pairwise reduction; the summation tree depends only on n,
// never on thread schedule.
inline double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

}  // namespace biphoton

#endif
