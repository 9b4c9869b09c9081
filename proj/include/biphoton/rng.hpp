#ifndef BIPHOTON_RNG_HPP
#define BIPHOTON_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "biphoton/constants.hpp"

namespace biphoton {

// Seeded stream with explicit draw order; gaussians use Box-Muller with no
// cached spare so identical seeds give identical streams everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace biphoton

#endif
