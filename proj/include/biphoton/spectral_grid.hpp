#ifndef BIPHOTON_SPECTRAL_GRID_HPP
#define BIPHOTON_SPECTRAL_GRID_HPP

#include <cstddef>

#include "biphoton/constants.hpp"

namespace biphoton {

// Rectangular wavelength grid: axis 1 = signal (TE), axis 2 = idler (TM),
// both ascending in wavelength. Frequencies are obtained by an affine map
// about each axis center (valid because the window is tiny compared to the
// center wavelength); set `linearized = false` to use the exact 2*pi*c/lambda
// conversion instead.
struct SpectralGrid {
  double axis1_start = 0.0;  // m
  double axis2_start = 0.0;  // m
  double axis1_pitch = 0.0;  // m
  double axis2_pitch = 0.0;  // m
  int count1 = 0;
  int count2 = 0;
  bool linearized = true;

  double lambda1(int i) const { return axis1_start + i * axis1_pitch; }
  double lambda2(int j) const { return axis2_start + j * axis2_pitch; }

  double center1() const { return axis1_start + 0.5 * (count1 - 1) * axis1_pitch; }
  double center2() const { return axis2_start + 0.5 * (count2 - 1) * axis2_pitch; }

  double span1() const { return (count1 - 1) * axis1_pitch; }
  double span2() const { return (count2 - 1) * axis2_pitch; }

  double omega1(int i) const { return omega_at(lambda1(i), center1()); }
  double omega2(int j) const { return omega_at(lambda2(j), center2()); }

  // frequency step magnitudes, used as Riemann weights
  double domega1() const { return two_pi * c_light / (center1() * center1()) * axis1_pitch; }
  double domega2() const { return two_pi * c_light / (center2() * center2()) * axis2_pitch; }

  void validate() const;

 private:
  double omega_at(double lambda, double center) const {
    if (!linearized) return omega_from_lambda(lambda);
    const double wc = omega_from_lambda(center);
    return wc - two_pi * c_light / (center * center) * (lambda - center);
  }
};

// The window used for Fig. 4c-style calculations:
// [1511.4, 1512.8] nm x [1523.8, 1525.2] nm, 141 x 501 pixels.
SpectralGrid default_grid();

}  // namespace biphoton

#endif
