#include "biphoton/spectral_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {

void SpectralGrid::validate() const {
  if (!(axis1_pitch > 0.0) || !(axis2_pitch > 0.0))
    throw std::invalid_argument("SpectralGrid: pitches must be > 0");
  if (count1 < 2 || count2 < 2)
    throw std::invalid_argument("SpectralGrid: need at least 2 pixels per axis");
  if (!(axis1_start > 0.0) || !(axis2_start > 0.0))
    throw std::invalid_argument("SpectralGrid: axis starts must be > 0");
  // the affine wavelength<->frequency map needs a narrow window
  if (span1() > 0.02 * center1() || span2() > 0.02 * center2())
    throw std::invalid_argument("SpectralGrid: window too wide for linearized frequency map");
}

SpectralGrid default_grid() {
  SpectralGrid g;
  g.axis1_start = 1511.4 * nm;
  g.axis1_pitch = 0.010 * nm;
  g.count1 = 141;
  g.axis2_start = 1523.8 * nm;
  g.axis2_pitch = 0.0028 * nm;
  g.count2 = 501;
  g.linearized = true;
  return g;
}

}  // namespace biphoton
