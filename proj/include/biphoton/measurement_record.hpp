#ifndef BIPHOTON_MEASUREMENT_RECORD_HPP
#define BIPHOTON_MEASUREMENT_RECORD_HPP

#include <Eigen/Core>
#include <vector>

#include "biphoton/spectral_grid.hpp"

namespace biphoton {

// Seed-sweep dataset: row m = seed wavelength bin (signal axis), column n =
// analyzer wavelength bin (idler axis). T holds the per-column clean-up
// filter transmittance, p_ref the transmitted seed power reference.
struct MeasurementRecord {
  SpectralGrid grid;
  Eigen::MatrixXd intensity;  // R, count1 x count2, >= 0
  Eigen::VectorXd filter_transmittance;  // T, length count1
  Eigen::VectorXd seed_power_ref;        // P_ref, length count1
  std::vector<int> flagged_columns;      // seed bins with filter underflow

  void validate() const;  // shape and non-negativity checks
};

}  // namespace biphoton

#endif
