#include "biphoton/measurement_record.hpp"

#include <stdexcept>

namespace biphoton {

void MeasurementRecord::validate() const {
  if (intensity.rows() != grid.count1 || intensity.cols() != grid.count2)
    throw std::invalid_argument("MeasurementRecord: intensity shape does not match grid");
  if (filter_transmittance.size() != grid.count1)
    throw std::invalid_argument("MeasurementRecord: filter transmittance length mismatch");
  if (seed_power_ref.size() != grid.count1)
    throw std::invalid_argument("MeasurementRecord: seed power reference length mismatch");
  if (!intensity.allFinite())
    throw std::runtime_error("MeasurementRecord: intensity has non-finite entries");
}

}  // namespace biphoton
