#include "biphoton/source_model.hpp"

#include <cmath>
#include <stdexcept>

#include "biphoton/constants.hpp"

namespace biphoton {

double SourceModel::index_te(double omega) const {
  if (n_te_slope == 0.0) return n_te;
  return n_te + n_te_slope * (omega - omega_from_lambda(facet_peak_te));
}

double SourceModel::index_tm(double omega) const {
  if (n_tm_slope == 0.0) return n_tm;
  return n_tm + n_tm_slope * (omega - omega_from_lambda(facet_peak_tm));
}

void SourceModel::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("SourceModel: ") + name + " must be > 0");
  };
  positive(pump_center_wavelength, "pump_center_wavelength");
  positive(pump_bandwidth, "pump_bandwidth");
  positive(waveguide_length, "waveguide_length");
  positive(pump_waist, "pump_waist");
  positive(microcavity_center, "microcavity_center");
  positive(microcavity_fwhm, "microcavity_fwhm");
  positive(facet_peak_te, "facet_peak_te");
  positive(facet_peak_tm, "facet_peak_tm");
  if (!(r_te >= 0.0 && r_te < 1.0) || !(r_tm >= 0.0 && r_tm < 1.0))
    throw std::invalid_argument("SourceModel: facet reflectivities must lie in [0,1)");
  if (!(std::fabs(incidence_angle) < pi / 2.0))
    throw std::invalid_argument("SourceModel: |incidence_angle| must be < pi/2");
  if (!(n_te > 1.0) || !(n_tm > 1.0))
    throw std::invalid_argument("SourceModel: effective indices must be > 1");
}

SourceModel default_source_model() {
  SourceModel m;
  m.pump_center_wavelength = 759.1 * nm;
  m.pump_bandwidth = two_pi * 84.0 * GHz;
  m.waveguide_length = 2.1 * mm;
  m.pump_waist = 0.24 * mm;
  m.incidence_angle = deg_to_rad(1.11);
  m.n_te = 3.099;
  m.n_tm = 3.086;
  m.r_te = 0.267;
  m.r_tm = 0.247;
  m.microcavity_center = 759.1 * nm;
  m.microcavity_fwhm = 0.28 * nm;
  m.facet_peak_te = 1511.99 * nm;
  m.facet_peak_tm = 1524.53 * nm;
  return m;
}

std::string to_string(Polarization pol) { return pol == Polarization::TE ? "TE" : "TM"; }

}  // namespace biphoton
