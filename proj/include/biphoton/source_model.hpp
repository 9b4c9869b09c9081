#ifndef BIPHOTON_SOURCE_MODEL_HPP
#define BIPHOTON_SOURCE_MODEL_HPP

#include <string>

namespace biphoton {

enum class Polarization { TE, TM };

// Physical parameters of pump, waveguide and cavities. All values SI
// (m, rad/s, rad); constructors/serialization speak nm, GHz, mm, degrees.
struct SourceModel {
  double pump_center_wavelength = 0.0;  // m
  double pump_bandwidth = 0.0;          // rad/s, sech argument scale
  double waveguide_length = 0.0;        // m
  double pump_waist = 0.0;              // m
  double incidence_angle = 0.0;         // rad
  double n_te = 0.0;
  double n_tm = 0.0;
  double r_te = 0.0;  // facet power reflectivity, [0,1)
  double r_tm = 0.0;
  double microcavity_center = 0.0;      // m
  double microcavity_fwhm = 0.0;        // m
  double facet_peak_te = 0.0;           // m
  double facet_peak_tm = 0.0;           // m
  // optional affine dispersion dn/domega (s/rad), anchored at the facet peaks
  double n_te_slope = 0.0;
  double n_tm_slope = 0.0;

  double index_te(double omega) const;
  double index_tm(double omega) const;
  double index(Polarization pol, double omega) const {
    return pol == Polarization::TE ? index_te(omega) : index_tm(omega);
  }

  void validate() const;  // throws std::invalid_argument on a violated bound
};

// Sample parameters of the AlGaAs counterpropagating source.
SourceModel default_source_model();

std::string to_string(Polarization pol);

}  // namespace biphoton

#endif
