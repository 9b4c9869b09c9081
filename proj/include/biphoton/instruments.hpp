#ifndef BIPHOTON_INSTRUMENTS_HPP
#define BIPHOTON_INSTRUMENTS_HPP

#include <Eigen/Core>
#include <cstdint>

#include "biphoton/measurement_record.hpp"
#include "biphoton/spectral_model.hpp"

namespace biphoton {

// Parameters of the two characterization experiments. SI units internally
// (s, m, s/m); serialization speaks ps, nm, ps/nm.
struct InstrumentConfig {
  // SPDC arm
  double pair_probability = 0.01;     // |gamma|^2 per pump pulse
  double detection_efficiency = 0.2;  // per arm
  double jitter_pp = 200.0 * ps;
  double jitter_apd = 250.0 * ps;
  double jitter_tdc = 81.0 * ps;
  double dispersion_dcf = -1475.0 * ps / nm;  // s/m
  std::uint64_t spdc_pulses = 1000000000ull;

  // DFG arm
  double dfg_seed_step = 10.0 * pm;
  double dfg_analyzer_resolution = 20.0 * pm;
  int dfg_analyzer_points = 501;
  double filter_center = 1512.1 * nm;
  double filter_fwhm = 1.1 * nm;  // <= 0 disables the clean-up filter
  double seed_power = 1.0e20;  // |B|^2, mean photon number per spectral bin
  // additive intensity sd in the units of R; calibrated so the default sweep
  // reproduces the raw -> cropped -> binned K_min regression of the source
  // characterization (1.42 / 1.22 / 1.04)
  double noise_floor = 6000.0;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct CoincidenceHistogram {
  SpectralGrid grid;  // pitch = tau_TDC / |D_DCF| on both axes
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::uint64_t pulses_simulated = 0;
  std::uint64_t retained = 0;  // equals counts.sum()
};

// Fiber-spectrometer resolution sqrt(tau_PP^2 + tau_APD^2 + tau_TDC^2)/|D|,
// in meters.
double spdc_resolution(const InstrumentConfig& cfg);

// Histogram pixel pitch tau_TDC / |D_DCF| in meters.
double spdc_pixel_pitch(const InstrumentConfig& cfg);

// Monte-Carlo coincidence measurement: per pulse a pair is created with
// probability |gamma|^2, sampled from the JSD, detected with probability
// efficiency^2, jittered in arrival time and quantized into TDC bins.
CoincidenceHistogram simulate_spdc(const JointAmplitude& amp, const InstrumentConfig& cfg,
                                   std::uint64_t pulses);

// Seed-sweep measurement: each seed position yields one idler spectrum
// proportional to a JSD column, scaled by the clean-up filter, convolved
// with the analyzer response and degraded by additive Gaussian noise.
MeasurementRecord simulate_dfg(const JointAmplitude& amp, const InstrumentConfig& cfg);

// Gaussian clean-up filter transmittance at a seed wavelength.
double filter_transmittance(const InstrumentConfig& cfg, double lambda);

}  // namespace biphoton

#endif
