#ifndef BIPHOTON_SPECTRAL_MODEL_HPP
#define BIPHOTON_SPECTRAL_MODEL_HPP

#include <Eigen/Core>
#include <complex>
#include <utility>

#include "biphoton/source_model.hpp"
#include "biphoton/spectral_grid.hpp"

namespace biphoton {

using complexd = std::complex<double>;

// Normalized biphoton amplitude phi on a wavelength grid. Row index = signal
// axis, column index = idler axis. After normalize(), the Riemann sum
// sum |phi|^2 * domega1 * domega2 equals 1 to 1e-9.
struct JointAmplitude {
  SpectralGrid grid;
  Eigen::MatrixXcd values;            // count1 x count2
  double normalization_weight = 0.0;  // domega1 * domega2

  Eigen::MatrixXd jsd() const { return values.cwiseAbs2(); }
  double coverage() const;  // Riemann sum of |phi|^2 over the window
  void normalize();
};

enum class PhaseMode { full_phase, modulus_only };

// Spectral amplitude of the sech pump pulse, evaluated at the sum frequency.
// Real, in (0,1], peak 1 at 2*pi*c/lambda_p.
double pump_amplitude(const SourceModel& model, double omega);

// Phase mismatch of the transversally pumped three-wave process (1/m).
double delta_k(const SourceModel& model, double omega1, double omega2, double theta);

// Integral of the Gaussian pump profile against exp(i*dk*z) over the
// waveguide length. Real up to quadrature error since the envelope is even.
complexd phase_matching_integral(const SourceModel& model, double dk_value);
complexd phase_matching(const SourceModel& model, double omega1, double omega2);

// Intensity transfer of the pump microcavity (Lorentzian, peak 1).
double microcavity_transmission(const SourceModel& model, double omega);
complexd microcavity_amplitude(const SourceModel& model, double omega);

// Intensity transfer of the waveguide facet cavity for the given
// polarization: 1/(1 + F sin^2(L n (omega-omega_mu)/c)), F = 4R/(1-R).
double facet_response(const SourceModel& model, Polarization pol, double omega);

// One-pole cavity amplitude whose squared modulus equals facet_response
// exactly; peak value 1+0i at the facet resonance. The pole radius is chosen
// so the Airy coefficient reproduces F = 4R/(1-R).
complexd facet_amplitude(const SourceModel& model, Polarization pol, double omega);

// Evaluates every factor on the grid and normalizes. Throws
// std::runtime_error if the grid misses the emission entirely.
JointAmplitude assemble_jsa(const SourceModel& model, const SpectralGrid& grid,
                            PhaseMode mode = PhaseMode::full_phase);

// Wavelength pair (lambda1, lambda2) in meters solving delta_k = 0 together
// with energy conservation omega1 + omega2 = 2*pi*c/lambda_p.
std::pair<double, double> tuning_curve(const SourceModel& model, double theta);

}  // namespace biphoton

#endif
