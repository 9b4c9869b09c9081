#include "biphoton/spectral_model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "biphoton/constants.hpp"
#include "biphoton/numerics.hpp"
#include "biphoton/parallel.hpp"
#include "biphoton/quadrature.hpp"

namespace biphoton {

double JointAmplitude::coverage() const {
  const Eigen::MatrixXd d = values.cwiseAbs2();
  return pairwise_sum(d.data(), static_cast<size_t>(d.size())) * normalization_weight;
}

void JointAmplitude::normalize() {
  const double total = coverage();
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error("JointAmplitude: grid misses the emission (zero total intensity)");
  values /= std::sqrt(total);
}

double pump_amplitude(const SourceModel& model, double omega) {
  if (!std::isfinite(omega) || omega <= 0.0)
    throw std::domain_error("pump_amplitude: frequency must be finite and > 0");
  const double omega_p = omega_from_lambda(model.pump_center_wavelength);
  return sech((omega - omega_p) / model.pump_bandwidth);
}

double delta_k(const SourceModel& model, double omega1, double omega2, double theta) {
  return ((omega1 + omega2) * std::sin(theta) - omega1 * model.index_te(omega1) +
          omega2 * model.index_tm(omega2)) /
         c_light;
}

complexd phase_matching_integral(const SourceModel& model, double dk_value) {
  const double w = model.pump_waist;
  const double half = 0.5 * model.waveguide_length;
  return integrate(
      [&](double z) {
        return std::exp(-z * z / (w * w)) * std::exp(complexd(0.0, dk_value * z));
      },
      -half, half, 1e-10);
}

complexd phase_matching(const SourceModel& model, double omega1, double omega2) {
  return phase_matching_integral(model, delta_k(model, omega1, omega2, model.incidence_angle));
}

double microcavity_transmission(const SourceModel& model, double omega) {
  const double omega_m = omega_from_lambda(model.microcavity_center);
  const double domega_m = two_pi * c_light * model.microcavity_fwhm /
                          (model.microcavity_center * model.microcavity_center);
  const double x = (omega - omega_m) / domega_m;
  return 1.0 / (1.0 + 4.0 * x * x);
}

complexd microcavity_amplitude(const SourceModel& model, double omega) {
  const double omega_m = omega_from_lambda(model.microcavity_center);
  const double domega_m = two_pi * c_light * model.microcavity_fwhm /
                          (model.microcavity_center * model.microcavity_center);
  return 1.0 / complexd(1.0, -2.0 * (omega - omega_m) / domega_m);
}

namespace {

double finesse_coefficient(double r) { return 4.0 * r / (1.0 - r); }

// Pole radius of the one-pole amplitude reproducing an Airy intensity with
// coefficient F: solves 4*rho/(1-rho)^2 = F on (0,1).
double pole_radius(double coeff_f) {
  if (coeff_f <= 0.0) return 0.0;
  return (coeff_f + 2.0 - 2.0 * std::sqrt(coeff_f + 1.0)) / coeff_f;
}

double facet_phase(const SourceModel& model, Polarization pol, double omega) {
  const double n = model.index(pol, omega);
  const double peak = pol == Polarization::TE ? model.facet_peak_te : model.facet_peak_tm;
  return model.waveguide_length * n * (omega - omega_from_lambda(peak)) / c_light;
}

}  // namespace

double facet_response(const SourceModel& model, Polarization pol, double omega) {
  const double r = pol == Polarization::TE ? model.r_te : model.r_tm;
  const double s = std::sin(facet_phase(model, pol, omega));
  return 1.0 / (1.0 + finesse_coefficient(r) * s * s);
}

complexd facet_amplitude(const SourceModel& model, Polarization pol, double omega) {
  const double r = pol == Polarization::TE ? model.r_te : model.r_tm;
  const double rho = pole_radius(finesse_coefficient(r));
  if (rho == 0.0) return 1.0;
  const double x = facet_phase(model, pol, omega);
  return (1.0 - rho) / (1.0 - rho * std::exp(complexd(0.0, 2.0 * x)));
}

JointAmplitude assemble_jsa(const SourceModel& model, const SpectralGrid& grid, PhaseMode mode) {
  model.validate();
  grid.validate();

  JointAmplitude amp;
  amp.grid = grid;
  amp.values.resize(grid.count1, grid.count2);
  amp.normalization_weight = grid.domega1() * grid.domega2();

  std::vector<double> w1(grid.count1), w2(grid.count2);
  for (int i = 0; i < grid.count1; ++i) w1[i] = grid.omega1(i);
  for (int j = 0; j < grid.count2; ++j) w2[j] = grid.omega2(j);

  // signal-axis factors depend only on omega1; precompute per row
  std::vector<complexd> t_te(grid.count1);
  for (int i = 0; i < grid.count1; ++i)
    t_te[i] = mode == PhaseMode::full_phase
                  ? facet_amplitude(model, Polarization::TE, w1[i])
                  : complexd(std::sqrt(facet_response(model, Polarization::TE, w1[i])));

  std::vector<complexd> t_tm(grid.count2);
  for (int j = 0; j < grid.count2; ++j)
    t_tm[j] = mode == PhaseMode::full_phase
                  ? facet_amplitude(model, Polarization::TM, w2[j])
                  : complexd(std::sqrt(facet_response(model, Polarization::TM, w2[j])));

  parallel_for(grid.count1, [&](int i) {
    for (int j = 0; j < grid.count2; ++j) {
      const double ws = w1[i] + w2[j];
      const double pump = pump_amplitude(model, ws);
      complexd pm = phase_matching(model, w1[i], w2[j]);
      complexd cav = mode == PhaseMode::full_phase
                         ? microcavity_amplitude(model, ws)
                         : complexd(std::sqrt(microcavity_transmission(model, ws)));
      if (mode == PhaseMode::modulus_only) pm = std::abs(pm);
      amp.values(i, j) = pump * pm * cav * t_te[i] * t_tm[j];
    }
  });

  amp.normalize();
  return amp;
}

std::pair<double, double> tuning_curve(const SourceModel& model, double theta) {
  const double omega_p = omega_from_lambda(model.pump_center_wavelength);
  const double sin_t = std::sin(theta);

  // constant indices: 2x2 linear system in (omega1, omega2)
  double omega1 = omega_p * (model.n_tm + sin_t) / (model.n_te + model.n_tm);

  if (model.n_te_slope != 0.0 || model.n_tm_slope != 0.0) {
    // Newton on the residual delta_k(omega1, omega_p - omega1)
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const double omega2 = omega_p - omega1;
      const double res = delta_k(model, omega1, omega2, theta);
      if (std::fabs(res) < 1e-9 * two_pi / model.waveguide_length) {
        converged = true;
        break;
      }
      const double slope = (-model.index_te(omega1) - omega1 * model.n_te_slope -
                            model.index_tm(omega2) - omega2 * model.n_tm_slope) /
                           c_light;
      omega1 -= res / slope;
    }
    if (!converged) throw std::domain_error("tuning_curve: no phase-matching root found");
  }

  const double omega2 = omega_p - omega1;  // exact energy conservation
  const double l1 = lambda_from_omega(omega1);
  const double l2 = lambda_from_omega(omega2);
  if (l1 < 1.0e-6 || l1 > 2.2e-6 || l2 < 1.0e-6 || l2 > 2.2e-6)
    throw std::domain_error("tuning_curve: solution outside the telecom window");
  return {l1, l2};
}

}  // namespace biphoton
