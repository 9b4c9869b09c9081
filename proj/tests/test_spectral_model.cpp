#include <doctest.h>

#include <cmath>
#include <random>

#include "biphoton/constants.hpp"
#include "biphoton/quadrature.hpp"
#include "biphoton/spectral_model.hpp"
#include "oracles.hpp"

using namespace biphoton;

namespace {
const SourceModel model = default_source_model();
const double omega_p = omega_from_lambda(model.pump_center_wavelength);
}  // namespace

TEST_CASE("gauss-legendre rule integrates high-degree polynomials exactly") {
  const auto& rule = gauss_legendre(15);
  double wsum = 0.0, x28 = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    wsum += rule.weights[i];
    x28 += rule.weights[i] * std::pow(rule.nodes[i], 28);
  }
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x28 == doctest::Approx(2.0 / 29.0).epsilon(1e-13));
}

TEST_CASE("pump amplitude") {
  CHECK(pump_amplitude(model, omega_p) == doctest::Approx(1.0).epsilon(1e-14));

  // the sum omega_p + bandwidth rounds at ~1e-12 of the bandwidth
  const double sech1 = 1.0 / std::cosh(1.0);  // 0.64805...
  CHECK(pump_amplitude(model, omega_p + model.pump_bandwidth) ==
        doctest::Approx(sech1).epsilon(1e-11));

  CHECK_THROWS_AS(pump_amplitude(model, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(pump_amplitude(model, -1.0), std::domain_error);

  // FWHM of |alpha|^2: bisection on the implementation vs the analytic
  // half-width arccosh(sqrt(2)) * bandwidth
  auto intensity = [&](double detune) {
    const double a = pump_amplitude(model, omega_p + detune);
    return a * a;
  };
  double lo = 0.0, hi = 5.0 * model.pump_bandwidth;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (intensity(mid) > 0.5 ? lo : hi) = mid;
  }
  const double half_width = 0.5 * (lo + hi);
  const double expected = std::acosh(std::sqrt(2.0)) * model.pump_bandwidth;
  CHECK(2.0 * half_width ==
        doctest::Approx(2.0 * expected).epsilon(1e-10));  // 1.7627 * bandwidth
  CHECK(2.0 * expected / model.pump_bandwidth == doctest::Approx(1.7627).epsilon(1e-4));
}

TEST_CASE("phase mismatch") {
  SUBCASE("symmetric cancellation at theta = 0, equal indices") {
    SourceModel m = model;
    m.n_tm = m.n_te;
    const double w = omega_p / 2.0;
    CHECK(delta_k(m, w, w, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  }

  SUBCASE("vanishes at the solution of the tuning system") {
    // independent 2x2 solve: omega1*(n_te+n_tm) = omega_p*(n_tm+sin theta)
    const double theta = model.incidence_angle;
    const double w1 = omega_p * (model.n_tm + std::sin(theta)) / (model.n_te + model.n_tm);
    const double w2 = omega_p - w1;
    // solution sits at ~(1511.9, 1524.5) nm
    CHECK(lambda_from_omega(w1) / nm == doctest::Approx(1511.9).epsilon(1e-4));
    CHECK(lambda_from_omega(w2) / nm == doctest::Approx(1524.5).epsilon(1e-4));
    CHECK(std::fabs(delta_k(model, w1, w2, theta)) < 10.0);  // vs 2*pi/L ~ 3000
  }

  SUBCASE("degenerate closed form") {
    const double w = omega_p / 2.0;
    const double expected =
        (omega_p * std::sin(model.incidence_angle) - w * (model.n_te - model.n_tm)) / c_light;
    CHECK(delta_k(model, w, w, model.incidence_angle) ==
          doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("phase-matching integral") {
  SUBCASE("analytic Gaussian value at zero mismatch") {
    const complexd v = phase_matching_integral(model, 0.0);
    const double expected =
        oracles::gaussian_segment_integral(model.pump_waist, model.waveguide_length);
    CHECK(expected == doctest::Approx(0.42540 * mm).epsilon(1e-4));
    CHECK(v.real() == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::fabs(v.imag()) < 1e-12 * std::abs(v));
  }

  SUBCASE("flat-profile limit has the sinc zero") {
    SourceModel wide = model;
    wide.pump_waist = 1e3;  // envelope ~ 1 over the waveguide
    const double dk = two_pi / wide.waveguide_length;
    CHECK(std::abs(phase_matching_integral(wide, dk)) < 1e-9 * wide.waveguide_length);
  }

  SUBCASE("even in the mismatch") {
    const double phi0 = std::abs(phase_matching_integral(model, 0.0));
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> dist(0.0, 3e4);
    for (int i = 0; i < 100; ++i) {
      const double dk = dist(gen);
      const complexd plus = phase_matching_integral(model, dk);
      const complexd minus = phase_matching_integral(model, -dk);
      CHECK(std::abs(plus - minus) < 1e-10 * phi0);
    }
  }

  SUBCASE("phase_matching wraps delta_k at the model angle") {
    const double w1 = omega_from_lambda(1511.99 * nm);
    const double w2 = omega_from_lambda(1524.53 * nm);
    const double dk = delta_k(model, w1, w2, model.incidence_angle);
    CHECK(phase_matching(model, w1, w2) == phase_matching_integral(model, dk));
  }
}

TEST_CASE("microcavity transmission") {
  const double omega_m = omega_from_lambda(model.microcavity_center);
  const double domega_m = two_pi * c_light * model.microcavity_fwhm /
                          (model.microcavity_center * model.microcavity_center);
  CHECK(microcavity_transmission(model, omega_m) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(microcavity_transmission(model, omega_m + 0.5 * domega_m) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(microcavity_transmission(model, omega_m - 0.5 * domega_m) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // 0.28 nm detuning equals one FWHM under the affine map -> 1/(1+4) = 0.2
  const double detuned = omega_m - two_pi * c_light * 0.28 * nm /
                                       (model.microcavity_center * model.microcavity_center);
  CHECK(microcavity_transmission(model, detuned) == doctest::Approx(0.2).epsilon(1e-9));

  // amplitude squared modulus matches the transmission
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double w = omega_m + dist(gen) * domega_m;
    CHECK(std::norm(microcavity_amplitude(model, w)) ==
          doctest::Approx(microcavity_transmission(model, w)).epsilon(1e-12));
  }
}

TEST_CASE("facet response") {
  const double omega_te = omega_from_lambda(model.facet_peak_te);
  CHECK(facet_response(model, Polarization::TE, omega_te) == doctest::Approx(1.0).epsilon(1e-14));

  SUBCASE("minimum value 1/(1+F)") {
    // sin^2 argument = pi/2
    const double w = omega_te + 0.5 * pi * c_light / (model.waveguide_length * model.n_te);
    const double f_te = 4.0 * model.r_te / (1.0 - model.r_te);
    CHECK(f_te == doctest::Approx(1.4570).epsilon(1e-4));
    CHECK(facet_response(model, Polarization::TE, w) ==
          doctest::Approx(1.0 / (1.0 + f_te)).epsilon(1e-12));
    CHECK(facet_response(model, Polarization::TE, w) == doctest::Approx(0.407).epsilon(1e-3));
  }

  SUBCASE("free spectral range near 1512 nm") {
    // adjacent maxima found by scanning, spacing lambda^2/(2 L n)
    const double pitch = 0.1 * pm;
    double prev_peak = 0.0, spacing = 0.0;
    double last = 0.0, before = 0.0;
    for (double lam = 1511.7 * nm; lam < 1512.3 * nm; lam += pitch) {
      const double v = facet_response(model, Polarization::TE, omega_from_lambda(lam));
      if (before < last && v < last && last > 0.9) {  // local max
        if (prev_peak > 0.0) spacing = lam - pitch - prev_peak;
        prev_peak = lam - pitch;
      }
      before = last;
      last = v;
    }
    const double expected =
        model.facet_peak_te * model.facet_peak_te / (2.0 * model.waveguide_length * model.n_te);
    CHECK(expected / nm == doctest::Approx(0.176).epsilon(0.01));
    CHECK(spacing / nm == doctest::Approx(expected / nm).epsilon(2e-3));
  }

  SUBCASE("all transmissions lie in (0,1]") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> dist(1500.0, 1530.0);
    for (int i = 0; i < 200; ++i) {
      const double w = omega_from_lambda(dist(gen) * nm);
      for (auto pol : {Polarization::TE, Polarization::TM}) {
        const double t = facet_response(model, pol, w);
        CHECK(t > 0.0);
        CHECK(t <= 1.0);
      }
    }
  }
}

TEST_CASE("facet amplitude") {
  const double omega_te = omega_from_lambda(model.facet_peak_te);
  const complexd peak = facet_amplitude(model, Polarization::TE, omega_te);
  CHECK(peak.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(peak.imag()) < 1e-12);

  SUBCASE("squared modulus equals the intensity response") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> dist(1505.0, 1530.0);
    for (int i = 0; i < 1000; ++i) {
      const double w = omega_from_lambda(dist(gen) * nm);
      const auto pol = (i % 2 == 0) ? Polarization::TE : Polarization::TM;
      CHECK(std::norm(facet_amplitude(model, pol, w)) ==
            doctest::Approx(facet_response(model, pol, w)).epsilon(1e-12));
    }
  }

  SUBCASE("no cavity at zero reflectivity") {
    SourceModel bare = model;
    bare.r_te = 0.0;
    for (double lam = 1508.0; lam < 1516.0; lam += 0.63) {
      const complexd v = facet_amplitude(bare, Polarization::TE, omega_from_lambda(lam * nm));
      CHECK(std::abs(v - complexd(1.0)) < 1e-15);
    }
  }
}

TEST_CASE("assemble_jsa") {
  SpectralGrid grid = default_grid();
  // coarser copy of the production window keeps the unit test quick
  grid.count1 = 71;
  grid.axis1_pitch = 0.020 * nm;
  grid.count2 = 126;
  grid.axis2_pitch = 0.0112 * nm;

  const JointAmplitude amp = assemble_jsa(model, grid, PhaseMode::full_phase);

  SUBCASE("normalization") {
    CHECK(amp.coverage() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(amp.values.allFinite());
  }

  SUBCASE("modulus-only mode preserves the modulus") {
    const JointAmplitude mod = assemble_jsa(model, grid, PhaseMode::modulus_only);
    CHECK((amp.values.cwiseAbs() - mod.values.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(mod.values.imag().cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("cavity-free model gives a smooth ridge") {
    SourceModel bare = model;
    bare.r_te = bare.r_tm = 0.0;
    bare.microcavity_fwhm = 100.0 * nm;  // microcavity effectively flat
    const JointAmplitude smooth = assemble_jsa(bare, grid, PhaseMode::full_phase);

    const Eigen::VectorXd marg_default = amp.jsd().rowwise().sum();
    const Eigen::VectorXd marg_smooth = smooth.jsd().rowwise().sum();
    double amp_default = 0.0, amp_smooth = 0.0;
    const double period = oracles::modulation_peak(marg_default, 5.0, 15.0, &amp_default);
    oracles::modulation_peak(marg_smooth, 5.0, 15.0, &amp_smooth);
    CHECK(period * 0.020 == doctest::Approx(0.176).epsilon(0.06));  // FSR ~ 8.8 px here
    CHECK(amp_default > 0.1);
    CHECK(amp_smooth < 0.02);
  }

  SUBCASE("grid missing the emission is an error") {
    SpectralGrid off = grid;
    off.axis1_start = 1400.0 * nm;
    off.axis2_start = 1400.0 * nm;
    CHECK_THROWS_AS(assemble_jsa(model, off, PhaseMode::full_phase), std::runtime_error);
  }
}

TEST_CASE("tuning curve") {
  SUBCASE("reproduces the measured emission centers at 1.11 degrees") {
    const auto [l1, l2] = tuning_curve(model, deg_to_rad(1.11));
    CHECK(std::fabs(l1 - 1511.99 * nm) < 0.1 * nm);
    CHECK(std::fabs(l2 - 1524.53 * nm) < 0.1 * nm);
  }

  SUBCASE("normal incidence closed form") {
    const auto [l1, l2] = tuning_curve(model, 0.0);
    const double expected =
        model.pump_center_wavelength * (model.n_te + model.n_tm) / model.n_tm;
    CHECK(l1 == doctest::Approx(expected).epsilon(1e-12));
    CHECK(l2 == doctest::Approx(model.pump_center_wavelength * (model.n_te + model.n_tm) /
                                model.n_te)
                    .epsilon(1e-12));
  }

  SUBCASE("monotone branches") {
    double prev_l1 = 0.0, prev_l2 = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double theta = deg_to_rad(0.5 + 0.1 * i);
      const auto [l1, l2] = tuning_curve(model, theta);
      if (i > 0) {
        CHECK(l1 < prev_l1);
        CHECK(l2 > prev_l2);
      }
      prev_l1 = l1;
      prev_l2 = l2;
    }
  }

  SUBCASE("solution satisfies the residual and energy conservation") {
    const auto [l1, l2] = tuning_curve(model, model.incidence_angle);
    const double w1 = omega_from_lambda(l1);
    const double w2 = omega_from_lambda(l2);
    CHECK(std::fabs(delta_k(model, w1, w2, model.incidence_angle)) <
          1e-6 * two_pi / model.waveguide_length);
    CHECK(std::fabs(w1 + w2 - omega_p) <= 8.0 * std::fabs(omega_p) * 1e-16);
  }

  SUBCASE("dispersive indices converge to the same root when slopes vanish") {
    SourceModel disp = model;
    disp.n_te_slope = 1e-18;  // negligible slope, exercises the Newton path
    disp.n_tm_slope = 1e-18;
    const auto [l1, l2] = tuning_curve(disp, model.incidence_angle);
    const auto [r1, r2] = tuning_curve(model, model.incidence_angle);
    CHECK(l1 == doctest::Approx(r1).epsilon(1e-9));
    CHECK(l2 == doctest::Approx(r2).epsilon(1e-9));
  }

  SUBCASE("no telecom solution is an error") {
    CHECK_THROWS_AS(tuning_curve(model, 1.4), std::domain_error);  // ~80 degrees
  }
}
