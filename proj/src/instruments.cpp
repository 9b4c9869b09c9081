#include "biphoton/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "biphoton/rng.hpp"

namespace biphoton {

void InstrumentConfig::validate() const {
  if (!(pair_probability >= 0.0 && pair_probability <= 1.0))
    throw std::invalid_argument("InstrumentConfig: pair_probability must lie in [0,1]");
  if (!(detection_efficiency >= 0.0 && detection_efficiency <= 1.0))
    throw std::invalid_argument("InstrumentConfig: detection_efficiency must lie in [0,1]");
  if (jitter_pp < 0.0 || jitter_apd < 0.0 || jitter_tdc < 0.0)
    throw std::invalid_argument("InstrumentConfig: jitters must be >= 0");
  if (dispersion_dcf == 0.0)
    throw std::invalid_argument("InstrumentConfig: dispersion must be nonzero");
  if (dfg_seed_step <= 0.0 || dfg_analyzer_points < 2)
    throw std::invalid_argument("InstrumentConfig: invalid DFG sweep geometry");
  if (noise_floor < 0.0 || seed_power < 0.0)
    throw std::invalid_argument("InstrumentConfig: powers must be >= 0");
}

double spdc_resolution(const InstrumentConfig& cfg) {
  return std::sqrt(cfg.jitter_pp * cfg.jitter_pp + cfg.jitter_apd * cfg.jitter_apd +
                   cfg.jitter_tdc * cfg.jitter_tdc) /
         std::fabs(cfg.dispersion_dcf);
}

double spdc_pixel_pitch(const InstrumentConfig& cfg) {
  return cfg.jitter_tdc / std::fabs(cfg.dispersion_dcf);
}

namespace {

// pulses until the next pair, inclusive; Geometric(p) on {1, 2, ...}
std::uint64_t pulses_to_next_hit(Rng& rng, double p) {
  if (p >= 1.0) return 1;
  const double u = rng.uniform();
  const double k = std::floor(std::log1p(-u) / std::log1p(-p));
  if (!(k >= 0.0) || k > 1e18) return UINT64_MAX;
  return static_cast<std::uint64_t>(k) + 1;
}

}  // namespace

CoincidenceHistogram simulate_spdc(const JointAmplitude& amp, const InstrumentConfig& cfg,
                                   std::uint64_t pulses) {
  cfg.validate();
  if (amp.coverage() < 0.95)
    throw std::runtime_error("simulate_spdc: amplitude grid coverage below 0.95");

  const double pitch = spdc_pixel_pitch(cfg);
  const SpectralGrid& src = amp.grid;

  CoincidenceHistogram hist;
  hist.grid.axis1_pitch = pitch;
  hist.grid.axis2_pitch = pitch;
  hist.grid.count1 = std::max(2, static_cast<int>(std::floor(src.span1() / pitch)));
  hist.grid.count2 = std::max(2, static_cast<int>(std::floor(src.span2() / pitch)));
  hist.grid.axis1_start = src.center1() - 0.5 * (hist.grid.count1 - 1) * pitch;
  hist.grid.axis2_start = src.center2() - 0.5 * (hist.grid.count2 - 1) * pitch;
  hist.grid.linearized = src.linearized;
  hist.counts.setZero(hist.grid.count1, hist.grid.count2);
  hist.pulses_simulated = pulses;

  if (pulses == 0 || cfg.pair_probability <= 0.0) return hist;

  // inverse-CDF sampling over the flattened JSD
  const Eigen::MatrixXd jsd = amp.jsd();
  std::vector<double> cdf(static_cast<size_t>(jsd.size()));
  double acc = 0.0;
  for (int i = 0; i < jsd.rows(); ++i)
    for (int j = 0; j < jsd.cols(); ++j) {
      acc += jsd(i, j);
      cdf[static_cast<size_t>(i) * jsd.cols() + j] = acc;
    }
  for (double& v : cdf) v /= acc;

  const double abs_disp = std::fabs(cfg.dispersion_dcf);
  const double sigma_t =
      std::sqrt(cfg.jitter_pp * cfg.jitter_pp + cfg.jitter_apd * cfg.jitter_apd) * fwhm_to_sigma;
  const double sigma_lambda = sigma_t / abs_disp;
  const double retain_p = cfg.detection_efficiency * cfg.detection_efficiency;

  Rng rng(cfg.rng_seed);
  std::uint64_t pulse = 0;
  while (true) {
    const std::uint64_t step = pulses_to_next_hit(rng, cfg.pair_probability);
    if (step == UINT64_MAX || pulses - pulse < step) break;
    pulse += step;

    const double u = rng.uniform();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto flat = static_cast<Eigen::Index>(it - cdf.begin());
    const int si = static_cast<int>(flat / jsd.cols());
    const int sj = static_cast<int>(flat % jsd.cols());

    if (rng.uniform() >= retain_p) continue;

    const double l1 = src.lambda1(si) + sigma_lambda * rng.gaussian();
    const double l2 = src.lambda2(sj) + sigma_lambda * rng.gaussian();
    // TDC quantization and histogram binning share the same time grid
    const auto b1 = std::llround((l1 - hist.grid.axis1_start) / pitch);
    const auto b2 = std::llround((l2 - hist.grid.axis2_start) / pitch);
    if (b1 < 0 || b1 >= hist.grid.count1 || b2 < 0 || b2 >= hist.grid.count2) continue;
    hist.counts(b1, b2) += 1;
    hist.retained += 1;
  }
  return hist;
}

double filter_transmittance(const InstrumentConfig& cfg, double lambda) {
  if (cfg.filter_fwhm <= 0.0) return 1.0;
  const double x = (lambda - cfg.filter_center) / cfg.filter_fwhm;
  return std::exp(-4.0 * std::log(2.0) * x * x);
}

namespace {

// linear interpolation of a JSD row slice at an off-node signal wavelength
void jsd_row_at(const Eigen::MatrixXd& jsd, const SpectralGrid& grid, double lambda1,
                Eigen::VectorXd& out) {
  const double fi = (lambda1 - grid.axis1_start) / grid.axis1_pitch;
  const int i0 = std::clamp(static_cast<int>(std::floor(fi)), 0, grid.count1 - 1);
  const int i1 = std::min(i0 + 1, grid.count1 - 1);
  const double frac = std::clamp(fi - i0, 0.0, 1.0);
  out = (1.0 - frac) * jsd.row(i0).transpose() + frac * jsd.row(i1).transpose();
}

double lerp_at(const Eigen::VectorXd& v, const SpectralGrid& grid, double lambda2) {
  const double fj = (lambda2 - grid.axis2_start) / grid.axis2_pitch;
  const int j0 = std::clamp(static_cast<int>(std::floor(fj)), 0, grid.count2 - 1);
  const int j1 = std::min(j0 + 1, grid.count2 - 1);
  const double frac = std::clamp(fj - j0, 0.0, 1.0);
  return (1.0 - frac) * v[j0] + frac * v[j1];
}

}  // namespace

MeasurementRecord simulate_dfg(const JointAmplitude& amp, const InstrumentConfig& cfg) {
  cfg.validate();
  const SpectralGrid& src = amp.grid;
  if (cfg.dfg_seed_step > src.span1())
    throw std::runtime_error("simulate_dfg: seed step larger than the signal window");

  MeasurementRecord rec;
  rec.grid.axis1_start = src.axis1_start;
  rec.grid.axis1_pitch = cfg.dfg_seed_step;
  rec.grid.count1 = static_cast<int>(std::floor(src.span1() / cfg.dfg_seed_step + 1e-9)) + 1;
  rec.grid.axis2_start = src.axis2_start;
  rec.grid.count2 = cfg.dfg_analyzer_points;
  rec.grid.axis2_pitch = src.span2() / (cfg.dfg_analyzer_points - 1);
  rec.grid.linearized = src.linearized;

  const int m_count = rec.grid.count1;
  const int n_count = rec.grid.count2;
  rec.intensity.resize(m_count, n_count);
  rec.filter_transmittance.resize(m_count);
  rec.seed_power_ref.resize(m_count);

  const Eigen::MatrixXd jsd = amp.jsd();
  const double domega1 = rec.grid.domega1();  // seed line width in frequency
  const double gamma2 = cfg.pair_probability;

  // analyzer kernel on the source grid; disabled when narrower than a pixel
  const bool convolve = cfg.dfg_analyzer_resolution > 0.25 * src.axis2_pitch;
  const double kw = cfg.dfg_analyzer_resolution * fwhm_to_sigma;  // sigma in wavelength
  const int reach = convolve ? static_cast<int>(std::ceil(4.0 * kw / src.axis2_pitch)) : 0;

  Eigen::VectorXd column(src.count2);
  for (int m = 0; m < m_count; ++m) {
    const double seed_lambda = rec.grid.lambda1(m);
    const double t_m = filter_transmittance(cfg, seed_lambda);
    rec.filter_transmittance[m] = t_m;
    rec.seed_power_ref[m] = cfg.seed_power * t_m;
    if (t_m < 1e-6) rec.flagged_columns.push_back(m);

    jsd_row_at(jsd, src, seed_lambda, column);
    // stimulated photon number per analyzer bin, before detector noise
    const double scale = 2.0 * gamma2 * t_m * domega1;
    for (int n = 0; n < n_count; ++n) {
      const double mu = rec.grid.lambda2(n);
      double value;
      if (!convolve) {
        value = lerp_at(column, src, mu);
      } else {
        const int jc = static_cast<int>(std::round((mu - src.axis2_start) / src.axis2_pitch));
        double wsum = 0.0, vsum = 0.0;
        for (int j = std::max(0, jc - reach); j <= std::min(src.count2 - 1, jc + reach); ++j) {
          const double d = (src.lambda2(j) - mu) / kw;
          const double w = std::exp(-0.5 * d * d);
          wsum += w;
          vsum += w * column[j];
        }
        value = wsum > 0.0 ? vsum / wsum : 0.0;
      }
      rec.intensity(m, n) = cfg.seed_power * (scale * value);
    }
  }

  if (cfg.noise_floor > 0.0) {
    Rng rng(cfg.rng_seed);
    for (int m = 0; m < m_count; ++m)
      for (int n = 0; n < n_count; ++n)
        rec.intensity(m, n) =
            std::max(0.0, rec.intensity(m, n) + cfg.noise_floor * rng.gaussian());
  }
  return rec;
}

}  // namespace biphoton
