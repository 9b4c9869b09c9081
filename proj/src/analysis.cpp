#include "biphoton/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {

MeasurementRecord condition_record(const MeasurementRecord& rec,
                                   const std::vector<PipelineStep>& steps) {
  MeasurementRecord out = rec;
  for (const auto& step : steps) {
    if (step.kind == PipelineStep::Kind::crop)
      out = crop_record(out, step.crop_width);
    else
      out = bin_record(out, step.bin_x, step.bin_y);
  }
  return out;
}

AnalysisReport analyze_record(const MeasurementRecord& rec,
                              const std::vector<PipelineStep>& steps) {
  rec.validate();
  const double total_before = rec.intensity.sum();
  if (!(total_before > 0.0))
    throw std::runtime_error("coverage failure: record contains no signal");
  if (rec.seed_power_ref.size() > 0 && !(rec.seed_power_ref.maxCoeff() > 0.0))
    throw std::runtime_error("coverage failure: no transmitted seed power in record");

  const MeasurementRecord conditioned = condition_record(rec, steps);

  AnalysisReport report;
  report.pipeline = steps;
  report.grid = conditioned.grid;
  // binning preserves block sums, so the raw-pixel intensity ratio tracks
  // how much of the ingested dataset the pipeline kept
  report.coverage = conditioned.intensity.sum() / total_before;
  if (report.coverage < coverage_threshold)
    report.warnings.push_back("coverage below 0.95 after conditioning");
  for (Eigen::Index m = 0; m < conditioned.filter_transmittance.size(); ++m)
    if (conditioned.filter_transmittance[m] < 1e-6)
      report.warnings.push_back("filter transmittance underflow in seed bin " +
                                std::to_string(m));

  const AmplitudeMatrix amp = measurement_to_amplitude(conditioned);
  const SchmidtResult modes = schmidt_decompose(amp.values);
  report.k_min = k_trace(amp.values);
  const int keep = std::min<int>(10, static_cast<int>(modes.coefficients.size()));
  report.coefficients.assign(modes.coefficients.begin(), modes.coefficients.begin() + keep);
  return report;
}

AnalysisReport analyze_amplitude(const JointAmplitude& amp) {
  AnalysisReport report;
  report.has_k = true;
  const SchmidtResult modes = schmidt_decompose(amp.values);
  report.k = modes.k;
  report.k_min = k_min(amp.values);
  report.coverage = amp.coverage();
  report.grid = amp.grid;
  const int keep = std::min<int>(10, static_cast<int>(modes.coefficients.size()));
  report.coefficients.assign(modes.coefficients.begin(), modes.coefficients.begin() + keep);
  return report;
}

RecoveryReport end_to_end_recovery(const JointAmplitude& amp, const InstrumentConfig& cfg,
                                   double crop_width, int bin_x, int bin_y,
                                   MeasurementRecord* dfg_out, CoincidenceHistogram* spdc_out) {
  RecoveryReport report;
  report.crop_width = crop_width;
  report.bin_x = bin_x;
  report.bin_y = bin_y;
  report.theory = analyze_amplitude(amp);

  const MeasurementRecord record = simulate_dfg(amp, cfg);
  if (dfg_out) *dfg_out = record;
  report.dfg_raw = analyze_record(record, {});
  report.dfg_cropped = analyze_record(record, {PipelineStep::crop(crop_width)});
  report.dfg_conditioned =
      analyze_record(record, {PipelineStep::crop(crop_width), PipelineStep::bin(bin_x, bin_y)});

  const CoincidenceHistogram hist = simulate_spdc(amp, cfg, cfg.spdc_pulses);
  if (spdc_out) *spdc_out = hist;
  if (hist.retained > 0) {
    AmplitudeMatrix spdc_amp;
    spdc_amp.grid = hist.grid;
    spdc_amp.values = hist.counts.cast<double>().cwiseSqrt();
    const SchmidtResult modes = schmidt_decompose(spdc_amp.values);
    report.spdc.k_min = k_min(spdc_amp);
    report.spdc.grid = hist.grid;
    const int keep = std::min<int>(10, static_cast<int>(modes.coefficients.size()));
    report.spdc.coefficients.assign(modes.coefficients.begin(), modes.coefficients.begin() + keep);
    report.spdc.coverage = 1.0;
  }
  return report;
}

}  // namespace biphoton
