#ifndef BIPHOTON_ANALYSIS_HPP
#define BIPHOTON_ANALYSIS_HPP

#include <string>
#include <vector>

#include "biphoton/instruments.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

struct PipelineStep {
  enum class Kind { crop, bin };
  Kind kind = Kind::crop;
  double crop_width = 0.0;  // m
  int bin_x = 1;
  int bin_y = 1;

  static PipelineStep crop(double width) { return {Kind::crop, width, 1, 1}; }
  static PipelineStep bin(int bx, int by) { return {Kind::bin, 0.0, bx, by}; }
};

struct AnalysisReport {
  bool has_k = false;  // true when phase information was available
  double k = 0.0;
  double k_min = 0.0;
  std::vector<double> coefficients;  // first 10 Schmidt coefficients
  double coverage = 0.0;             // intensity fraction kept by the pipeline
  SpectralGrid grid;                 // grid after conditioning
  std::vector<PipelineStep> pipeline;
  std::vector<std::string> warnings;
};

// Conditions a seed-sweep record (crop/bin in order), converts to the
// modulus amplitude and computes K_min. Throws std::runtime_error with a
// "coverage failure" message when the record holds no signal.
AnalysisReport analyze_record(const MeasurementRecord& rec,
                              const std::vector<PipelineStep>& steps);

// Same conditioning applied to the record, returning the intermediate
// record (for exporting recovered JSDs).
MeasurementRecord condition_record(const MeasurementRecord& rec,
                                   const std::vector<PipelineStep>& steps);

// Theory-side report: K with phase, K_min from the modulus.
AnalysisReport analyze_amplitude(const JointAmplitude& amp);

struct RecoveryReport {
  AnalysisReport theory;
  AnalysisReport dfg_raw;
  AnalysisReport dfg_cropped;
  AnalysisReport dfg_conditioned;  // crop + bin
  AnalysisReport spdc;
  double crop_width = 0.0;
  int bin_x = 1;
  int bin_y = 1;
};

// Runs the full comparison: theoretical JSA, simulated DFG sweep analyzed
// raw / cropped / cropped+binned, and the SPDC coincidence histogram.
RecoveryReport end_to_end_recovery(const JointAmplitude& amp, const InstrumentConfig& cfg,
                                   double crop_width, int bin_x, int bin_y,
                                   MeasurementRecord* dfg_out = nullptr,
                                   CoincidenceHistogram* spdc_out = nullptr);

}  // namespace biphoton

#endif
