#include "biphoton/report.hpp"

#include <sstream>

#include <json.hpp>

#include "biphoton/constants.hpp"
#include "biphoton/io_csv.hpp"
#include "biphoton/version.hpp"

namespace biphoton {

using nlohmann::json;

std::string pipeline_to_string(const std::vector<PipelineStep>& steps) {
  if (steps.empty()) return "raw";
  std::ostringstream out;
  char buf[32];
  for (size_t i = 0; i < steps.size(); ++i) {
    if (i) out << " -> ";
    if (steps[i].kind == PipelineStep::Kind::crop) {
      std::snprintf(buf, sizeof(buf), "%g", steps[i].crop_width / nm);
      out << "crop " << buf << " nm";
    } else {
      out << "bin " << steps[i].bin_x << "x" << steps[i].bin_y;
    }
  }
  return out.str();
}

namespace {

void append_report_lines(std::ostringstream& out, const AnalysisReport& r,
                         const std::string& prefix) {
  if (r.has_k) out << prefix << "K: " << format_double(r.k) << "\n";
  out << prefix << "K_min: " << format_double(r.k_min) << "\n";
  out << prefix << "coverage: " << format_double(r.coverage) << "\n";
  out << prefix << "pipeline: " << pipeline_to_string(r.pipeline) << "\n";
  out << prefix << "grid: " << r.grid.count1 << "x" << r.grid.count2 << " px, pitch "
      << format_double(r.grid.axis1_pitch / nm) << " nm x "
      << format_double(r.grid.axis2_pitch / nm) << " nm, window ["
      << format_double(r.grid.lambda1(0) / nm) << ", "
      << format_double(r.grid.lambda1(r.grid.count1 - 1) / nm) << "] x ["
      << format_double(r.grid.lambda2(0) / nm) << ", "
      << format_double(r.grid.lambda2(r.grid.count2 - 1) / nm) << "] nm\n";
  out << prefix << "schmidt_coefficients:";
  for (const double c : r.coefficients) out << " " << format_double(c);
  out << "\n";
  for (const auto& w : r.warnings) out << prefix << "warning: " << w << "\n";
}

json report_to_json_obj(const AnalysisReport& r) {
  json j;
  if (r.has_k) j["K"] = r.k;
  j["K_min"] = r.k_min;
  j["coverage"] = r.coverage;
  j["schmidt_coefficients"] = r.coefficients;
  j["grid"] = {{"axis1_start_nm", r.grid.axis1_start / nm},
               {"axis1_pitch_nm", r.grid.axis1_pitch / nm},
               {"axis1_count", r.grid.count1},
               {"axis2_start_nm", r.grid.axis2_start / nm},
               {"axis2_pitch_nm", r.grid.axis2_pitch / nm},
               {"axis2_count", r.grid.count2}};
  j["pipeline"] = pipeline_to_string(r.pipeline);
  j["warnings"] = r.warnings;
  return j;
}

json provenance_obj(const std::string& config_hash_hex, std::uint64_t seed) {
  return json{{"tool", version_string}, {"config_hash", config_hash_hex}, {"seed", seed}};
}

}  // namespace

std::string analysis_text(const AnalysisReport& report, const std::string& provenance_block) {
  std::ostringstream out;
  append_report_lines(out, report, "");
  out << provenance_block;
  return out.str();
}

std::string analysis_json(const AnalysisReport& report, const std::string& config_hash_hex,
                          std::uint64_t seed) {
  json j = report_to_json_obj(report);
  j["provenance"] = provenance_obj(config_hash_hex, seed);
  return j.dump(2) + "\n";
}

std::string recovery_text(const RecoveryReport& report, const std::string& provenance_block) {
  std::ostringstream out;
  append_report_lines(out, report.theory, "theory.");
  append_report_lines(out, report.dfg_raw, "dfg_raw.");
  append_report_lines(out, report.dfg_cropped, "dfg_cropped.");
  append_report_lines(out, report.dfg_conditioned, "dfg_conditioned.");
  out << "spdc.K_min: " << format_double(report.spdc.k_min) << "\n";
  out << provenance_block;
  return out.str();
}

std::string recovery_json(const RecoveryReport& report, const std::string& config_hash_hex,
                          std::uint64_t seed) {
  json j;
  j["theory"] = report_to_json_obj(report.theory);
  j["dfg_raw"] = report_to_json_obj(report.dfg_raw);
  j["dfg_cropped"] = report_to_json_obj(report.dfg_cropped);
  j["dfg_conditioned"] = report_to_json_obj(report.dfg_conditioned);
  j["spdc"] = report_to_json_obj(report.spdc);
  j["conditioning"] = {{"crop_nm", report.crop_width / nm}, {"bin", {report.bin_x, report.bin_y}}};
  j["provenance"] = provenance_obj(config_hash_hex, seed);
  return j.dump(2) + "\n";
}

}  // namespace biphoton
