#ifndef BIPHOTON_REPORT_HPP
#define BIPHOTON_REPORT_HPP

#include <cstdint>
#include <string>

#include "biphoton/analysis.hpp"

namespace biphoton {

// "key: value" text form and machine-readable JSON of an analysis result.
// `provenance_block` (config hash, seed, version lines) is appended verbatim.
std::string analysis_text(const AnalysisReport& report, const std::string& provenance_block = {});
std::string analysis_json(const AnalysisReport& report, const std::string& config_hash_hex = {},
                          std::uint64_t seed = 0);

std::string recovery_text(const RecoveryReport& report, const std::string& provenance_block = {});
std::string recovery_json(const RecoveryReport& report, const std::string& config_hash_hex = {},
                          std::uint64_t seed = 0);

std::string pipeline_to_string(const std::vector<PipelineStep>& steps);

}  // namespace biphoton

#endif
