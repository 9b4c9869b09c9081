#ifndef BIPHOTON_RUN_CONFIG_HPP
#define BIPHOTON_RUN_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "biphoton/analysis.hpp"
#include "biphoton/instruments.hpp"
#include "biphoton/source_model.hpp"
#include "biphoton/spectral_grid.hpp"

namespace biphoton {

struct RunConfig {
  SourceModel source;
  SpectralGrid grid;
  InstrumentConfig instrument;
  std::vector<PipelineStep> pipeline;  // applied by analyze/replicate
  std::string output_dir = "out";
  bool export_csv = true;
  bool export_pgm = false;
  bool export_json = true;

  static RunConfig defaults();  // reference device + 140 pm crop, 2x7 bin
};

RunConfig load_run_config(const std::string& path);
void save_run_config(const std::string& path, const RunConfig& cfg);

// canonical serialization (sorted keys); hash identifies a run's inputs
std::string run_config_json(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

}  // namespace biphoton

#endif
