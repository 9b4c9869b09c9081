#include "biphoton/run_config.hpp"

#include <fstream>

#include <json.hpp>

#include "biphoton/constants.hpp"

namespace biphoton {

using nlohmann::json;

namespace {

json source_to_json(const SourceModel& m) {
  return json{{"pump_center_wavelength_nm", m.pump_center_wavelength / nm},
              {"pump_bandwidth_ghz", m.pump_bandwidth / (two_pi * GHz)},
              {"waveguide_length_mm", m.waveguide_length / mm},
              {"pump_waist_mm", m.pump_waist / mm},
              {"incidence_angle_deg", rad_to_deg(m.incidence_angle)},
              {"n_te", m.n_te},
              {"n_tm", m.n_tm},
              {"r_te", m.r_te},
              {"r_tm", m.r_tm},
              {"microcavity_center_nm", m.microcavity_center / nm},
              {"microcavity_fwhm_nm", m.microcavity_fwhm / nm},
              {"facet_peak_te_nm", m.facet_peak_te / nm},
              {"facet_peak_tm_nm", m.facet_peak_tm / nm},
              {"n_te_slope_per_rads", m.n_te_slope},
              {"n_tm_slope_per_rads", m.n_tm_slope}};
}

SourceModel source_from_json(const json& j) {
  SourceModel m = default_source_model();
  if (j.contains("pump_center_wavelength_nm"))
    m.pump_center_wavelength = j["pump_center_wavelength_nm"].get<double>() * nm;
  if (j.contains("pump_bandwidth_ghz"))
    m.pump_bandwidth = j["pump_bandwidth_ghz"].get<double>() * two_pi * GHz;
  if (j.contains("waveguide_length_mm"))
    m.waveguide_length = j["waveguide_length_mm"].get<double>() * mm;
  if (j.contains("pump_waist_mm")) m.pump_waist = j["pump_waist_mm"].get<double>() * mm;
  if (j.contains("incidence_angle_deg"))
    m.incidence_angle = deg_to_rad(j["incidence_angle_deg"].get<double>());
  if (j.contains("n_te")) m.n_te = j["n_te"].get<double>();
  if (j.contains("n_tm")) m.n_tm = j["n_tm"].get<double>();
  if (j.contains("r_te")) m.r_te = j["r_te"].get<double>();
  if (j.contains("r_tm")) m.r_tm = j["r_tm"].get<double>();
  if (j.contains("microcavity_center_nm"))
    m.microcavity_center = j["microcavity_center_nm"].get<double>() * nm;
  if (j.contains("microcavity_fwhm_nm"))
    m.microcavity_fwhm = j["microcavity_fwhm_nm"].get<double>() * nm;
  if (j.contains("facet_peak_te_nm")) m.facet_peak_te = j["facet_peak_te_nm"].get<double>() * nm;
  if (j.contains("facet_peak_tm_nm")) m.facet_peak_tm = j["facet_peak_tm_nm"].get<double>() * nm;
  if (j.contains("n_te_slope_per_rads")) m.n_te_slope = j["n_te_slope_per_rads"].get<double>();
  if (j.contains("n_tm_slope_per_rads")) m.n_tm_slope = j["n_tm_slope_per_rads"].get<double>();
  return m;
}

json grid_to_json(const SpectralGrid& g) {
  return json{{"axis1_start_nm", g.axis1_start / nm}, {"axis1_pitch_nm", g.axis1_pitch / nm},
              {"axis1_count", g.count1},              {"axis2_start_nm", g.axis2_start / nm},
              {"axis2_pitch_nm", g.axis2_pitch / nm}, {"axis2_count", g.count2},
              {"linearized", g.linearized}};
}

SpectralGrid grid_from_json(const json& j) {
  SpectralGrid g = default_grid();
  if (j.contains("axis1_start_nm")) g.axis1_start = j["axis1_start_nm"].get<double>() * nm;
  if (j.contains("axis1_pitch_nm")) g.axis1_pitch = j["axis1_pitch_nm"].get<double>() * nm;
  if (j.contains("axis1_count")) g.count1 = j["axis1_count"].get<int>();
  if (j.contains("axis2_start_nm")) g.axis2_start = j["axis2_start_nm"].get<double>() * nm;
  if (j.contains("axis2_pitch_nm")) g.axis2_pitch = j["axis2_pitch_nm"].get<double>() * nm;
  if (j.contains("axis2_count")) g.count2 = j["axis2_count"].get<int>();
  if (j.contains("linearized")) g.linearized = j["linearized"].get<bool>();
  return g;
}

json instrument_to_json(const InstrumentConfig& c) {
  return json{{"pair_probability", c.pair_probability},
              {"detection_efficiency", c.detection_efficiency},
              {"jitter_pp_ps", c.jitter_pp / ps},
              {"jitter_apd_ps", c.jitter_apd / ps},
              {"jitter_tdc_ps", c.jitter_tdc / ps},
              {"dispersion_ps_per_nm", c.dispersion_dcf / (ps / nm)},
              {"spdc_pulses", c.spdc_pulses},
              {"dfg_seed_step_nm", c.dfg_seed_step / nm},
              {"dfg_analyzer_resolution_nm", c.dfg_analyzer_resolution / nm},
              {"dfg_analyzer_points", c.dfg_analyzer_points},
              {"filter_center_nm", c.filter_center / nm},
              {"filter_fwhm_nm", c.filter_fwhm / nm},
              {"seed_power", c.seed_power},
              {"noise_floor", c.noise_floor},
              {"rng_seed", c.rng_seed}};
}

InstrumentConfig instrument_from_json(const json& j) {
  InstrumentConfig c;
  if (j.contains("pair_probability")) c.pair_probability = j["pair_probability"].get<double>();
  if (j.contains("detection_efficiency"))
    c.detection_efficiency = j["detection_efficiency"].get<double>();
  if (j.contains("jitter_pp_ps")) c.jitter_pp = j["jitter_pp_ps"].get<double>() * ps;
  if (j.contains("jitter_apd_ps")) c.jitter_apd = j["jitter_apd_ps"].get<double>() * ps;
  if (j.contains("jitter_tdc_ps")) c.jitter_tdc = j["jitter_tdc_ps"].get<double>() * ps;
  if (j.contains("dispersion_ps_per_nm"))
    c.dispersion_dcf = j["dispersion_ps_per_nm"].get<double>() * ps / nm;
  if (j.contains("spdc_pulses")) c.spdc_pulses = j["spdc_pulses"].get<std::uint64_t>();
  if (j.contains("dfg_seed_step_nm")) c.dfg_seed_step = j["dfg_seed_step_nm"].get<double>() * nm;
  if (j.contains("dfg_analyzer_resolution_nm"))
    c.dfg_analyzer_resolution = j["dfg_analyzer_resolution_nm"].get<double>() * nm;
  if (j.contains("dfg_analyzer_points"))
    c.dfg_analyzer_points = j["dfg_analyzer_points"].get<int>();
  if (j.contains("filter_center_nm")) c.filter_center = j["filter_center_nm"].get<double>() * nm;
  if (j.contains("filter_fwhm_nm")) c.filter_fwhm = j["filter_fwhm_nm"].get<double>() * nm;
  if (j.contains("seed_power")) c.seed_power = j["seed_power"].get<double>();
  if (j.contains("noise_floor")) c.noise_floor = j["noise_floor"].get<double>();
  if (j.contains("rng_seed")) c.rng_seed = j["rng_seed"].get<std::uint64_t>();
  return c;
}

json pipeline_to_json(const std::vector<PipelineStep>& steps) {
  json arr = json::array();
  for (const auto& s : steps) {
    if (s.kind == PipelineStep::Kind::crop)
      arr.push_back(json{{"crop_nm", s.crop_width / nm}});
    else
      arr.push_back(json{{"bin", {s.bin_x, s.bin_y}}});
  }
  return arr;
}

std::vector<PipelineStep> pipeline_from_json(const json& arr) {
  std::vector<PipelineStep> steps;
  for (const auto& s : arr) {
    if (s.contains("crop_nm")) {
      const double width = s["crop_nm"].get<double>();
      if (width < 0.0) throw std::invalid_argument("pipeline: crop width must be >= 0");
      steps.push_back(PipelineStep::crop(width * nm));
    } else if (s.contains("bin")) {
      const int bx = s["bin"][0].get<int>();
      const int by = s["bin"][1].get<int>();
      if (bx < 1 || by < 1) throw std::invalid_argument("pipeline: bin sizes must be >= 1");
      steps.push_back(PipelineStep::bin(bx, by));
    } else {
      throw std::invalid_argument("pipeline step must be crop_nm or bin");
    }
  }
  return steps;
}

json config_to_json(const RunConfig& cfg) {
  return json{{"source", source_to_json(cfg.source)},
              {"grid", grid_to_json(cfg.grid)},
              {"instrument", instrument_to_json(cfg.instrument)},
              {"pipeline", pipeline_to_json(cfg.pipeline)},
              {"output_dir", cfg.output_dir},
              {"formats",
               {{"csv", cfg.export_csv}, {"pgm", cfg.export_pgm}, {"json", cfg.export_json}}}};
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.source = default_source_model();
  cfg.grid = default_grid();
  cfg.instrument = InstrumentConfig{};
  cfg.pipeline = {PipelineStep::crop(0.14 * nm), PipelineStep::bin(2, 7)};
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j = json::parse(in);
  RunConfig cfg = RunConfig::defaults();
  // a bare flat source-parameter file is accepted as a config too
  if (!j.contains("source") && !j.contains("grid") && !j.contains("instrument") &&
      j.contains("pump_center_wavelength_nm"))
    j = json{{"source", j}};
  if (j.contains("source")) cfg.source = source_from_json(j["source"]);
  if (j.contains("grid")) cfg.grid = grid_from_json(j["grid"]);
  if (j.contains("instrument")) cfg.instrument = instrument_from_json(j["instrument"]);
  if (j.contains("pipeline")) cfg.pipeline = pipeline_from_json(j["pipeline"]);
  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("formats")) {
    const auto& f = j["formats"];
    if (f.contains("csv")) cfg.export_csv = f["csv"].get<bool>();
    if (f.contains("pgm")) cfg.export_pgm = f["pgm"].get<bool>();
    if (f.contains("json")) cfg.export_json = f["json"].get<bool>();
  }
  cfg.source.validate();
  cfg.grid.validate();
  cfg.instrument.validate();
  return cfg;
}

void save_run_config(const std::string& path, const RunConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << config_to_json(cfg).dump(2) << "\n";
}

std::string run_config_json(const RunConfig& cfg) { return config_to_json(cfg).dump(); }

std::uint64_t config_hash(const RunConfig& cfg) {
  // FNV-1a over the physics inputs; output location and formats do not
  // change what was computed
  const std::string s = json{{"source", source_to_json(cfg.source)},
                             {"grid", grid_to_json(cfg.grid)},
                             {"instrument", instrument_to_json(cfg.instrument)},
                             {"pipeline", pipeline_to_json(cfg.pipeline)}}
                            .dump();
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace biphoton
