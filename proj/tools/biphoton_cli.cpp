// Command-line front end: theoretical JSA/JSD computation, tuning-curve
// tables, SPDC/DFG experiment simulation and Schmidt-number analysis of
// seed-sweep records.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "biphoton/analysis.hpp"
#include "biphoton/constants.hpp"
#include "biphoton/instruments.hpp"
#include "biphoton/io_csv.hpp"
#include "biphoton/report.hpp"
#include "biphoton/run_config.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/spectral_model.hpp"
#include "biphoton/version.hpp"

namespace fs = std::filesystem;
using namespace biphoton;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "run configuration (JSON)");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "override the RNG seed")->each([&](const std::string&) {
    opts.seed_set = true;
  });
  cmd->add_option("--format", opts.formats, "export formats: csv, pgm, json")
      ->check(CLI::IsMember({"csv", "pgm", "json"}));
}

RunConfig make_config(const CommonOpts& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig::defaults()
                                           : load_run_config(opts.config_path);
  if (opts.seed_set) cfg.instrument.rng_seed = opts.seed;
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (!opts.formats.empty()) {
    cfg.export_csv = cfg.export_pgm = cfg.export_json = false;
    for (const auto& f : opts.formats) {
      if (f == "csv") cfg.export_csv = true;
      if (f == "pgm") cfg.export_pgm = true;
      if (f == "json") cfg.export_json = true;
    }
  }
  return cfg;
}

std::string hash_hex(const RunConfig& cfg) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

MetaMap provenance_meta(const RunConfig& cfg, const std::string& kind) {
  return {{"kind", kind},
          {"config_hash", hash_hex(cfg)},
          {"seed", std::to_string(cfg.instrument.rng_seed)}};
}

std::string provenance_block(const RunConfig& cfg) {
  return std::string("tool: ") + version_string + "\nconfig_hash: " + hash_hex(cfg) +
         "\nseed: " + std::to_string(cfg.instrument.rng_seed) + "\n";
}

fs::path prepare_out(const RunConfig& cfg) {
  fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

void export_matrix(const RunConfig& cfg, const fs::path& dir, const std::string& stem,
                   const Eigen::MatrixXd& values, const SpectralGrid& grid,
                   const std::string& kind) {
  if (cfg.export_csv)
    write_matrix_csv((dir / (stem + ".csv")).string(), values, grid, provenance_meta(cfg, kind));
  if (cfg.export_pgm)
    write_pgm16((dir / (stem + ".pgm")).string(), values, provenance_meta(cfg, kind));
}

// conditioned record re-expressed as a seed-power-normalized JSD estimate in
// wavelength order, for plotting next to the theory JSD
Eigen::MatrixXd recovered_jsd(const MeasurementRecord& rec) {
  Eigen::MatrixXd out = rec.intensity;
  for (Eigen::Index m = 0; m < out.rows(); ++m)
    if (rec.filter_transmittance[m] > 0.0) out.row(m) /= rec.filter_transmittance[m];
  return out;
}

int cmd_model(const CommonOpts& opts) {
  const RunConfig cfg = make_config(opts);
  const fs::path dir = prepare_out(cfg);

  const JointAmplitude amp = assemble_jsa(cfg.source, cfg.grid, PhaseMode::full_phase);
  const AnalysisReport report = analyze_amplitude(amp);

  export_matrix(cfg, dir, "jsa_real", amp.values.real(), amp.grid, "jsa_real");
  export_matrix(cfg, dir, "jsa_imag", amp.values.imag(), amp.grid, "jsa_imag");
  export_matrix(cfg, dir, "jsd", amp.jsd(), amp.grid, "jsd");

  const std::string text = analysis_text(report, provenance_block(cfg));
  std::ofstream((dir / "model_report.txt").string()) << text;
  if (cfg.export_json)
    std::ofstream((dir / "model_report.json").string())
        << analysis_json(report, hash_hex(cfg), cfg.instrument.rng_seed);
  std::cout << text;
  return 0;
}

int cmd_tune(const CommonOpts& opts, double theta_min_deg, double theta_max_deg, int steps) {
  const RunConfig cfg = make_config(opts);
  const fs::path dir = prepare_out(cfg);
  if (steps < 2) throw std::invalid_argument("tune: need at least 2 steps");

  std::ostringstream table;
  table << "theta_deg,lambda1_nm,lambda2_nm\n";
  for (int i = 0; i < steps; ++i) {
    const double theta_deg =
        theta_min_deg + (theta_max_deg - theta_min_deg) * i / (steps - 1);
    const auto [l1, l2] = tuning_curve(cfg.source, deg_to_rad(theta_deg));
    table << format_double(theta_deg) << ',' << format_double(l1 / nm) << ','
          << format_double(l2 / nm) << '\n';
  }
  std::cout << table.str();
  if (cfg.export_csv) {
    std::ofstream out((dir / "tuning.csv").string());
    out << "# " << version_string << "\n# config_hash: " << hash_hex(cfg)
        << "\n# seed: " << cfg.instrument.rng_seed << "\n";
    out << table.str();
  }
  return 0;
}

int cmd_spdc(const CommonOpts& opts, std::uint64_t pulses) {
  RunConfig cfg = make_config(opts);
  const fs::path dir = prepare_out(cfg);
  if (pulses) cfg.instrument.spdc_pulses = pulses;

  const JointAmplitude amp = assemble_jsa(cfg.source, cfg.grid, PhaseMode::full_phase);
  const CoincidenceHistogram hist = simulate_spdc(amp, cfg.instrument, cfg.instrument.spdc_pulses);

  export_matrix(cfg, dir, "spdc_counts", hist.counts.cast<double>(), hist.grid, "spdc_counts");
  std::ofstream report((dir / "spdc_report.txt").string());
  report << "pulses: " << hist.pulses_simulated << "\nretained: " << hist.retained
         << "\nresolution_nm: " << format_double(spdc_resolution(cfg.instrument) / nm)
         << "\npixel_pitch_nm: " << format_double(spdc_pixel_pitch(cfg.instrument) / nm) << "\n"
         << provenance_block(cfg);
  std::cout << "retained " << hist.retained << " coincidences on " << hist.grid.count1 << "x"
            << hist.grid.count2 << " pixels\n";
  return 0;
}

int cmd_dfg(const CommonOpts& opts) {
  const RunConfig cfg = make_config(opts);
  const fs::path dir = prepare_out(cfg);

  const JointAmplitude amp = assemble_jsa(cfg.source, cfg.grid, PhaseMode::full_phase);
  const MeasurementRecord rec = simulate_dfg(amp, cfg.instrument);

  export_matrix(cfg, dir, "dfg_intensity", rec.intensity, rec.grid, "dfg_intensity");
  write_columns_csv((dir / "dfg_columns.csv").string(), rec.filter_transmittance,
                    rec.seed_power_ref, rec.grid, provenance_meta(cfg, "dfg_columns"));
  std::cout << "seed sweep " << rec.grid.count1 << " x " << rec.grid.count2
            << " samples written to " << dir.string() << "\n";
  return 0;
}

std::vector<PipelineStep> steps_from_flags(const std::vector<double>& crops_nm,
                                           const std::vector<int>& bins) {
  std::vector<PipelineStep> steps;
  for (const double c : crops_nm) steps.push_back(PipelineStep::crop(c * nm));
  if (!bins.empty()) {
    if (bins.size() != 2) throw std::invalid_argument("--bin needs exactly two integers");
    steps.push_back(PipelineStep::bin(bins[0], bins[1]));
  }
  return steps;
}

int cmd_analyze(const CommonOpts& opts, const std::string& intensity_path,
                const std::string& columns_path, const std::vector<double>& crops_nm,
                const std::vector<int>& bins, bool use_config_pipeline) {
  const RunConfig cfg = make_config(opts);
  const fs::path dir = prepare_out(cfg);

  const MatrixFile mat = read_matrix_csv(intensity_path);
  MeasurementRecord rec;
  rec.grid = mat.grid;
  rec.intensity = mat.values;
  if (!columns_path.empty()) {
    const ColumnsFile cols = read_columns_csv(columns_path);
    if (cols.grid.count1 != mat.grid.count1 || cols.grid.axis1_start != mat.grid.axis1_start ||
        cols.grid.axis1_pitch != mat.grid.axis1_pitch)
      throw std::runtime_error("grid mismatch between intensity and columns files");
    rec.filter_transmittance = cols.transmittance;
    rec.seed_power_ref = cols.power_ref;
  } else {
    rec.filter_transmittance = Eigen::VectorXd::Ones(mat.grid.count1);
    rec.seed_power_ref = Eigen::VectorXd::Ones(mat.grid.count1);
  }

  const std::vector<PipelineStep> steps =
      use_config_pipeline ? cfg.pipeline : steps_from_flags(crops_nm, bins);
  const AnalysisReport report = analyze_record(rec, steps);

  const MeasurementRecord conditioned = condition_record(rec, steps);
  export_matrix(cfg, dir, "recovered_jsd", recovered_jsd(conditioned), conditioned.grid,
                "recovered_jsd");

  const std::string text = analysis_text(report, provenance_block(cfg));
  std::ofstream((dir / "analysis_report.txt").string()) << text;
  if (cfg.export_json)
    std::ofstream((dir / "analysis_report.json").string())
        << analysis_json(report, hash_hex(cfg), cfg.instrument.rng_seed);
  std::cout << text;
  return 0;
}

int cmd_replicate(const CommonOpts& opts) {
  const RunConfig cfg = make_config(opts);
  const fs::path dir = prepare_out(cfg);

  double crop_width = 0.14 * nm;
  int bin_x = 2, bin_y = 7;
  for (const auto& step : cfg.pipeline) {
    if (step.kind == PipelineStep::Kind::crop) crop_width = step.crop_width;
    if (step.kind == PipelineStep::Kind::bin) {
      bin_x = step.bin_x;
      bin_y = step.bin_y;
    }
  }

  const JointAmplitude amp = assemble_jsa(cfg.source, cfg.grid, PhaseMode::full_phase);
  MeasurementRecord dfg;
  CoincidenceHistogram spdc;
  const RecoveryReport report =
      end_to_end_recovery(amp, cfg.instrument, crop_width, bin_x, bin_y, &dfg, &spdc);

  export_matrix(cfg, dir, "jsd_theory", amp.jsd(), amp.grid, "jsd");
  export_matrix(cfg, dir, "dfg_intensity", dfg.intensity, dfg.grid, "dfg_intensity");
  write_columns_csv((dir / "dfg_columns.csv").string(), dfg.filter_transmittance,
                    dfg.seed_power_ref, dfg.grid, provenance_meta(cfg, "dfg_columns"));
  export_matrix(cfg, dir, "spdc_counts", spdc.counts.cast<double>(), spdc.grid, "spdc_counts");

  const MeasurementRecord conditioned = condition_record(
      dfg, {PipelineStep::crop(crop_width), PipelineStep::bin(bin_x, bin_y)});
  export_matrix(cfg, dir, "recovered_jsd", recovered_jsd(conditioned), conditioned.grid,
                "recovered_jsd");

  const std::string text = recovery_text(report, provenance_block(cfg));
  std::ofstream((dir / "replicate_report.txt").string()) << text;
  if (cfg.export_json)
    std::ofstream((dir / "replicate_report.json").string())
        << recovery_json(report, hash_hex(cfg), cfg.instrument.rng_seed);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(version_string) +
               " - joint spectral density simulation and Schmidt analysis"};
  app.require_subcommand(1);

  CommonOpts model_opts, tune_opts, spdc_opts, dfg_opts, analyze_opts, replicate_opts;

  auto* model = app.add_subcommand("model", "theoretical JSA/JSD with K and K_min");
  add_common(model, model_opts);

  auto* tune = app.add_subcommand("tune", "phase-matching tuning curve over a pump-angle range");
  add_common(tune, tune_opts);
  double theta_min = 0.5, theta_max = 1.5;
  int steps = 11;
  tune->add_option("--theta-min", theta_min, "start angle (deg)");
  tune->add_option("--theta-max", theta_max, "end angle (deg)");
  tune->add_option("--steps", steps, "number of table rows");

  auto* spdc = app.add_subcommand("spdc", "coincidence-histogram simulation");
  add_common(spdc, spdc_opts);
  std::uint64_t pulses = 0;
  spdc->add_option("--pulses", pulses, "pump pulses to simulate");

  auto* dfg = app.add_subcommand("dfg", "seed-sweep (stimulated) simulation");
  add_common(dfg, dfg_opts);

  auto* analyze = app.add_subcommand("analyze", "Schmidt analysis of a measurement record");
  add_common(analyze, analyze_opts);
  std::string intensity_path, columns_path;
  std::vector<double> crops_nm;
  std::vector<int> bins;
  bool use_config_pipeline = false;
  analyze->add_option("--intensity", intensity_path, "intensity matrix CSV")->required();
  analyze->add_option("--columns", columns_path, "filter/seed-power columns CSV");
  analyze->add_option("--crop", crops_nm, "crop frame width (nm), repeatable");
  analyze->add_option("--bin", bins, "bin sizes bx by")->expected(2);
  analyze->add_flag("--pipeline-from-config", use_config_pipeline,
                    "use the pipeline from --config instead of flags");

  auto* replicate =
      app.add_subcommand("replicate", "full theory/DFG/SPDC comparison with default parameters");
  add_common(replicate, replicate_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (model->parsed()) return cmd_model(model_opts);
    if (tune->parsed()) return cmd_tune(tune_opts, theta_min, theta_max, steps);
    if (spdc->parsed()) return cmd_spdc(spdc_opts, pulses);
    if (dfg->parsed()) return cmd_dfg(dfg_opts);
    if (analyze->parsed())
      return cmd_analyze(analyze_opts, intensity_path, columns_path, crops_nm, bins,
                         use_config_pipeline);
    if (replicate->parsed()) return cmd_replicate(replicate_opts);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& c : msg)
      if (c == '\n') c = ' ';
    std::cerr << "error: " << msg << "\n";
    return 1;
  }
  return 0;
}
