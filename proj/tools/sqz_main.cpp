// Command-line front end: jsa, state, tomography, ppt and pulses stages
// with a shared config file and structured outputs under --out.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sqz/errors.hpp"
#include "sqz/io.hpp"
#include "sqz/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_dir = ".";
  long seed = -1;
  bool quiet = false;
};

sqz::ExperimentConfig load_config(const GlobalOptions& opt) {
  sqz::ExperimentConfig cfg = opt.config_path.empty()
                                  ? sqz::ExperimentConfig::defaults()
                                  : sqz::ExperimentConfig::from_file(opt.config_path);
  if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
  return cfg;
}

std::string out_path(const GlobalOptions& opt, const std::string& name) {
  fs::create_directories(opt.out_dir);
  return (fs::path(opt.out_dir) / name).string();
}

void say(const GlobalOptions& opt, const std::string& msg) {
  if (!opt.quiet) std::cout << msg << "\n";
}

int run_jsa(const GlobalOptions& opt) {
  const sqz::ExperimentConfig cfg = load_config(opt);
  const sqz::JsaStage stage = sqz::run_jsa_stage(cfg);
  sqz::write_jsa_csv(out_path(opt, "jsa.csv"), stage.jsa);
  sqz::write_schmidt_json(out_path(opt, "schmidt.json"), stage.dec);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "K = %.4f", stage.dec.schmidt_K);
  say(opt, buf);
  return 0;
}

int run_state(const GlobalOptions& opt) {
  const sqz::ExperimentConfig cfg = load_config(opt);
  const sqz::StateStage stage = sqz::run_state_stage(cfg);
  sqz::write_text(out_path(opt, "state.json"), sqz::state_stage_json(stage, cfg.to_text()));
  sqz::write_gaussian_state(out_path(opt, "frexel_state.json"), stage.frexel_state);
  if (!opt.quiet) {
    std::printf("gain = %.6f, active supermodes = %ld\n", stage.gain,
                static_cast<long>(stage.n_active));
    std::printf("%-6s %12s %12s\n", "mode", "sqz (dB)", "asqz (dB)");
    for (const auto& e : stage.hg_table)
      std::printf("HG%-4d %12.3f %12.3f\n", e.mode_index, e.squeeze_dB, e.antisqueeze_dB);
  }
  return 0;
}

int run_tomography(const GlobalOptions& opt, const std::string& dataset_path) {
  const sqz::ExperimentConfig cfg = load_config(opt);
  sqz::TomographyStage stage;
  if (dataset_path.empty()) {
    stage = sqz::run_tomography_stage(cfg);
    sqz::write_variance_dataset_csv(out_path(opt, "dataset.csv"), stage.dataset);
  } else {
    stage = sqz::run_tomography_stage(sqz::read_variance_dataset_csv(dataset_path));
  }
  sqz::write_text(out_path(opt, "tomography.json"), sqz::tomography_json(stage, cfg.to_text()));
  sqz::write_gaussian_state(out_path(opt, "reconstructed_state.json"),
                            stage.reconstruction.state);
  if (!opt.quiet) {
    std::printf("physical: %s (min eig %.3e)\n",
                stage.reconstruction.physicality.physical ? "yes" : "NO",
                stage.reconstruction.physicality.min_eigenvalue);
    std::printf("%-6s %12s %12s %6s\n", "mode", "sqz (dB)", "asqz (dB)", "sign");
    for (std::size_t k = 0; k < stage.recovery.eigen_dB.size(); ++k) {
      const auto& e = stage.recovery.eigen_dB[k];
      std::printf("%-6d %12.3f %12.3f %6d\n", e.mode_index, e.squeeze_dB, e.antisqueeze_dB,
                  stage.recovery.relative_signs[k]);
    }
  }
  return 0;
}

int run_ppt(const GlobalOptions& opt, const std::string& state_path) {
  const sqz::ExperimentConfig cfg = load_config(opt);
  sqz::GaussianState state =
      state_path.empty() ? sqz::run_state_stage(cfg).frexel_state
                         : sqz::read_gaussian_state(state_path);
  const sqz::PPTScan scan = sqz::run_ppt_stage(state);
  sqz::write_ppt_scan_csv(out_path(opt, "ppt.csv"), scan);
  sqz::write_ppt_summary_json(out_path(opt, "ppt.json"), scan, cfg.to_text());
  if (!opt.quiet) {
    std::printf("%d of %zu bipartitions entangled\n", scan.n_entangled, scan.results.size());
    for (const auto& [cls, count] : scan.class_counts)
      std::printf("%-12s count %3d median %.6f\n", sqz::band_class_name(cls).c_str(), count,
                  scan.class_medians.at(cls));
  }
  return 0;
}

int run_pulses(const GlobalOptions& opt) {
  const sqz::ExperimentConfig cfg = load_config(opt);
  const sqz::PulseStage stage = sqz::run_pulse_stage(cfg);
  sqz::write_pulse_record(out_path(opt, "pulses.ptrn"), stage.record);
  sqz::write_pulse_truth_csv(out_path(opt, "pulses_truth.csv"), stage.record);
  sqz::write_text(out_path(opt, "pulses.json"), sqz::pulse_estimate_json(stage, cfg.to_text()));
  if (!opt.quiet) {
    std::printf("window offset %d length %d, lag-1 corr %.5f (%s)\n", stage.window.offset,
                stage.window.length, stage.isolation.rho1,
                stage.isolation.pass ? "pass" : "FAIL");
    std::printf("squeeze %.3f dB, antisqueeze %.3f dB, stderr %.4f dB\n",
                stage.estimate.squeeze_dB, stage.estimate.antisqueeze_dB,
                stage.estimate.standard_error_dB);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"multimode squeezed-light simulation toolkit"};
  app.require_subcommand(1);

  GlobalOptions opt;
  app.add_option("--config", opt.config_path, "experiment config file");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--seed", opt.seed, "override random seed");
  app.add_flag("--quiet", opt.quiet, "suppress progress output");

  auto* jsa = app.add_subcommand("jsa", "joint spectral amplitude and Schmidt spectrum");
  auto* state = app.add_subcommand("state", "calibrated supermode and frexel states");
  std::string dataset_path;
  auto* tomo = app.add_subcommand("tomography", "covariance reconstruction and mode recovery");
  tomo->add_option("--dataset", dataset_path, "variance dataset CSV (otherwise simulated)");
  std::string state_path;
  auto* ppt = app.add_subcommand("ppt", "PPT scan over all bipartitions");
  ppt->add_option("--state", state_path, "state JSON (otherwise the calibrated frexel state)");
  auto* pulses = app.add_subcommand("pulses", "pulse train synthesis and estimation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (jsa->parsed()) return run_jsa(opt);
    if (state->parsed()) return run_state(opt);
    if (tomo->parsed()) return run_tomography(opt, dataset_path);
    if (ppt->parsed()) return run_ppt(opt, state_path);
    if (pulses->parsed()) return run_pulses(opt);
  } catch (const sqz::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sqz::infeasible_target_error& e) {
    std::cerr << "infeasible calibration: " << e.what() << "\n";
    return 3;
  } catch (const sqz::incomplete_dataset_error& e) {
    std::cerr << "incomplete data: " << e.what() << "\n";
    return 4;
  } catch (const sqz::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
