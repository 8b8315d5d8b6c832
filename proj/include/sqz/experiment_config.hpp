#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqz/jsa.hpp"
#include "sqz/mode_basis.hpp"
#include "sqz/pulse_train.hpp"

namespace sqz {

// One config file drives every pipeline stage; defaults reproduce the
// paper-scale setup (156 MHz train, 397.5/0.7 nm pump, 3.19 um poling,
// 1 mm guide at 89.1 C, 8 x 5 nm frexels, -0.47 dB target on mode 0).
// Format: INI-style sections with key = value lines, lists comma-separated.
struct ExperimentConfig {
  // [pump]
  double pump_center_nm = 397.5;
  double pump_fwhm_nm = 0.7;

  // [phase_matching]
  double poling_um = 3.19;
  double length_mm = 1.0;
  double temperature_C = 89.1;
  std::string sellmeier_set = Sellmeier::kDefaultSet;

  // [grid]
  double lambda_min_nm = 695.0;
  double lambda_max_nm = 895.0;
  int n_points = 512;

  // [modes]
  int n_supermodes = 21;       // length of the reported HG squeezing table
  double hg0_fwhm_nm = 18.0;
  std::vector<double> frexel_edges_nm = {775, 780, 785, 790, 795, 800, 805, 810, 815};
  double lo_fwhm_nm = 42.0;    // source spectrum feeding the pulse shaper
  double lo_window_nm = 40.0;  // shaper passband around degeneracy

  // [calibration]
  double target_hg0_dB = -0.47;
  double eta_total = 0.7;

  // [pulse]
  double rep_rate_hz = 156e6;
  int samples_per_pulse = 256;
  double detector_bandwidth_hz = 300e6;
  double clearance_dB = 10.0;
  double cmrr_dB = 64.0;
  long n_pulses = 200000;
  long piezo_period_pulses = 20000;
  long vacuum_pulses = 0;   // 0 = auto
  std::uint64_t seed = 1;
  double truth_squeeze_dB = -0.47;      // sideband truth pair for the synthesized mode
  double truth_antisqueeze_dB = 0.55;

  // [noise]
  double variance_noise_dB = 0.05;

  static ExperimentConfig defaults() { return ExperimentConfig{}; }
  static ExperimentConfig from_file(const std::string& path);

  void validate() const;

  FrequencyGrid make_grid() const;
  PumpEnvelope make_pump() const;
  PhaseMatchingSpec make_phase_matching() const;
  FrexelSpec make_frexel_spec() const;
  PulseTrainConfig make_pulse_config() const;
  double degeneracy_nm() const { return 2.0 * pump_center_nm; }

  std::string to_text() const;   // resolved key = value form, for provenance
};

} // namespace sqz
