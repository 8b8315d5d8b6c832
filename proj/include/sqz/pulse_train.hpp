#pragma once

#include <cstdint>
#include <functional>

#include "sqz/types.hpp"

namespace sqz {

struct PulseTrainConfig {
  double rep_rate_hz = 156e6;
  int samples_per_pulse = 256;
  double detector_bandwidth_hz = 300e6;
  double electronic_noise_dB = 10.0;   // clearance of shot noise over electronic noise
  double cmrr_dB = 64.0;               // residual common-mode pulse amplitude, -cmrr dB
  long piezo_period_pulses = 20000;
  long duration_pulses = 200000;       // total pulses, vacuum calibration prefix included
  long vacuum_pulses = 0;              // 0 = auto: max(1024, duration/8)
  double pink_noise_fraction = 0.0;    // robustness hook: slow technical noise on x_m
  std::uint64_t seed = 1;

  long resolved_vacuum_pulses() const;
  void validate() const;
};

// Synthesized photocurrent with per-pulse ground truth. The first
// n_vacuum_pulses carry V = 1 (shot-noise reference, theta = 0); the
// remainder sweeps the LO phase as a triangle over piezo_period_pulses.
struct PulseTrainRecord {
  Arr samples;     // length duration_pulses * samples_per_pulse, shot-normalized units
  Arr theta;       // per pulse
  Arr x_truth;     // per pulse
  long n_vacuum_pulses = 0;
  PulseTrainConfig config;

  long n_pulses() const { return config.duration_pulses; }
  long n_signal_pulses() const { return config.duration_pulses - n_vacuum_pulses; }
};

PulseTrainRecord synthesize_train(const std::function<double(double)>& variance_of_phase,
                                  const PulseTrainConfig& config);

// Window sums per pulse, normalized so the vacuum-segment variance is 1.
// Returns one value per pulse (vacuum prefix included).
Arr extract_pulse_quadratures(const PulseTrainRecord& record, int window_offset,
                              int window_length);

struct WindowChoice {
  int offset = 0;
  int length = 0;
  double shot_to_electronic = 0.0;   // window shot gain^2 over electronic noise power
};

// Grid search over (offset, length) on the vacuum segment: minimize the
// electronic-noise penalty E/G^2 subject to the isolation check passing;
// ties resolved toward larger capture, then shorter windows.
WindowChoice optimize_window(const PulseTrainRecord& record);

struct IsolationCheck {
  double rho1 = 0.0;   // normalized lag-1 autocorrelation
  long n = 0;
  bool pass = false;   // |rho1| < 3 / sqrt(n)
};

IsolationCheck verify_pulse_isolation(const Arr& values);

struct SqueezingEstimate {
  double squeeze_dB = 0.0;
  double antisqueeze_dB = 0.0;
  double standard_error_dB = 0.0;
  int window_offset = 0;
  int window_length = 0;
  long n_pulses_used = 0;
};

// Phase-binned variance estimate against a vacuum reference. Values are
// grouped into n_bins bins of theta mod pi; the extremal-variance bins give
// the squeezed and antisqueezed quadratures, intermediate bins are
// discarded. Standard error follows the chi-squared distribution of the
// sample variance.
SqueezingEstimate estimate_squeezing(const Arr& values, const Arr& phases,
                                     const Arr& vacuum_values, int n_bins = 24);

} // namespace sqz
