#pragma once

#include <string>
#include <vector>

#include "sqz/entanglement.hpp"
#include "sqz/experiment_config.hpp"
#include "sqz/gaussian_state.hpp"
#include "sqz/jsa.hpp"
#include "sqz/mode_basis.hpp"
#include "sqz/pulse_train.hpp"
#include "sqz/tomography.hpp"

namespace sqz {

// LO amplitude: Gaussian source spectrum (intensity FWHM fwhm_nm) cut by
// the pulse-shaper passband window_nm around the center.
Arr lo_spectrum(const FrequencyGrid& grid, double center_nm, double fwhm_nm, double window_nm);

struct JsaStage {
  JointSpectralAmplitude jsa;
  SchmidtDecomposition dec;
};
// separable_test replaces the physical model by a flat pump with zero
// mismatch, whose single Schmidt mode pins the K = 1 limit.
JsaStage run_jsa_stage(const ExperimentConfig& cfg, bool separable_test = false);

// Calibrated squeezed-state model and its two measured views: the HG-mode
// squeezing table (paper Table-1 style) and the frexel-basis state.
struct StateStage {
  SchmidtDecomposition dec;
  double gain = 0.0;
  Index n_active = 0;                              // supermodes with lambda/lambda0 > 0.1
  GaussianState supermode_state;                   // measured (loss applied), diagonal
  std::vector<SqueezingReportEntry> hg_table;      // via HG-mode projection, loss applied
  GaussianState frexel_state;                      // via frexel projection, loss applied
  Vec band_powers;                                 // LO power per frexel, max-normalized
};
StateStage run_state_stage(const ExperimentConfig& cfg);

struct TomographyStage {
  VarianceDataset dataset;
  ReconstructionResult reconstruction;
  SupermodeRecovery recovery;
  UncertaintyReport uncertainty;
  SupermodeRecovery reference_recovery;   // recovery of the noiseless model state
  bool simulated = false;
};
TomographyStage run_tomography_stage(const ExperimentConfig& cfg);
TomographyStage run_tomography_stage(const VarianceDataset& data);

struct PulseStage {
  PulseTrainRecord record;
  WindowChoice window;
  IsolationCheck isolation;
  SqueezingEstimate estimate;
  double truth_squeeze_dB = 0.0;
  double truth_antisqueeze_dB = 0.0;
};
PulseStage run_pulse_stage(const ExperimentConfig& cfg);

PPTScan run_ppt_stage(const GaussianState& state);

} // namespace sqz
