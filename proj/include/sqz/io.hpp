#pragma once

#include <string>

#include "sqz/entanglement.hpp"
#include "sqz/experiment_config.hpp"
#include "sqz/gaussian_state.hpp"
#include "sqz/jsa.hpp"
#include "sqz/mode_basis.hpp"
#include "sqz/pipeline.hpp"
#include "sqz/pulse_train.hpp"
#include "sqz/tomography.hpp"

namespace sqz {

// Covariance matrices: {"n_modes": int, "basis": string, "Vqq": [[..]],
// "Vpp": [[..]]}, row-major full matrices.
std::string gaussian_state_to_json(const GaussianState& state);
GaussianState gaussian_state_from_json(const std::string& text);
void write_gaussian_state(const std::string& path, const GaussianState& state);
GaussianState read_gaussian_state(const std::string& path);

// JSA: CSV rows (omega_s, omega_i, Re A, Im A).
void write_jsa_csv(const std::string& path, const JointSpectralAmplitude& jsa);

// Schmidt spectrum: {"lambdas": [...], "K": x, "sellmeier_set": "..."}.
void write_schmidt_json(const std::string& path, const SchmidtDecomposition& dec);

// Mode basis: wavelength column plus one column per mode.
void write_basis_csv(const std::string& path, const ModeBasis& basis);

// Variance data: rows (kind, i, j, var_q, var_p, sigma_q, sigma_p) with
// kind in {single, pair}; j is empty for singles.
void write_variance_dataset_csv(const std::string& path, const VarianceDataset& data);
VarianceDataset read_variance_dataset_csv(const std::string& path);

// PPT scan: CSV (mask, side_a, side_b, ppt_value, entangled, band_class),
// ascending ppt_value (the plot-ready Fig.-4 layout), plus a JSON summary.
void write_ppt_scan_csv(const std::string& path, const PPTScan& scan);
std::string ppt_summary_json(const PPTScan& scan, const std::string& config_text);
void write_ppt_summary_json(const std::string& path, const PPTScan& scan,
                            const std::string& config_text);

// Pulse-train record: little-endian binary, header magic "PTRN", version
// u32, length-prefixed config JSON, then float64 samples. Per-pulse truth
// goes to a sidecar CSV (pulse_index, theta, x_m).
void write_pulse_record(const std::string& path, const PulseTrainRecord& record);
PulseTrainRecord read_pulse_record(const std::string& path);
void write_pulse_truth_csv(const std::string& path, const PulseTrainRecord& record);

std::string squeezing_table_json(const std::vector<SqueezingReportEntry>& table);
std::string pulse_estimate_json(const PulseStage& stage, const std::string& config_text);
std::string state_stage_json(const StateStage& stage, const std::string& config_text);
std::string tomography_json(const TomographyStage& stage, const std::string& config_text);

void write_text(const std::string& path, const std::string& text);

} // namespace sqz
