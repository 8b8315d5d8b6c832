#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sqz/frequency_grid.hpp"
#include "sqz/mode_basis.hpp"
#include "sqz/sellmeier.hpp"
#include "sqz/types.hpp"

namespace sqz {

struct PumpEnvelope {
  double center_wavelength_nm = 397.5;
  double fwhm_nm = 0.7;   // intensity FWHM
};

struct PhaseMatchingSpec {
  double poling_period_um = 3.19;
  double interaction_length_mm = 1.0;
  double temperature_C = 89.1;
  std::string sellmeier_set = Sellmeier::kDefaultSet;
};

struct JointSpectralAmplitude {
  FrequencyGrid grid;
  CMat amplitude;   // A(omega_s, omega_i), Frobenius norm 1
};

// Bloch-Messiah reduction of the two-photon amplitude. For the real
// symmetric type-0 JSA this is the eigendecomposition: lambdas are the
// singular values (full spectrum, sum of squares 1) and signs carry the
// eigenvalue signs, i.e. the relative phase of the squeezing ellipse of
// each supermode. modes holds the leading n_keep supermode functions.
struct SchmidtDecomposition {
  Vec lambdas;
  Eigen::VectorXi signs;
  ModeBasis modes;
  double schmidt_K = 1.0;
  std::string sellmeier_set;
};

// Quasi-phase-matched mismatch k_p(w_s + w_i) - k_s(w_s) - k_i(w_i) -
// 2 pi / poling, in rad/m.
double phase_mismatch(const PhaseMatchingSpec& pm, const Sellmeier& sellmeier,
                      double omega_s, double omega_i);

JointSpectralAmplitude compute_jsa(const PumpEnvelope& pump, const PhaseMatchingSpec& pm,
                                   const FrequencyGrid& grid);

// Test hook: the same pump-envelope * sinc construction with an arbitrary
// mismatch function (rad/m).
JointSpectralAmplitude compute_jsa_with_mismatch(
    const PumpEnvelope& pump, const FrequencyGrid& grid,
    const std::function<double(double, double)>& mismatch, double interaction_length_mm);

SchmidtDecomposition schmidt_decompose(const JointSpectralAmplitude& jsa, Index n_keep);

// r_j = gain * lambda_j, j < n_modes (magnitudes; non-increasing).
std::vector<double> squeezing_spectrum(const SchmidtDecomposition& dec, double gain,
                                       Index n_modes);

// As above but carrying the ellipse signs; this is what squeezed-state
// construction consumes.
std::vector<double> signed_squeezing_spectrum(const SchmidtDecomposition& dec, double gain,
                                              Index n_modes);

// Gain such that mode 0 measured after loss eta equals target_dB within
// 1e-6 dB. Throws infeasible_target_error when target_dB is at or below
// the loss floor 10 log10(1 - eta).
double calibrate_gain(const SchmidtDecomposition& dec, double target_dB, double eta);

// Modes with lambda_j / lambda_0 above this ratio count as active; used as
// the default truncation when building states from a decomposition.
inline constexpr double kActiveModeRatio = 0.1;
Index count_active_modes(const SchmidtDecomposition& dec);

} // namespace sqz
