#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqz/frequency_grid.hpp"
#include "sqz/gaussian_state.hpp"
#include "sqz/types.hpp"

namespace sqz {

// Ordered set of real spectral mode functions sampled on a grid. Rows are
// orthonormal under the grid quadrature weight: functions * functions^T *
// grid.spacing = I.
struct ModeBasis {
  FrequencyGrid grid;
  Mat functions;   // m x n, one row per mode
  std::string label;
  std::vector<std::string> warnings;

  Index n_modes() const { return functions.rows(); }
  Mat gram() const { return functions * functions.transpose() * grid.spacing; }
};

struct FrexelSpec {
  int n_bands = 8;
  std::vector<double> band_edges_nm;   // length n_bands + 1, strictly increasing

  void validate() const;
};

// Hermite-Gauss family in frequency; hg0_fwhm_nm is the FWHM of |HG0|^2.
// Analytic functions are re-orthonormalized on the grid by QR. A truncation
// warning is attached per mode whose grid-edge amplitude exceeds 1e-3 of its
// peak.
ModeBasis hermite_gauss_basis(const FrequencyGrid& grid, double center_wavelength_nm,
                              double hg0_fwhm_nm, int n_modes);

// Band indicator modes, optionally weighted by an LO amplitude spectrum
// sampled on the grid; modes are orthogonal by disjoint support.
ModeBasis frexel_basis(const FrequencyGrid& grid, const FrexelSpec& spec,
                       const Arr* lo_amplitude = nullptr);

// Optical power per band, proportional to the band integral of |LO|^2.
Vec frexel_band_powers(const FrequencyGrid& grid, const FrexelSpec& spec,
                       const Arr& lo_amplitude);

// O_{kj} = sum_grid a_k b_j w. Rows have norm <= 1 when b spans a's support.
Mat overlap_matrix(const ModeBasis& a, const ModeBasis& b);

// Change of measured mode set: V_a = O (V_b - I) O^T + I on each block.
// Modes outside the projected span contribute vacuum.
GaussianState project_state(const GaussianState& state, const Mat& overlap,
                            const std::string& new_basis_label);

} // namespace sqz
