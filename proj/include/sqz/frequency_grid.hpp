#pragma once

#include "sqz/types.hpp"

namespace sqz {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Uniform grid in angular frequency covering [lambda_min, lambda_max].
// Point 0 is the lowest frequency (longest wavelength); quadrature weight
// for mode-function integrals is the constant spacing.
struct FrequencyGrid {
  Index n_points = 0;
  double lambda_min_nm = 0.0;
  double lambda_max_nm = 0.0;
  Arr omega;   // rad/s, strictly increasing
  double spacing = 0.0;

  FrequencyGrid() = default;
  FrequencyGrid(double lambda_min, double lambda_max, Index n);

  double wavelength_nm(Index i) const { return 2.0 * M_PI * kSpeedOfLight / omega[i] * 1e9; }
  Arr wavelengths_nm() const;
};

inline double omega_from_lambda_nm(double lambda_nm) {
  return 2.0 * M_PI * kSpeedOfLight / (lambda_nm * 1e-9);
}

inline double lambda_nm_from_omega(double omega) {
  return 2.0 * M_PI * kSpeedOfLight / omega * 1e9;
}

} // namespace sqz
