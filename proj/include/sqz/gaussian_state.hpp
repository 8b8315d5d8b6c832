#pragma once

#include <string>
#include <vector>

#include "sqz/types.hpp"

namespace sqz {

// Zero-mean multimode Gaussian state, vacuum-normalized covariance
// (shot noise = 1). The pump is taken real, so the q-p cross block
// vanishes and V = diag(Vqq, Vpp) in the (q_1..q_n, p_1..p_n) ordering.
struct GaussianState {
  Index n_modes = 0;
  Mat Vqq;
  Mat Vpp;
  std::string basis_label;

  GaussianState() = default;
  GaussianState(Mat vqq, Mat vpp, std::string basis);

  static GaussianState vacuum(Index n, std::string basis = "vacuum");
};

// 2n x 2n symplectic form with blocks [[0, -I], [I, 0]].
struct SymplecticForm {
  Index n_modes = 0;
  Mat J;

  explicit SymplecticForm(Index n);
};

struct SqueezingReportEntry {
  int mode_index = 0;
  double squeeze_dB = 0.0;
  double antisqueeze_dB = 0.0;
};

struct PhysicalityReport {
  bool physical = false;
  double min_eigenvalue = 0.0;
};

// Vqq = diag(exp(-2 r_j)), Vpp = diag(exp(+2 r_j)). Positive r squeezes q;
// negative r rotates the ellipse by 90 degrees and squeezes p.
GaussianState make_squeezed_vacuum(const std::vector<double>& r_list);

// Pure loss channel, V -> eta V + (1 - eta) I on both blocks.
GaussianState apply_loss(const GaussianState& state, double eta);

double variance_to_dB(double v);
double dB_to_variance(double dB);

// Smallest eigenvalue of the Hermitian matrix V + iJ; physical when it is
// >= -1e-9. Marginally unphysical reconstructions are flagged, never
// repaired.
PhysicalityReport check_physicality(const GaussianState& state);

inline constexpr double kPhysicalityTolerance = 1e-9;

} // namespace sqz
