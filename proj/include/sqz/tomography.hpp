#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqz/gaussian_state.hpp"
#include "sqz/rng.hpp"
#include "sqz/types.hpp"

namespace sqz {

// Homodyne variance data: per-mode variances plus the n(n-1)/2 balanced
// two-mode combinations x_{i+j} = (x_i + x_j)/sqrt(2).
struct VarianceDataset {
  struct Entry {
    double var_q = 0.0, var_p = 0.0;
    double sigma_q = 0.0, sigma_p = 0.0;
  };

  int n_modes = 0;
  std::string basis_label = "frexels";
  std::vector<Entry> single;                    // index = mode
  std::map<std::pair<int, int>, Entry> pairs;   // key (i, j), i < j
};

struct ReconstructionResult {
  GaussianState state;
  PhysicalityReport physicality;
};

// Recovery of the uncorrelated squeezed modes: diagonalize the
// antisqueezed (p) block, order by descending eigenvalue, re-orthogonalize
// with Gram-Schmidt in that order and apply the transform to both blocks.
struct SupermodeRecovery {
  Mat transform;                                // rows orthonormal
  std::vector<SqueezingReportEntry> eigen_dB;   // squeeze = q diag, antisqueeze = p diag
  std::vector<int> relative_signs;   // +1: mode squeezed in q; -1: ellipse rotated (squeezed in p)
  double residual_q_offdiag = 0.0;   // largest |off-diagonal| left in the transformed q block
  bool tie_break_applied = false;
  std::string notes;
};

struct UncertaintyReport {
  Mat sigma_Vqq;   // per-entry standard error of the reconstructed blocks
  Mat sigma_Vpp;
  Vec sigma_squeeze_dB;       // per recovered mode
  Vec sigma_antisqueeze_dB;
};

// Per-mode and pair variances of the state, each multiplied by 10^(e/10)
// with e ~ uniform(-noise_dB, +noise_dB). Optional per-mode power weights
// model a violated equal-power precondition of the pair combination.
VarianceDataset simulate_variance_dataset(const GaussianState& state, double noise_dB, Rng& rng,
                                          const Vec* band_power = nullptr);

ReconstructionResult reconstruct_covariance(const VarianceDataset& data);

SupermodeRecovery recover_supermodes(const GaussianState& state);

UncertaintyReport propagate_uncertainty(const VarianceDataset& data);

} // namespace sqz
