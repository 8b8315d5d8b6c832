#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqz/gaussian_state.hpp"
#include "sqz/types.hpp"

namespace sqz {

// Canonical bipartition of n modes: bit i set = mode i on side B. Mode 0
// always sits on side A, which identifies complementary masks; n modes
// give 2^(n-1) - 1 distinct bipartitions.
struct Bipartition {
  int n_modes = 0;
  std::uint32_t mask = 0;

  std::vector<int> side_a() const;
  std::vector<int> side_b() const;
};

std::vector<Bipartition> enumerate_bipartitions(int n);

// Fig.-4 band labels: named after the frexel pair (paper numbering) whose
// separation dominates the PPT value.
enum class BandClass { splits_4_5, splits_3_6, splits_2_7, splits_none };
std::string band_class_name(BandClass c);

// Innermost frequency-symmetric frexel pairs of the 8-band layout in
// 0-based indices; display names keep the paper's 1-based caption labels.
const std::vector<std::pair<int, int>>& default_frexel_pairs();

BandClass classify_band(const Bipartition& bp,
                        const std::vector<std::pair<int, int>>& frexel_pairs);

struct PPTResult {
  Bipartition bipartition;
  double ppt_value = 0.0;   // smallest eigenvalue of Lambda V Lambda - iJ
  bool entangled = false;
  BandClass band_class = BandClass::splits_none;
};

PPTResult ppt_value(const GaussianState& state, const Bipartition& bp);

struct PPTScan {
  std::vector<PPTResult> results;   // ascending ppt_value
  int n_entangled = 0;
  std::map<BandClass, int> class_counts;
  std::map<BandClass, double> class_medians;
};

PPTScan ppt_scan(const GaussianState& state);

} // namespace sqz
