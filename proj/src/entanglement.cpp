#include "sqz/entanglement.hpp"

#include <algorithm>
#include <stdexcept>

#include "sqz/errors.hpp"

namespace sqz {

std::vector<int> Bipartition::side_a() const {
  std::vector<int> out;
  for (int i = 0; i < n_modes; ++i)
    if (!((mask >> i) & 1u)) out.push_back(i);
  return out;
}

std::vector<int> Bipartition::side_b() const {
  std::vector<int> out;
  for (int i = 0; i < n_modes; ++i)
    if ((mask >> i) & 1u) out.push_back(i);
  return out;
}

std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2 || n > 24) throw std::invalid_argument("enumerate_bipartitions: n outside [2, 24]");
  std::vector<Bipartition> out;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = 2; mask < limit; mask += 2)   // bit 0 clear: mode 0 on side A
    out.push_back(Bipartition{n, mask});
  return out;
}

std::string band_class_name(BandClass c) {
  switch (c) {
    case BandClass::splits_4_5: return "splits-4-5";
    case BandClass::splits_3_6: return "splits-3-6";
    case BandClass::splits_2_7: return "splits-2-7";
    case BandClass::splits_none: return "splits-none";
  }
  return "splits-none";
}

const std::vector<std::pair<int, int>>& default_frexel_pairs() {
  // paper labels 4-5, 3-6, 2-7 count bands from 1; 0-based these are the
  // pairs mirrored about the spectrum center, innermost first
  static const std::vector<std::pair<int, int>> pairs = {{3, 4}, {2, 5}, {1, 6}};
  return pairs;
}

BandClass classify_band(const Bipartition& bp,
                        const std::vector<std::pair<int, int>>& frexel_pairs) {
  static const BandClass classes[3] = {BandClass::splits_4_5, BandClass::splits_3_6,
                                       BandClass::splits_2_7};
  for (std::size_t k = 0; k < frexel_pairs.size() && k < 3; ++k) {
    const auto [a, b] = frexel_pairs[k];
    const bool a_in_b = (bp.mask >> a) & 1u;
    const bool b_in_b = (bp.mask >> b) & 1u;
    if (a_in_b != b_in_b) return classes[k];
  }
  return BandClass::splits_none;
}

PPTResult ppt_value(const GaussianState& state, const Bipartition& bp) {
  const Index n = state.n_modes;
  if (bp.n_modes != static_cast<int>(n))
    throw std::invalid_argument("ppt_value: bipartition size mismatch");

  // Lambda flips the p quadratures of side B; the q block is untouched
  Vec flip = Vec::Ones(n);
  for (Index i = 0; i < n; ++i)
    if ((bp.mask >> i) & 1u) flip[i] = -1.0;
  const Mat vpp_t = flip.asDiagonal() * state.Vpp * flip.asDiagonal();

  CMat p = CMat::Zero(2 * n, 2 * n);
  p.topLeftCorner(n, n) = state.Vqq.cast<std::complex<double>>();
  p.bottomRightCorner(n, n) = vpp_t.cast<std::complex<double>>();
  const SymplecticForm form(n);
  p -= std::complex<double>(0.0, 1.0) * form.J.cast<std::complex<double>>();

  Eigen::SelfAdjointEigenSolver<CMat> solver(p, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numerical_error("ppt_value: eigensolve failed (mask " + std::to_string(bp.mask) +
                          ", |V| = " + std::to_string(state.Vqq.norm() + state.Vpp.norm()) + ")");

  PPTResult res;
  res.bipartition = bp;
  res.ppt_value = solver.eigenvalues().minCoeff();
  res.entangled = res.ppt_value < -kPhysicalityTolerance;
  if (n == 8) res.band_class = classify_band(bp, default_frexel_pairs());
  return res;
}

PPTScan ppt_scan(const GaussianState& state) {
  PPTScan scan;
  std::map<BandClass, std::vector<double>> per_class;
  for (const Bipartition& bp : enumerate_bipartitions(static_cast<int>(state.n_modes))) {
    PPTResult r = ppt_value(state, bp);
    if (r.entangled) ++scan.n_entangled;
    per_class[r.band_class].push_back(r.ppt_value);
    scan.results.push_back(std::move(r));
  }
  std::stable_sort(scan.results.begin(), scan.results.end(),
                   [](const PPTResult& a, const PPTResult& b) { return a.ppt_value < b.ppt_value; });
  for (auto& [cls, values] : per_class) {
    scan.class_counts[cls] = static_cast<int>(values.size());
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    scan.class_medians[cls] =
        (m % 2 == 1) ? values[m / 2] : (values[m / 2 - 1] + values[m / 2]) / 2.0;
  }
  return scan;
}

} // namespace sqz
