#include "sqz/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

constexpr double kTieTolerance = 1e-10;

double jitter(double value, double noise_dB, Rng& rng) {
  if (noise_dB == 0.0) return value;
  return value * std::pow(10.0, rng.uniform(-noise_dB, noise_dB) / 10.0);
}

// standard error matching the uniform(-noise, +noise) dB jitter
double jitter_sigma(double value, double noise_dB) {
  return value * (std::log(10.0) / 10.0) * noise_dB / std::sqrt(3.0);
}

double pair_variance(const Mat& v, int i, int j, const Vec* power) {
  if (!power) return (v(i, i) + v(j, j)) / 2.0 + v(i, j);
  const double pi = (*power)[i], pj = (*power)[j];
  return (pi * v(i, i) + pj * v(j, j) + 2.0 * std::sqrt(pi * pj) * v(i, j)) / (pi + pj);
}

} // namespace

VarianceDataset simulate_variance_dataset(const GaussianState& state, double noise_dB, Rng& rng,
                                          const Vec* band_power) {
  if (!(noise_dB >= 0.0)) throw std::invalid_argument("simulate_variance_dataset: noise_dB < 0");
  if (band_power && band_power->size() != state.n_modes)
    throw std::invalid_argument("simulate_variance_dataset: band_power size mismatch");
  const int n = static_cast<int>(state.n_modes);

  VarianceDataset data;
  data.n_modes = n;
  data.basis_label = state.basis_label;
  data.single.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& e = data.single[static_cast<std::size_t>(i)];
    e.var_q = jitter(state.Vqq(i, i), noise_dB, rng);
    e.var_p = jitter(state.Vpp(i, i), noise_dB, rng);
    e.sigma_q = jitter_sigma(state.Vqq(i, i), noise_dB);
    e.sigma_p = jitter_sigma(state.Vpp(i, i), noise_dB);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      VarianceDataset::Entry e;
      const double vq = pair_variance(state.Vqq, i, j, band_power);
      const double vp = pair_variance(state.Vpp, i, j, band_power);
      e.var_q = jitter(vq, noise_dB, rng);
      e.var_p = jitter(vp, noise_dB, rng);
      e.sigma_q = jitter_sigma(vq, noise_dB);
      e.sigma_p = jitter_sigma(vp, noise_dB);
      data.pairs[{i, j}] = e;
    }
  }
  return data;
}

ReconstructionResult reconstruct_covariance(const VarianceDataset& data) {
  const int n = data.n_modes;
  if (n < 1 || data.single.size() != static_cast<std::size_t>(n))
    throw incomplete_dataset_error("reconstruct_covariance: missing single-mode variances");

  std::vector<std::pair<int, int>> missing;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (data.pairs.find({i, j}) == data.pairs.end()) missing.push_back({i, j});
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "reconstruct_covariance: missing pairs";
    for (auto& [i, j] : missing) msg << " (" << i << "," << j << ")";
    throw incomplete_dataset_error(msg.str());
  }

  Mat vqq = Mat::Zero(n, n), vpp = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    vqq(i, i) = data.single[static_cast<std::size_t>(i)].var_q;
    vpp(i, i) = data.single[static_cast<std::size_t>(i)].var_p;
  }
  for (auto& [key, e] : data.pairs) {
    const auto [i, j] = key;
    // <x_i x_j> = D2x_{i+j} - (D2x_i + D2x_j) / 2
    vqq(i, j) = vqq(j, i) = e.var_q - (vqq(i, i) + vqq(j, j)) / 2.0;
    vpp(i, j) = vpp(j, i) = e.var_p - (vpp(i, i) + vpp(j, j)) / 2.0;
  }
  GaussianState state(std::move(vqq), std::move(vpp), data.basis_label);
  PhysicalityReport report = check_physicality(state);
  return ReconstructionResult{std::move(state), report};
}

SupermodeRecovery recover_supermodes(const GaussianState& state) {
  const Index n = state.n_modes;
  Eigen::SelfAdjointEigenSolver<Mat> solver(state.Vpp);
  if (solver.info() != Eigen::Success)
    throw numerical_error("recover_supermodes: p-block eigensolve failed");

  // descending antisqueezing
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Vec& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) { return ev[l] > ev[r]; });

  Mat t(n, n);
  for (Index k = 0; k < n; ++k)
    t.row(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]).transpose();

  SupermodeRecovery rec;

  // degenerate eigenvalues: reorder inside each tie group by descending
  // |q-block diagonal| after the transform
  for (Index start = 0; start < n;) {
    Index end = start + 1;
    while (end < n &&
           std::abs(ev[order[static_cast<std::size_t>(end)]] -
                    ev[order[static_cast<std::size_t>(start)]]) < kTieTolerance)
      ++end;
    if (end - start > 1) {
      rec.tie_break_applied = true;
      std::vector<std::pair<double, Index>> keyed;
      for (Index k = start; k < end; ++k) {
        const double qdiag = t.row(k) * state.Vqq * t.row(k).transpose();
        keyed.push_back({std::abs(qdiag), k});
      }
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      Mat block(end - start, n);
      for (Index k = 0; k < end - start; ++k)
        block.row(k) = t.row(keyed[static_cast<std::size_t>(k)].second);
      t.middleRows(start, end - start) = block;
    }
    start = end;
  }
  if (rec.tie_break_applied)
    rec.notes = "degenerate p-block eigenvalues; ties broken by descending |q diagonal|";

  // modified Gram-Schmidt in recovery order (a re-orthogonalization pass;
  // exact eigenvectors pass through unchanged)
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < k; ++j) t.row(k) -= (t.row(k).dot(t.row(j))) * t.row(j);
    const double nrm = t.row(k).norm();
    if (!(nrm > 1e-14)) throw numerical_error("recover_supermodes: Gram-Schmidt breakdown");
    t.row(k) /= nrm;
  }

  const Mat q_rot = t * state.Vqq * t.transpose();
  const Mat p_rot = t * state.Vpp * t.transpose();
  for (Index k = 0; k < n; ++k) {
    SqueezingReportEntry entry;
    entry.mode_index = static_cast<int>(k);
    entry.squeeze_dB = variance_to_dB(q_rot(k, k));
    entry.antisqueeze_dB = variance_to_dB(p_rot(k, k));
    rec.eigen_dB.push_back(entry);
    rec.relative_signs.push_back(q_rot(k, k) <= p_rot(k, k) ? 1 : -1);
  }
  double resid = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) resid = std::max(resid, std::abs(q_rot(i, j)));
  rec.residual_q_offdiag = resid;
  rec.transform = std::move(t);
  return rec;
}

UncertaintyReport propagate_uncertainty(const VarianceDataset& data) {
  const int n = data.n_modes;
  ReconstructionResult recon = reconstruct_covariance(data);

  UncertaintyReport rep;
  rep.sigma_Vqq = Mat::Zero(n, n);
  rep.sigma_Vpp = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    rep.sigma_Vqq(i, i) = data.single[static_cast<std::size_t>(i)].sigma_q;
    rep.sigma_Vpp(i, i) = data.single[static_cast<std::size_t>(i)].sigma_p;
  }
  for (auto& [key, e] : data.pairs) {
    const auto [i, j] = key;
    const auto& si = data.single[static_cast<std::size_t>(i)];
    const auto& sj = data.single[static_cast<std::size_t>(j)];
    // first order through <x_i x_j> = D2x_{i+j} - (D2x_i + D2x_j)/2
    rep.sigma_Vqq(i, j) = rep.sigma_Vqq(j, i) =
        std::sqrt(e.sigma_q * e.sigma_q + (si.sigma_q * si.sigma_q + sj.sigma_q * sj.sigma_q) / 4.0);
    rep.sigma_Vpp(i, j) = rep.sigma_Vpp(j, i) =
        std::sqrt(e.sigma_p * e.sigma_p + (si.sigma_p * si.sigma_p + sj.sigma_p * sj.sigma_p) / 4.0);
  }

  SupermodeRecovery rec = recover_supermodes(recon.state);
  rep.sigma_squeeze_dB = Vec::Zero(n);
  rep.sigma_antisqueeze_dB = Vec::Zero(n);
  const Mat q_rot = rec.transform * recon.state.Vqq * rec.transform.transpose();
  const Mat p_rot = rec.transform * recon.state.Vpp * rec.transform.transpose();
  for (int k = 0; k < n; ++k) {
    const Vec v = rec.transform.row(k).transpose();
    double var_q = 0.0, var_p = 0.0;
    // lambda = v^T V v; independent entries, symmetric duplication
    for (int i = 0; i < n; ++i) {
      var_q += std::pow(v[i] * v[i] * rep.sigma_Vqq(i, i), 2);
      var_p += std::pow(v[i] * v[i] * rep.sigma_Vpp(i, i), 2);
      for (int j = i + 1; j < n; ++j) {
        var_q += std::pow(2.0 * v[i] * v[j] * rep.sigma_Vqq(i, j), 2);
        var_p += std::pow(2.0 * v[i] * v[j] * rep.sigma_Vpp(i, j), 2);
      }
    }
    const double dB_per_var_q = 10.0 / (std::log(10.0) * q_rot(k, k));
    const double dB_per_var_p = 10.0 / (std::log(10.0) * p_rot(k, k));
    rep.sigma_squeeze_dB[k] = std::sqrt(var_q) * std::abs(dB_per_var_q);
    rep.sigma_antisqueeze_dB[k] = std::sqrt(var_p) * std::abs(dB_per_var_p);
  }
  return rep;
}

} // namespace sqz
