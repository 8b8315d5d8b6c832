#include "sqz/mode_basis.hpp"

#include <cmath>
#include <stdexcept>

#include "sqz/errors.hpp"

namespace sqz {

void FrexelSpec::validate() const {
  if (n_bands < 1) throw std::invalid_argument("FrexelSpec: n_bands < 1");
  if (band_edges_nm.size() != static_cast<std::size_t>(n_bands) + 1)
    throw std::invalid_argument("FrexelSpec: need n_bands + 1 edges");
  for (std::size_t i = 1; i < band_edges_nm.size(); ++i)
    if (!(band_edges_nm[i] > band_edges_nm[i - 1]))
      throw std::invalid_argument("FrexelSpec: edges not strictly increasing");
}

namespace {

// rows of `f` made orthonormal under weight w, Gram-Schmidt order preserved
void reorthonormalize(Mat& f, double w) {
  const Mat scaled = (f * std::sqrt(w)).transpose();    // n x m
  Eigen::HouseholderQR<Mat> qr(scaled);
  Mat q = Mat(qr.householderQ()).leftCols(f.rows());
  const Mat r = qr.matrixQR().topRows(f.rows()).triangularView<Eigen::Upper>();
  for (Index j = 0; j < f.rows(); ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  f = q.transpose() / std::sqrt(w);
}

} // namespace

ModeBasis hermite_gauss_basis(const FrequencyGrid& grid, double center_wavelength_nm,
                              double hg0_fwhm_nm, int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("hermite_gauss_basis: n_modes < 1");
  if (!(hg0_fwhm_nm > 0.0)) throw std::invalid_argument("hermite_gauss_basis: fwhm <= 0");
  const Index n = grid.n_points;
  if (n_modes > n) throw std::invalid_argument("hermite_gauss_basis: more modes than grid points");

  const double w0 = omega_from_lambda_nm(center_wavelength_nm);
  // FWHM of |HG0|^2 in angular frequency -> std of |HG0|^2 -> Hermite scale
  const double fwhm_w = hg0_fwhm_nm * 1e-9 * 2.0 * M_PI * kSpeedOfLight /
                        std::pow(center_wavelength_nm * 1e-9, 2);
  const double sigma_intensity = fwhm_w / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const double scale = sigma_intensity * std::sqrt(2.0);

  const Arr x = (grid.omega - w0) / scale;
  Mat f(n_modes, n);
  // normalized Hermite-function recurrence, stable to high order
  Arr prev = Arr::Zero(n);
  Arr cur = (-x.square() / 2.0).exp() * std::pow(M_PI, -0.25);
  f.row(0) = cur.matrix().transpose();
  for (int k = 1; k < n_modes; ++k) {
    const Arr next = x * cur * std::sqrt(2.0 / k) - prev * std::sqrt((k - 1.0) / k);
    prev = cur;
    cur = next;
    f.row(k) = cur.matrix().transpose();
  }
  // discrete normalization before QR keeps column scaling benign
  for (int k = 0; k < n_modes; ++k) {
    const double nrm = std::sqrt(f.row(k).squaredNorm() * grid.spacing);
    if (!(nrm > 0.0)) throw numerical_error("hermite_gauss_basis: vanishing mode norm");
    f.row(k) /= nrm;
  }

  ModeBasis basis{grid, Mat(), "hermite-gauss", {}};
  for (int k = 0; k < n_modes; ++k) {
    const double peak = f.row(k).cwiseAbs().maxCoeff();
    const double edge = std::max(std::abs(f(k, 0)), std::abs(f(k, n - 1)));
    if (edge > 1e-3 * peak)
      basis.warnings.push_back("HG" + std::to_string(k) + " truncated by grid (edge/peak = " +
                               std::to_string(edge / peak) + ")");
  }
  reorthonormalize(f, grid.spacing);
  basis.functions = std::move(f);
  return basis;
}

ModeBasis frexel_basis(const FrequencyGrid& grid, const FrexelSpec& spec,
                       const Arr* lo_amplitude) {
  spec.validate();
  const Index n = grid.n_points;
  if (lo_amplitude && lo_amplitude->size() != n)
    throw std::invalid_argument("frexel_basis: LO spectrum size mismatch");
  if (spec.band_edges_nm.front() < grid.lambda_min_nm ||
      spec.band_edges_nm.back() > grid.lambda_max_nm)
    throw std::invalid_argument("frexel_basis: bands outside grid");

  const Arr lam = grid.wavelengths_nm();
  Mat f = Mat::Zero(spec.n_bands, n);
  for (int b = 0; b < spec.n_bands; ++b) {
    const double lo_edge = spec.band_edges_nm[static_cast<std::size_t>(b)];
    const double hi_edge = spec.band_edges_nm[static_cast<std::size_t>(b) + 1];
    for (Index i = 0; i < n; ++i) {
      if (lam[i] >= lo_edge && lam[i] < hi_edge)
        f(b, i) = lo_amplitude ? (*lo_amplitude)[i] : 1.0;
    }
    const double nrm = std::sqrt(f.row(b).squaredNorm() * grid.spacing);
    if (!(nrm > 0.0))
      throw std::invalid_argument("frexel_basis: band " + std::to_string(b) +
                                  " has no weight on the grid");
    f.row(b) /= nrm;
  }
  return ModeBasis{grid, std::move(f), "frexels", {}};
}

Vec frexel_band_powers(const FrequencyGrid& grid, const FrexelSpec& spec,
                       const Arr& lo_amplitude) {
  spec.validate();
  const Arr lam = grid.wavelengths_nm();
  Vec power = Vec::Zero(spec.n_bands);
  for (int b = 0; b < spec.n_bands; ++b) {
    for (Index i = 0; i < grid.n_points; ++i) {
      if (lam[i] >= spec.band_edges_nm[static_cast<std::size_t>(b)] &&
          lam[i] < spec.band_edges_nm[static_cast<std::size_t>(b) + 1])
        power[b] += lo_amplitude[i] * lo_amplitude[i] * grid.spacing;
    }
  }
  return power;
}

Mat overlap_matrix(const ModeBasis& a, const ModeBasis& b) {
  if (a.grid.n_points != b.grid.n_points ||
      a.grid.lambda_min_nm != b.grid.lambda_min_nm ||
      a.grid.lambda_max_nm != b.grid.lambda_max_nm)
    throw std::invalid_argument("overlap_matrix: bases on different grids");
  return a.functions * b.functions.transpose() * a.grid.spacing;
}

GaussianState project_state(const GaussianState& state, const Mat& overlap,
                            const std::string& new_basis_label) {
  if (overlap.cols() != state.n_modes)
    throw std::invalid_argument("project_state: overlap column count != state modes");
  const double max_row_norm = overlap.rowwise().norm().maxCoeff();
  if (max_row_norm > 1.0 + 1e-6)
    throw std::invalid_argument("project_state: overlap row norm " +
                                std::to_string(max_row_norm) + " exceeds 1");
  const Index m = overlap.rows();
  const Mat id_in = Mat::Identity(state.n_modes, state.n_modes);
  const Mat id_out = Mat::Identity(m, m);
  Mat vqq = overlap * (state.Vqq - id_in) * overlap.transpose() + id_out;
  Mat vpp = overlap * (state.Vpp - id_in) * overlap.transpose() + id_out;
  // congruence keeps blocks symmetric; rounding drift is rescrubbed
  vqq = ((vqq + vqq.transpose()) / 2.0).eval();
  vpp = ((vpp + vpp.transpose()) / 2.0).eval();
  return GaussianState(std::move(vqq), std::move(vpp), new_basis_label);
}

} // namespace sqz
