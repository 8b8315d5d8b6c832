#include "sqz/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

} // namespace

double phase_mismatch(const PhaseMatchingSpec& pm, const Sellmeier& sellmeier,
                      double omega_s, double omega_i) {
  const double omega_p = omega_s + omega_i;
  const double lam_s = 2.0 * M_PI * kSpeedOfLight / omega_s * 1e6;   // um
  const double lam_i = 2.0 * M_PI * kSpeedOfLight / omega_i * 1e6;
  const double lam_p = 2.0 * M_PI * kSpeedOfLight / omega_p * 1e6;
  const double kp = sellmeier.pump_index(lam_p, pm.temperature_C) * omega_p / kSpeedOfLight;
  const double ks = sellmeier.index(lam_s, pm.temperature_C) * omega_s / kSpeedOfLight;
  const double ki = sellmeier.index(lam_i, pm.temperature_C) * omega_i / kSpeedOfLight;
  return kp - ks - ki - 2.0 * M_PI / (pm.poling_period_um * 1e-6);
}

JointSpectralAmplitude compute_jsa_with_mismatch(
    const PumpEnvelope& pump, const FrequencyGrid& grid,
    const std::function<double(double, double)>& mismatch, double interaction_length_mm) {
  if (!(pump.fwhm_nm > 0.0)) throw config_error("compute_jsa: pump fwhm <= 0");
  if (!(interaction_length_mm > 0.0)) throw config_error("compute_jsa: interaction length <= 0");

  const Index n = grid.n_points;
  const double w_p0 = omega_from_lambda_nm(pump.center_wavelength_nm);
  // intensity FWHM -> amplitude envelope exp(-(w - w0)^2 / (4 sigma^2))
  const double fwhm_w = pump.fwhm_nm * 1e-9 * 2.0 * M_PI * kSpeedOfLight /
                        std::pow(pump.center_wavelength_nm * 1e-9, 2);
  const double sigma = fwhm_w / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const double half_length = interaction_length_mm * 1e-3 / 2.0;

  Mat a(n, n);
  for (Index s = 0; s < n; ++s) {
    const double ws = grid.omega[s];
    for (Index i = s; i < n; ++i) {
      const double wi = grid.omega[i];
      const double pump_amp = std::exp(-std::pow(ws + wi - w_p0, 2) / (4.0 * sigma * sigma));
      const double v = pump_amp * sinc(mismatch(ws, wi) * half_length);
      a(s, i) = v;
      a(i, s) = v;
    }
  }
  const double nrm = a.norm();
  if (!(nrm > 0.0)) throw numerical_error("compute_jsa: vanishing amplitude");
  a /= nrm;
  return JointSpectralAmplitude{grid, a.cast<std::complex<double>>()};
}

JointSpectralAmplitude compute_jsa(const PumpEnvelope& pump, const PhaseMatchingSpec& pm,
                                   const FrequencyGrid& grid) {
  const double lam_deg = 2.0 * pump.center_wavelength_nm;
  if (lam_deg < grid.lambda_min_nm || lam_deg > grid.lambda_max_nm)
    throw config_error("compute_jsa: grid does not cover the degenerate wavelength " +
                       std::to_string(lam_deg) + " nm");
  const double w_deg = omega_from_lambda_nm(lam_deg);
  double best = 1e300;
  for (Index i = 0; i < grid.n_points; ++i)
    best = std::min(best, std::abs(lambda_nm_from_omega(grid.omega[i]) - lam_deg));
  if (best > 0.5)
    throw config_error("compute_jsa: no grid point within 0.5 nm of degeneracy");
  (void)w_deg;

  const Sellmeier sellmeier = Sellmeier::from_name(pm.sellmeier_set);
  return compute_jsa_with_mismatch(
      pump, grid,
      [&](double ws, double wi) { return phase_mismatch(pm, sellmeier, ws, wi); },
      pm.interaction_length_mm);
}

SchmidtDecomposition schmidt_decompose(const JointSpectralAmplitude& jsa, Index n_keep) {
  const Index n = jsa.grid.n_points;
  if (n_keep < 1 || n_keep > n)
    throw std::invalid_argument("schmidt_decompose: n_keep out of range");

  const double max_abs = jsa.amplitude.cwiseAbs().maxCoeff();
  const double max_imag = jsa.amplitude.imag().cwiseAbs().maxCoeff();
  if (max_imag > 1e-12 * max_abs)
    throw numerical_error("schmidt_decompose: amplitude not real (max imag " +
                          std::to_string(max_imag) + "); complex Takagi not supported");
  Mat a = jsa.amplitude.real();
  const double sym_dev = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (sym_dev > 1e-10)
    throw numerical_error("schmidt_decompose: amplitude not signal/idler symmetric");
  a = ((a + a.transpose()) / 2.0).eval();

  // real symmetric amplitude: the SVD is the signed eigendecomposition,
  // so left and right singular vectors agree up to the eigenvalue sign
  Eigen::SelfAdjointEigenSolver<Mat> solver(a);
  if (solver.info() != Eigen::Success)
    throw numerical_error("schmidt_decompose: eigensolve failed (norm " +
                          std::to_string(a.norm()) + ", size " + std::to_string(n) + ")");

  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  const Vec& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) {
    return std::abs(ev[l]) > std::abs(ev[r]);
  });

  Vec lambdas(n);
  Eigen::VectorXi signs(n);
  for (Index j = 0; j < n; ++j) {
    const double e = ev[order[static_cast<std::size_t>(j)]];
    lambdas[j] = std::abs(e);
    signs[j] = (e >= 0.0) ? 1 : -1;
  }
  const double total = lambdas.norm();
  if (!(total > 0.0)) throw numerical_error("schmidt_decompose: zero spectrum");
  lambdas /= total;

  double sum4 = 0.0;
  for (Index j = 0; j < n; ++j) sum4 += std::pow(lambdas[j], 4);
  const double schmidt_K = 1.0 / sum4;

  const double w = jsa.grid.spacing;
  Mat modes(n_keep, n);
  for (Index j = 0; j < n_keep; ++j) {
    Vec v = solver.eigenvectors().col(order[static_cast<std::size_t>(j)]);
    // deterministic sign: largest-magnitude component positive
    Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    modes.row(j) = v.transpose() / std::sqrt(w);
  }

  SchmidtDecomposition dec;
  dec.lambdas = std::move(lambdas);
  dec.signs = std::move(signs);
  dec.modes = ModeBasis{jsa.grid, std::move(modes), "supermodes", {}};
  dec.schmidt_K = schmidt_K;
  return dec;
}

std::vector<double> squeezing_spectrum(const SchmidtDecomposition& dec, double gain,
                                       Index n_modes) {
  if (!(gain >= 0.0)) throw std::invalid_argument("squeezing_spectrum: gain < 0");
  if (n_modes < 1 || n_modes > dec.lambdas.size())
    throw std::invalid_argument("squeezing_spectrum: n_modes out of range");
  std::vector<double> r(static_cast<std::size_t>(n_modes));
  for (Index j = 0; j < n_modes; ++j) r[static_cast<std::size_t>(j)] = gain * dec.lambdas[j];
  return r;
}

std::vector<double> signed_squeezing_spectrum(const SchmidtDecomposition& dec, double gain,
                                              Index n_modes) {
  std::vector<double> r = squeezing_spectrum(dec, gain, n_modes);
  for (Index j = 0; j < n_modes; ++j) r[static_cast<std::size_t>(j)] *= dec.signs[j];
  return r;
}

double calibrate_gain(const SchmidtDecomposition& dec, double target_dB, double eta) {
  if (!(target_dB < 0.0)) throw std::invalid_argument("calibrate_gain: target_dB must be < 0");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("calibrate_gain: eta outside (0, 1]");
  const double lambda0 = dec.lambdas[0];

  if (eta == 1.0) {
    // lossless closed form: 10 log10 e^{-2 g lambda0} = target
    return -target_dB * std::log(10.0) / (20.0 * lambda0);
  }

  const double floor_dB = 10.0 * std::log10(1.0 - eta);
  if (target_dB <= floor_dB)
    throw infeasible_target_error("calibrate_gain: target " + std::to_string(target_dB) +
                                  " dB below loss floor " + std::to_string(floor_dB) + " dB");

  auto measured_dB = [&](double g) {
    return 10.0 * std::log10(eta * std::exp(-2.0 * g * lambda0) + (1.0 - eta));
  };
  double lo = 0.0, hi = 10.0;
  if (measured_dB(hi) > target_dB)
    throw infeasible_target_error("calibrate_gain: target unreachable within gain <= 10");
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2.0;
    if (measured_dB(mid) > target_dB)
      lo = mid;
    else
      hi = mid;
    if (std::abs(measured_dB(mid) - target_dB) < 1e-9) break;
  }
  const double gain = (lo + hi) / 2.0;
  if (std::abs(measured_dB(gain) - target_dB) > 1e-6)
    throw numerical_error("calibrate_gain: bisection did not converge");
  return gain;
}

Index count_active_modes(const SchmidtDecomposition& dec) {
  const double cutoff = kActiveModeRatio * dec.lambdas[0];
  Index count = 0;
  while (count < dec.lambdas.size() && dec.lambdas[count] > cutoff) ++count;
  return count;
}

} // namespace sqz
