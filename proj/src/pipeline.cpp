#include "sqz/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "sqz/errors.hpp"
#include "sqz/rng.hpp"

namespace sqz {

Arr lo_spectrum(const FrequencyGrid& grid, double center_nm, double fwhm_nm, double window_nm) {
  const double w0 = omega_from_lambda_nm(center_nm);
  const double fwhm_w = fwhm_nm * 1e-9 * 2.0 * M_PI * kSpeedOfLight /
                        std::pow(center_nm * 1e-9, 2);
  const double sigma = fwhm_w / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  Arr lo(grid.n_points);
  for (Index i = 0; i < grid.n_points; ++i) {
    const double w = grid.omega[i];
    const double lam = lambda_nm_from_omega(w);
    lo[i] = (std::abs(lam - center_nm) <= window_nm / 2.0)
                ? std::exp(-std::pow(w - w0, 2) / (4.0 * sigma * sigma))
                : 0.0;
  }
  return lo;
}

JsaStage run_jsa_stage(const ExperimentConfig& cfg) {
  const FrequencyGrid grid = cfg.make_grid();
  JointSpectralAmplitude jsa = compute_jsa(cfg.make_pump(), cfg.make_phase_matching(), grid);
  SchmidtDecomposition dec =
      schmidt_decompose(jsa, std::min<Index>(grid.n_points, std::max<Index>(cfg.n_supermodes, 1)));
  dec.sellmeier_set = cfg.sellmeier_set;
  return JsaStage{std::move(jsa), std::move(dec)};
}

StateStage run_state_stage(const ExperimentConfig& cfg) {
  const FrequencyGrid grid = cfg.make_grid();
  const JointSpectralAmplitude jsa = compute_jsa(cfg.make_pump(), cfg.make_phase_matching(), grid);

  // decompose once with all potentially active modes available
  SchmidtDecomposition probe = schmidt_decompose(jsa, 1);
  const Index n_active = std::max<Index>(count_active_modes(probe), cfg.n_supermodes);
  SchmidtDecomposition dec = schmidt_decompose(jsa, n_active);
  dec.sellmeier_set = cfg.sellmeier_set;

  StateStage st;
  st.gain = calibrate_gain(dec, cfg.target_hg0_dB, cfg.eta_total);
  st.n_active = n_active;

  const std::vector<double> r = signed_squeezing_spectrum(dec, st.gain, n_active);
  const GaussianState pure = make_squeezed_vacuum(r);

  // HG-mode projection: the Table-1 measurement emulation. Squeezing and
  // antisqueezing per mode are the extremes over the scanned LO phase,
  // i.e. min/max of the two quadrature variances.
  const ModeBasis hg =
      hermite_gauss_basis(grid, cfg.degeneracy_nm(), cfg.hg0_fwhm_nm, cfg.n_supermodes);
  const GaussianState hg_state =
      apply_loss(project_state(pure, overlap_matrix(hg, dec.modes), "hermite-gauss"),
                 cfg.eta_total);
  for (int n = 0; n < cfg.n_supermodes; ++n) {
    SqueezingReportEntry e;
    e.mode_index = n;
    const double vq = hg_state.Vqq(n, n), vp = hg_state.Vpp(n, n);
    e.squeeze_dB = variance_to_dB(std::min(vq, vp));
    e.antisqueeze_dB = variance_to_dB(std::max(vq, vp));
    st.hg_table.push_back(e);
  }

  const Arr lo = lo_spectrum(grid, cfg.degeneracy_nm(), cfg.lo_fwhm_nm, cfg.lo_window_nm);
  const FrexelSpec spec = cfg.make_frexel_spec();
  const ModeBasis frexels = frexel_basis(grid, spec, &lo);
  st.frexel_state =
      apply_loss(project_state(pure, overlap_matrix(frexels, dec.modes), "frexels"),
                 cfg.eta_total);
  Vec power = frexel_band_powers(grid, spec, lo);
  st.band_powers = power / power.maxCoeff();

  st.supermode_state = apply_loss(pure, cfg.eta_total);
  st.dec = std::move(dec);
  return st;
}

TomographyStage run_tomography_stage(const ExperimentConfig& cfg) {
  StateStage state = run_state_stage(cfg);
  Rng rng(cfg.seed);
  VarianceDataset data =
      simulate_variance_dataset(state.frexel_state, cfg.variance_noise_dB, rng);
  TomographyStage stage = run_tomography_stage(data);
  stage.reference_recovery = recover_supermodes(state.frexel_state);
  stage.simulated = true;
  return stage;
}

TomographyStage run_tomography_stage(const VarianceDataset& data) {
  TomographyStage stage;
  stage.dataset = data;
  stage.reconstruction = reconstruct_covariance(data);
  stage.recovery = recover_supermodes(stage.reconstruction.state);
  stage.uncertainty = propagate_uncertainty(data);
  stage.reference_recovery = stage.recovery;
  return stage;
}

PulseStage run_pulse_stage(const ExperimentConfig& cfg) {
  const double vq = dB_to_variance(cfg.truth_squeeze_dB);
  const double vp = dB_to_variance(cfg.truth_antisqueeze_dB);
  auto variance_of_phase = [vq, vp](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return vq * c * c + vp * s * s;
  };

  PulseStage stage;
  stage.truth_squeeze_dB = cfg.truth_squeeze_dB;
  stage.truth_antisqueeze_dB = cfg.truth_antisqueeze_dB;
  stage.record = synthesize_train(variance_of_phase, cfg.make_pulse_config());
  stage.window = optimize_window(stage.record);
  const Arr values =
      extract_pulse_quadratures(stage.record, stage.window.offset, stage.window.length);
  const long n_vac = stage.record.n_vacuum_pulses;
  const Arr vacuum_values = values.head(n_vac);
  const Arr signal_values = values.tail(values.size() - n_vac);
  const Arr signal_phases = stage.record.theta.tail(values.size() - n_vac);
  stage.isolation = verify_pulse_isolation(vacuum_values);
  stage.estimate = estimate_squeezing(signal_values, signal_phases, vacuum_values);
  stage.estimate.window_offset = stage.window.offset;
  stage.estimate.window_length = stage.window.length;
  return stage;
}

PPTScan run_ppt_stage(const GaussianState& state) { return ppt_scan(state); }

} // namespace sqz
