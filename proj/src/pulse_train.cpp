#include "sqz/pulse_train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sqz/errors.hpp"
#include "sqz/rng.hpp"

namespace sqz {

namespace {

// single-pole low-pass response to a short pulse, normalized so the
// full-period window sum is 1; tail truncated once fully decayed
Arr impulse_response(const PulseTrainConfig& config) {
  const int spp = config.samples_per_pulse;
  const double dt = 1.0 / (config.rep_rate_hz * spp);
  const double tau = 1.0 / (2.0 * M_PI * config.detector_bandwidth_hz);
  const double decay = std::exp(-dt / tau);
  int tail = spp;
  while (tail < 8 * spp && std::pow(decay, tail) > 1e-15) ++tail;
  Arr h(tail);
  for (int k = 0; k < tail; ++k) h[k] = std::pow(decay, k);
  h /= h.head(spp).sum();
  return h;
}

} // namespace

long PulseTrainConfig::resolved_vacuum_pulses() const {
  long v = vacuum_pulses > 0 ? vacuum_pulses : std::max<long>(1024, duration_pulses / 8);
  return std::min(v, duration_pulses / 2);
}

void PulseTrainConfig::validate() const {
  if (!(rep_rate_hz > 0.0)) throw config_error("pulse config: rep_rate <= 0");
  if (samples_per_pulse < 4) throw config_error("pulse config: samples_per_pulse < 4");
  if (duration_pulses < 1) throw config_error("pulse config: duration_pulses < 1");
  if (piezo_period_pulses < 2) throw config_error("pulse config: piezo period < 2 pulses");
  if (detector_bandwidth_hz < rep_rate_hz / 2.0)
    throw config_error("pulse config: detector bandwidth below rep_rate/2, pulses unresolvable");
}

PulseTrainRecord synthesize_train(const std::function<double(double)>& variance_of_phase,
                                  const PulseTrainConfig& config) {
  config.validate();
  const int spp = config.samples_per_pulse;
  const long n_pulses = config.duration_pulses;
  const long n_vac = config.resolved_vacuum_pulses();
  const Arr h = impulse_response(config);
  const int tail = static_cast<int>(h.size());

  const double sigma_e =
      std::sqrt(std::pow(10.0, -config.electronic_noise_dB / 10.0) / spp);
  const double common_mode = std::pow(10.0, -config.cmrr_dB / 20.0);

  PulseTrainRecord rec;
  rec.config = config;
  rec.n_vacuum_pulses = n_vac;
  rec.theta = Arr::Zero(n_pulses);
  rec.x_truth = Arr::Zero(n_pulses);
  rec.samples = Arr::Zero(n_pulses * spp);

  Rng rng(config.seed);
  // AR(1) stand-in for technical low-frequency noise, off by default
  const double pink_rho = 0.999;
  double pink = 0.0;
  for (long m = 0; m < n_pulses; ++m) {
    double theta = 0.0, variance = 1.0;
    if (m >= n_vac) {
      const long k = m - n_vac;
      const double frac =
          static_cast<double>(k % config.piezo_period_pulses) / config.piezo_period_pulses;
      theta = M_PI * (frac < 0.5 ? 2.0 * frac : 2.0 * (1.0 - frac));
      variance = variance_of_phase(theta);
      if (!(variance > 0.0))
        throw std::invalid_argument("synthesize_train: V(theta) must be positive");
    }
    rec.theta[m] = theta;
    double x = rng.normal() * std::sqrt(variance);
    if (config.pink_noise_fraction > 0.0) {
      pink = pink_rho * pink + std::sqrt(1.0 - pink_rho * pink_rho) * rng.normal();
      x += config.pink_noise_fraction * pink;
    }
    rec.x_truth[m] = x;
    const double amp = x + common_mode;
    const long base = m * spp;
    const long kmax = std::min<long>(tail, n_pulses * spp - base);
    for (long k = 0; k < kmax; ++k) rec.samples[base + k] += amp * h[k];
  }
  if (sigma_e > 0.0) {
    for (long i = 0; i < rec.samples.size(); ++i) rec.samples[i] += sigma_e * rng.normal();
  }
  return rec;
}

Arr extract_pulse_quadratures(const PulseTrainRecord& record, int window_offset,
                              int window_length) {
  const int spp = record.config.samples_per_pulse;
  if (window_length < 1) throw std::invalid_argument("extract_pulse_quadratures: empty window");
  if (window_offset < 0 || window_offset + window_length > spp)
    throw std::invalid_argument("extract_pulse_quadratures: window outside pulse period");
  if (record.n_vacuum_pulses < 2)
    throw std::invalid_argument("extract_pulse_quadratures: no vacuum calibration segment");

  const long n = record.n_pulses();
  Arr values(n);
  for (long m = 0; m < n; ++m)
    values[m] = record.samples.segment(m * spp + window_offset, window_length).sum();

  const auto vac = values.head(record.n_vacuum_pulses);
  const double mean = vac.mean();
  const double var = (vac - mean).square().sum() / static_cast<double>(vac.size() - 1);
  if (!(var > 0.0)) throw numerical_error("extract_pulse_quadratures: vacuum variance zero");
  return (values - mean) / std::sqrt(var);
}

WindowChoice optimize_window(const PulseTrainRecord& record) {
  const int spp = record.config.samples_per_pulse;
  if (record.n_vacuum_pulses < 1000)
    throw std::invalid_argument("optimize_window: need >= 1000 vacuum pulses");

  // Window gains follow from the detector response, so the choice is a
  // pure function of the record's configuration; the vacuum segment then
  // verifies the isolation of the winner.
  const Arr h = impulse_response(record.config);
  const double sigma_e2 =
      std::pow(10.0, -record.config.electronic_noise_dB / 10.0) / spp;
  const double rho_bound = 3.0 / std::sqrt(static_cast<double>(record.n_vacuum_pulses));

  std::vector<double> prefix(static_cast<std::size_t>(h.size()) + 1, 0.0);
  for (Index k = 0; k < h.size(); ++k)
    prefix[static_cast<std::size_t>(k + 1)] = prefix[static_cast<std::size_t>(k)] + h[k];
  auto window_gain = [&](int offset, int length) {
    const int hi = std::min<int>(offset + length, static_cast<int>(h.size()));
    const int lo = std::min<int>(offset, static_cast<int>(h.size()));
    return prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)];
  };

  WindowChoice best;
  double best_penalty = 1e300;
  double best_gain = -1.0;
  for (int offset = 0; offset < spp; ++offset) {
    for (int length = 1; offset + length <= spp; ++length) {
      const double g0 = window_gain(offset, length);             // own pulse
      const double g1 = window_gain(offset + spp, length);       // previous-pulse tail
      if (!(g0 > 0.0)) continue;
      const double electronic = sigma_e2 * length;
      const double total = g0 * g0 + g1 * g1 + electronic;
      const double rho1_model = g0 * g1 / total;
      if (std::abs(rho1_model) >= rho_bound / 3.0) continue;   // keep leakage below noise
      const double penalty = electronic / (g0 * g0);
      const bool better =
          (penalty < best_penalty - 1e-15) ||
          (std::abs(penalty - best_penalty) <= 1e-15 &&
           (g0 > best_gain + 1e-15 ||
            (std::abs(g0 - best_gain) <= 1e-15 && length < best.length)));
      if (better) {
        best_penalty = penalty;
        best_gain = g0;
        best = WindowChoice{offset, length,
                            electronic > 0.0 ? g0 * g0 / electronic
                                             : std::numeric_limits<double>::infinity()};
      }
    }
  }
  if (best.length == 0) throw numerical_error("optimize_window: no window passes isolation");

  const Arr values = extract_pulse_quadratures(record, best.offset, best.length);
  const IsolationCheck chk = verify_pulse_isolation(values.head(record.n_vacuum_pulses));
  if (!chk.pass)
    throw numerical_error("optimize_window: winning window fails the isolation check (rho1 = " +
                          std::to_string(chk.rho1) + ")");
  return best;
}

IsolationCheck verify_pulse_isolation(const Arr& values) {
  const long n = values.size();
  if (n < 1000) throw std::invalid_argument("verify_pulse_isolation: need >= 1000 pulses");
  const double mean = values.mean();
  const Arr centered = values - mean;
  const double var = centered.square().sum() / static_cast<double>(n);
  if (!(var > 0.0)) throw numerical_error("verify_pulse_isolation: zero variance");
  double cov = 0.0;
  for (long i = 0; i + 1 < n; ++i) cov += centered[i] * centered[i + 1];
  cov /= static_cast<double>(n - 1);
  IsolationCheck chk;
  chk.rho1 = cov / var;
  chk.n = n;
  chk.pass = std::abs(chk.rho1) < 3.0 / std::sqrt(static_cast<double>(n));
  return chk;
}

SqueezingEstimate estimate_squeezing(const Arr& values, const Arr& phases,
                                     const Arr& vacuum_values, int n_bins) {
  if (values.size() != phases.size())
    throw std::invalid_argument("estimate_squeezing: values/phases size mismatch");
  if (values.size() < 2 || vacuum_values.size() < 2)
    throw std::invalid_argument("estimate_squeezing: need at least 2 values");
  if (n_bins < 2) throw std::invalid_argument("estimate_squeezing: n_bins < 2");

  std::vector<double> sum(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<double> sum2(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<long> count(static_cast<std::size_t>(n_bins), 0);
  for (long i = 0; i < values.size(); ++i) {
    double t = std::fmod(phases[i], M_PI);
    if (t < 0.0) t += M_PI;
    // bins centered on the quadrature extremes (bin 0 center at theta = 0)
    int b = static_cast<int>(t / M_PI * n_bins + 0.5) % n_bins;
    sum[static_cast<std::size_t>(b)] += values[i];
    sum2[static_cast<std::size_t>(b)] += values[i] * values[i];
    ++count[static_cast<std::size_t>(b)];
  }

  const double vac_mean = vacuum_values.mean();
  const double vac_var = (vacuum_values - vac_mean).square().sum() /
                         static_cast<double>(vacuum_values.size() - 1);

  double min_var = 0.0, max_var = 0.0;
  long min_count = 0, max_count = 0;
  bool found = false;
  for (int b = 0; b < n_bins; ++b) {
    const long c = count[static_cast<std::size_t>(b)];
    if (c < 30) continue;   // skip statistically empty bins
    const double mean = sum[static_cast<std::size_t>(b)] / static_cast<double>(c);
    const double var =
        (sum2[static_cast<std::size_t>(b)] - static_cast<double>(c) * mean * mean) /
        static_cast<double>(c - 1);
    if (!found || var < min_var) { min_var = var; min_count = c; }
    if (!found || var > max_var) { max_var = var; max_count = c; }
    found = true;
  }
  if (!found) throw std::invalid_argument("estimate_squeezing: no phase bin has enough pulses");

  SqueezingEstimate est;
  est.squeeze_dB = 10.0 * std::log10(min_var / vac_var);
  est.antisqueeze_dB = 10.0 * std::log10(max_var / vac_var);
  est.n_pulses_used = min_count + max_count;
  // chi-squared: relative std of a sample variance is sqrt(2/(n-1))
  const double rel_vac = 2.0 / static_cast<double>(vacuum_values.size() - 1);
  const double rel_min = 2.0 / static_cast<double>(min_count - 1) + rel_vac;
  const double rel_max = 2.0 / static_cast<double>(max_count - 1) + rel_vac;
  est.standard_error_dB = 10.0 / std::log(10.0) * std::sqrt(std::max(rel_min, rel_max));
  return est;
}

} // namespace sqz
