#include "sqz/experiment_config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config: bad numeric value for " + key + ": '" + v + "'");
  }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

} // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path + "'");

  std::map<std::string, std::string> kv;
  std::string line, section;
  while (std::getline(in, line)) {
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config: expected key = value, got '" + line + "'");
    const std::string key = section + "." + trim(line.substr(0, eq));
    kv[key] = trim(line.substr(eq + 1));
  }

  ExperimentConfig cfg;
  auto num = [&](const char* key, double& field) {
    auto it = kv.find(key);
    if (it != kv.end()) { field = to_double(key, it->second); kv.erase(it); }
  };
  auto integer = [&](const char* key, auto& field) {
    auto it = kv.find(key);
    if (it != kv.end()) {
      field = static_cast<std::decay_t<decltype(field)>>(to_double(key, it->second));
      kv.erase(it);
    }
  };
  auto text = [&](const char* key, std::string& field) {
    auto it = kv.find(key);
    if (it != kv.end()) { field = it->second; kv.erase(it); }
  };

  num("pump.center_nm", cfg.pump_center_nm);
  num("pump.fwhm_nm", cfg.pump_fwhm_nm);
  num("phase_matching.poling_um", cfg.poling_um);
  num("phase_matching.length_mm", cfg.length_mm);
  num("phase_matching.temperature_C", cfg.temperature_C);
  text("phase_matching.sellmeier_set", cfg.sellmeier_set);
  num("grid.lambda_min_nm", cfg.lambda_min_nm);
  num("grid.lambda_max_nm", cfg.lambda_max_nm);
  integer("grid.n_points", cfg.n_points);
  integer("modes.n_supermodes", cfg.n_supermodes);
  num("modes.hg0_fwhm_nm", cfg.hg0_fwhm_nm);
  num("modes.lo_fwhm_nm", cfg.lo_fwhm_nm);
  num("modes.lo_window_nm", cfg.lo_window_nm);
  if (auto it = kv.find("modes.frexel_edges_nm"); it != kv.end()) {
    cfg.frexel_edges_nm = to_list("modes.frexel_edges_nm", it->second);
    kv.erase(it);
  }
  num("calibration.target_hg0_dB", cfg.target_hg0_dB);
  num("calibration.eta_total", cfg.eta_total);
  num("pulse.rep_rate_hz", cfg.rep_rate_hz);
  integer("pulse.samples_per_pulse", cfg.samples_per_pulse);
  num("pulse.detector_bandwidth_hz", cfg.detector_bandwidth_hz);
  num("pulse.clearance_dB", cfg.clearance_dB);
  num("pulse.cmrr_dB", cfg.cmrr_dB);
  integer("pulse.n_pulses", cfg.n_pulses);
  integer("pulse.piezo_period_pulses", cfg.piezo_period_pulses);
  integer("pulse.vacuum_pulses", cfg.vacuum_pulses);
  integer("pulse.seed", cfg.seed);
  num("pulse.truth_squeeze_dB", cfg.truth_squeeze_dB);
  num("pulse.truth_antisqueeze_dB", cfg.truth_antisqueeze_dB);
  num("noise.variance_noise_dB", cfg.variance_noise_dB);

  if (!kv.empty()) throw config_error("config: unknown key '" + kv.begin()->first + "'");
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (!(pump_center_nm > 0 && pump_fwhm_nm > 0)) throw config_error("config: bad pump");
  if (!(poling_um > 0 && length_mm > 0)) throw config_error("config: bad phase matching");
  if (!(lambda_min_nm > 0 && lambda_min_nm < lambda_max_nm)) throw config_error("config: bad grid span");
  if (n_points < 16) throw config_error("config: grid.n_points < 16");
  if (n_supermodes < 1) throw config_error("config: modes.n_supermodes < 1");
  if (!(hg0_fwhm_nm > 0)) throw config_error("config: modes.hg0_fwhm_nm <= 0");
  if (frexel_edges_nm.size() < 2) throw config_error("config: need at least 2 frexel edges");
  if (!(eta_total > 0 && eta_total <= 1)) throw config_error("config: eta_total outside (0, 1]");
  if (!(target_hg0_dB < 0)) throw config_error("config: target_hg0_dB must be negative");
  if (n_pulses < 1) throw config_error("config: pulse.n_pulses < 1");
}

FrequencyGrid ExperimentConfig::make_grid() const {
  return FrequencyGrid(lambda_min_nm, lambda_max_nm, n_points);
}

PumpEnvelope ExperimentConfig::make_pump() const {
  return PumpEnvelope{pump_center_nm, pump_fwhm_nm};
}

PhaseMatchingSpec ExperimentConfig::make_phase_matching() const {
  return PhaseMatchingSpec{poling_um, length_mm, temperature_C, sellmeier_set};
}

FrexelSpec ExperimentConfig::make_frexel_spec() const {
  FrexelSpec spec;
  spec.n_bands = static_cast<int>(frexel_edges_nm.size()) - 1;
  spec.band_edges_nm = frexel_edges_nm;
  return spec;
}

PulseTrainConfig ExperimentConfig::make_pulse_config() const {
  PulseTrainConfig pc;
  pc.rep_rate_hz = rep_rate_hz;
  pc.samples_per_pulse = samples_per_pulse;
  pc.detector_bandwidth_hz = detector_bandwidth_hz;
  pc.electronic_noise_dB = clearance_dB;
  pc.cmrr_dB = cmrr_dB;
  pc.piezo_period_pulses = piezo_period_pulses;
  pc.duration_pulses = n_pulses;
  pc.vacuum_pulses = vacuum_pulses;
  pc.seed = seed;
  return pc;
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "[pump]\n"
     << "center_nm = " << pump_center_nm << "\n"
     << "fwhm_nm = " << pump_fwhm_nm << "\n\n"
     << "[phase_matching]\n"
     << "poling_um = " << poling_um << "\n"
     << "length_mm = " << length_mm << "\n"
     << "temperature_C = " << temperature_C << "\n"
     << "sellmeier_set = " << sellmeier_set << "\n\n"
     << "[grid]\n"
     << "lambda_min_nm = " << lambda_min_nm << "\n"
     << "lambda_max_nm = " << lambda_max_nm << "\n"
     << "n_points = " << n_points << "\n\n"
     << "[modes]\n"
     << "n_supermodes = " << n_supermodes << "\n"
     << "hg0_fwhm_nm = " << hg0_fwhm_nm << "\n"
     << "lo_fwhm_nm = " << lo_fwhm_nm << "\n"
     << "lo_window_nm = " << lo_window_nm << "\n"
     << "frexel_edges_nm = ";
  for (std::size_t i = 0; i < frexel_edges_nm.size(); ++i)
    os << (i ? ", " : "") << frexel_edges_nm[i];
  os << "\n\n"
     << "[calibration]\n"
     << "target_hg0_dB = " << target_hg0_dB << "\n"
     << "eta_total = " << eta_total << "\n\n"
     << "[pulse]\n"
     << "rep_rate_hz = " << rep_rate_hz << "\n"
     << "samples_per_pulse = " << samples_per_pulse << "\n"
     << "detector_bandwidth_hz = " << detector_bandwidth_hz << "\n"
     << "clearance_dB = " << clearance_dB << "\n"
     << "cmrr_dB = " << cmrr_dB << "\n"
     << "n_pulses = " << n_pulses << "\n"
     << "piezo_period_pulses = " << piezo_period_pulses << "\n"
     << "vacuum_pulses = " << vacuum_pulses << "\n"
     << "seed = " << seed << "\n"
     << "truth_squeeze_dB = " << truth_squeeze_dB << "\n"
     << "truth_antisqueeze_dB = " << truth_antisqueeze_dB << "\n\n"
     << "[noise]\n"
     << "variance_noise_dB = " << variance_noise_dB << "\n";
  return os.str();
}

} // namespace sqz
