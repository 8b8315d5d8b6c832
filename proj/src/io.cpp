#include "sqz/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sqz/errors.hpp"

namespace sqz {

using nlohmann::json;

namespace {

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& rows) {
  const Index n = static_cast<Index>(rows.size());
  if (n == 0) throw config_error("state json: empty matrix");
  const Index m = static_cast<Index>(rows[0].size());
  Mat out(n, m);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[i].size()) != m)
      throw config_error("state json: ragged matrix");
    for (Index j = 0; j < m; ++j) out(i, j) = rows[i][j].get<double>();
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << text;
}

constexpr std::uint32_t kRecordVersion = 1;

json pulse_config_to_json(const PulseTrainConfig& c) {
  return json{{"rep_rate_hz", c.rep_rate_hz},
              {"samples_per_pulse", c.samples_per_pulse},
              {"detector_bandwidth_hz", c.detector_bandwidth_hz},
              {"electronic_noise_dB", c.electronic_noise_dB},
              {"cmrr_dB", c.cmrr_dB},
              {"piezo_period_pulses", c.piezo_period_pulses},
              {"duration_pulses", c.duration_pulses},
              {"vacuum_pulses", c.vacuum_pulses},
              {"n_vacuum_resolved", c.resolved_vacuum_pulses()},
              {"seed", c.seed}};
}

PulseTrainConfig pulse_config_from_json(const json& j) {
  PulseTrainConfig c;
  c.rep_rate_hz = j.at("rep_rate_hz").get<double>();
  c.samples_per_pulse = j.at("samples_per_pulse").get<int>();
  c.detector_bandwidth_hz = j.at("detector_bandwidth_hz").get<double>();
  c.electronic_noise_dB = j.at("electronic_noise_dB").get<double>();
  c.cmrr_dB = j.at("cmrr_dB").get<double>();
  c.piezo_period_pulses = j.at("piezo_period_pulses").get<long>();
  c.duration_pulses = j.at("duration_pulses").get<long>();
  c.vacuum_pulses = j.at("vacuum_pulses").get<long>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

} // namespace

std::string gaussian_state_to_json(const GaussianState& state) {
  json j{{"n_modes", state.n_modes},
         {"basis", state.basis_label},
         {"Vqq", matrix_to_json(state.Vqq)},
         {"Vpp", matrix_to_json(state.Vpp)}};
  return j.dump(1);
}

GaussianState gaussian_state_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string("state json: parse failure: ") + e.what());
  }
  const Index n = j.at("n_modes").get<Index>();
  GaussianState state(matrix_from_json(j.at("Vqq")), matrix_from_json(j.at("Vpp")),
                      j.value("basis", "unknown"));
  if (state.n_modes != n) throw config_error("state json: n_modes does not match matrices");
  return state;
}

void write_gaussian_state(const std::string& path, const GaussianState& state) {
  write_file(path, gaussian_state_to_json(state));
}

GaussianState read_gaussian_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open state file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return gaussian_state_from_json(ss.str());
}

void write_jsa_csv(const std::string& path, const JointSpectralAmplitude& jsa) {
  std::ostringstream os;
  os.precision(17);
  os << "omega_s,omega_i,re_amplitude,im_amplitude\n";
  for (Index s = 0; s < jsa.grid.n_points; ++s)
    for (Index i = 0; i < jsa.grid.n_points; ++i)
      os << jsa.grid.omega[s] << ',' << jsa.grid.omega[i] << ','
         << jsa.amplitude(s, i).real() << ',' << jsa.amplitude(s, i).imag() << '\n';
  write_file(path, os.str());
}

void write_schmidt_json(const std::string& path, const SchmidtDecomposition& dec) {
  json lambdas = json::array();
  for (Index j = 0; j < dec.lambdas.size(); ++j) lambdas.push_back(dec.lambdas[j]);
  json signs = json::array();
  for (Index j = 0; j < dec.signs.size(); ++j) signs.push_back(dec.signs[j]);
  json out{{"lambdas", std::move(lambdas)},
           {"K", dec.schmidt_K},
           {"sellmeier_set", dec.sellmeier_set},
           {"ellipse_signs", std::move(signs)}};
  write_file(path, out.dump(1));
}

void write_basis_csv(const std::string& path, const ModeBasis& basis) {
  std::ostringstream os;
  os.precision(17);
  os << "wavelength_nm";
  for (Index m = 0; m < basis.n_modes(); ++m) os << ",mode_" << m;
  os << '\n';
  const Arr lam = basis.grid.wavelengths_nm();
  for (Index i = 0; i < basis.grid.n_points; ++i) {
    os << lam[i];
    for (Index m = 0; m < basis.n_modes(); ++m) os << ',' << basis.functions(m, i);
    os << '\n';
  }
  write_file(path, os.str());
}

void write_variance_dataset_csv(const std::string& path, const VarianceDataset& data) {
  std::ostringstream os;
  os.precision(17);
  os << "kind,i,j,var_q,var_p,sigma_q,sigma_p\n";
  for (int i = 0; i < data.n_modes; ++i) {
    const auto& e = data.single[static_cast<std::size_t>(i)];
    os << "single," << i << ",," << e.var_q << ',' << e.var_p << ',' << e.sigma_q << ','
       << e.sigma_p << '\n';
  }
  for (const auto& [key, e] : data.pairs)
    os << "pair," << key.first << ',' << key.second << ',' << e.var_q << ',' << e.var_p << ','
       << e.sigma_q << ',' << e.sigma_p << '\n';
  write_file(path, os.str());
}

VarianceDataset read_variance_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open dataset '" + path + "'");
  VarianceDataset data;
  data.n_modes = 0;
  std::string line;
  bool header = true;
  std::vector<std::pair<int, VarianceDataset::Entry>> singles;
  while (std::getline(in, line)) {
    if (header) { header = false; continue; }
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string kind, si, sj, f[4];
    std::getline(ss, kind, ',');
    std::getline(ss, si, ',');
    std::getline(ss, sj, ',');
    for (auto& v : f) std::getline(ss, v, ',');
    VarianceDataset::Entry e;
    try {
      e.var_q = std::stod(f[0]);
      e.var_p = std::stod(f[1]);
      e.sigma_q = f[2].empty() ? 0.0 : std::stod(f[2]);
      e.sigma_p = f[3].empty() ? 0.0 : std::stod(f[3]);
      if (kind == "single") {
        singles.push_back({std::stoi(si), e});
      } else if (kind == "pair") {
        int i = std::stoi(si), j = std::stoi(sj);
        if (i > j) std::swap(i, j);
        data.pairs[{i, j}] = e;
      } else {
        throw config_error("dataset: unknown row kind '" + kind + "'");
      }
    } catch (const config_error&) {
      throw;
    } catch (const std::exception&) {
      throw config_error("dataset: malformed row '" + line + "'");
    }
  }
  for (auto& [i, e] : singles) data.n_modes = std::max(data.n_modes, i + 1);
  for (auto& [key, e] : data.pairs) data.n_modes = std::max(data.n_modes, key.second + 1);
  data.single.resize(static_cast<std::size_t>(data.n_modes));
  std::vector<bool> seen(static_cast<std::size_t>(data.n_modes), false);
  for (auto& [i, e] : singles) {
    data.single[static_cast<std::size_t>(i)] = e;
    seen[static_cast<std::size_t>(i)] = true;
  }
  for (int i = 0; i < data.n_modes; ++i)
    if (!seen[static_cast<std::size_t>(i)])
      throw incomplete_dataset_error("dataset: missing single-mode row for mode " +
                                     std::to_string(i));
  return data;
}

void write_ppt_scan_csv(const std::string& path, const PPTScan& scan) {
  std::ostringstream os;
  os.precision(17);
  os << "mask,side_a,side_b,ppt_value,entangled,band_class\n";
  for (const PPTResult& r : scan.results) {
    os << r.bipartition.mask << ',';
    auto join = [&](const std::vector<int>& v) {
      std::string s;
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "|" : "") + std::to_string(v[k]);
      return s;
    };
    os << join(r.bipartition.side_a()) << ',' << join(r.bipartition.side_b()) << ','
       << r.ppt_value << ',' << (r.entangled ? 1 : 0) << ',' << band_class_name(r.band_class)
       << '\n';
  }
  write_file(path, os.str());
}

std::string ppt_summary_json(const PPTScan& scan, const std::string& config_text) {
  json per_class = json::object();
  for (const auto& [cls, count] : scan.class_counts) {
    per_class[band_class_name(cls)] = {{"count", count},
                                       {"median_ppt", scan.class_medians.at(cls)}};
  }
  json sorted = json::array();
  for (const PPTResult& r : scan.results) sorted.push_back(r.ppt_value);
  json out{{"n_bipartitions", scan.results.size()},
           {"n_entangled", scan.n_entangled},
           {"bands", std::move(per_class)},
           {"sorted_ppt_values", std::move(sorted)},
           {"config", config_text}};
  return out.dump(1);
}

void write_ppt_summary_json(const std::string& path, const PPTScan& scan,
                            const std::string& config_text) {
  write_file(path, ppt_summary_json(scan, config_text));
}

void write_pulse_record(const std::string& path, const PulseTrainRecord& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write record '" + path + "'");
  out.write("PTRN", 4);
  const std::uint32_t version = kRecordVersion;
  out.write(reinterpret_cast<const char*>(&version), 4);
  const std::string cfg = pulse_config_to_json(record.config).dump();
  const std::uint64_t cfg_len = cfg.size();
  out.write(reinterpret_cast<const char*>(&cfg_len), 8);
  out.write(cfg.data(), static_cast<std::streamsize>(cfg.size()));
  const std::uint64_t n = static_cast<std::uint64_t>(record.samples.size());
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(record.samples.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
}

PulseTrainRecord read_pulse_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open record '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "PTRN", 4) != 0)
    throw config_error("record: bad magic in '" + path + "'");
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), 4);
  if (version != kRecordVersion)
    throw config_error("record: unsupported version " + std::to_string(version));
  std::uint64_t cfg_len = 0;
  in.read(reinterpret_cast<char*>(&cfg_len), 8);
  std::string cfg(cfg_len, '\0');
  in.read(cfg.data(), static_cast<std::streamsize>(cfg_len));
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 8);
  PulseTrainRecord rec;
  rec.config = pulse_config_from_json(json::parse(cfg));
  rec.n_vacuum_pulses = rec.config.resolved_vacuum_pulses();
  rec.samples = Arr(static_cast<Index>(n));
  in.read(reinterpret_cast<char*>(rec.samples.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw config_error("record: truncated sample payload");
  return rec;
}

void write_pulse_truth_csv(const std::string& path, const PulseTrainRecord& record) {
  std::ostringstream os;
  os.precision(17);
  os << "pulse_index,theta,x_m\n";
  for (long m = 0; m < record.n_pulses(); ++m)
    os << m << ',' << record.theta[m] << ',' << record.x_truth[m] << '\n';
  write_file(path, os.str());
}

std::string squeezing_table_json(const std::vector<SqueezingReportEntry>& table) {
  json rows = json::array();
  for (const auto& e : table)
    rows.push_back({{"mode", e.mode_index},
                    {"squeeze_dB", e.squeeze_dB},
                    {"antisqueeze_dB", e.antisqueeze_dB}});
  return rows.dump(1);
}

std::string pulse_estimate_json(const PulseStage& stage, const std::string& config_text) {
  json out{{"squeeze_dB", stage.estimate.squeeze_dB},
           {"antisqueeze_dB", stage.estimate.antisqueeze_dB},
           {"standard_error_dB", stage.estimate.standard_error_dB},
           {"truth_squeeze_dB", stage.truth_squeeze_dB},
           {"truth_antisqueeze_dB", stage.truth_antisqueeze_dB},
           {"window_offset", stage.window.offset},
           {"window_length", stage.window.length},
           {"shot_to_electronic", stage.window.shot_to_electronic},
           {"lag1_correlation", stage.isolation.rho1},
           {"isolation_pass", stage.isolation.pass},
           {"n_pulses_used", stage.estimate.n_pulses_used},
           {"config", config_text}};
  return out.dump(1);
}

std::string state_stage_json(const StateStage& stage, const std::string& config_text) {
  json band_powers = json::array();
  for (Index i = 0; i < stage.band_powers.size(); ++i) band_powers.push_back(stage.band_powers[i]);
  json out{{"gain", stage.gain},
           {"n_active_supermodes", stage.n_active},
           {"schmidt_K", stage.dec.schmidt_K},
           {"sellmeier_set", stage.dec.sellmeier_set},
           {"hg_table", json::parse(squeezing_table_json(stage.hg_table))},
           {"band_powers", std::move(band_powers)},
           {"supermode_state", json::parse(gaussian_state_to_json(stage.supermode_state))},
           {"frexel_state", json::parse(gaussian_state_to_json(stage.frexel_state))},
           {"config", config_text}};
  return out.dump(1);
}

std::string tomography_json(const TomographyStage& stage, const std::string& config_text) {
  json modes = json::array();
  for (std::size_t k = 0; k < stage.recovery.eigen_dB.size(); ++k) {
    const auto& e = stage.recovery.eigen_dB[k];
    json row{{"mode", e.mode_index},
             {"squeeze_dB", e.squeeze_dB},
             {"antisqueeze_dB", e.antisqueeze_dB},
             {"relative_sign", stage.recovery.relative_signs[k]},
             {"sigma_squeeze_dB", stage.uncertainty.sigma_squeeze_dB[static_cast<Index>(k)]},
             {"sigma_antisqueeze_dB",
              stage.uncertainty.sigma_antisqueeze_dB[static_cast<Index>(k)]}};
    if (stage.simulated) {
      row["reference_squeeze_dB"] = stage.reference_recovery.eigen_dB[k].squeeze_dB;
      row["reference_antisqueeze_dB"] = stage.reference_recovery.eigen_dB[k].antisqueeze_dB;
    }
    modes.push_back(std::move(row));
  }
  json out{{"state", json::parse(gaussian_state_to_json(stage.reconstruction.state))},
           {"physical", stage.reconstruction.physicality.physical},
           {"min_physicality_eigenvalue", stage.reconstruction.physicality.min_eigenvalue},
           {"recovered_modes", std::move(modes)},
           {"residual_q_offdiag", stage.recovery.residual_q_offdiag},
           {"tie_break_applied", stage.recovery.tie_break_applied},
           {"notes", stage.recovery.notes},
           {"config", config_text}};
  return out.dump(1);
}

void write_text(const std::string& path, const std::string& text) { write_file(path, text); }

} // namespace sqz
