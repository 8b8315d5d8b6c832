#include "sqz/sellmeier.hpp"

#include <cmath>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

constexpr double kReferencePolingUm = 3.19;
constexpr double kReferenceTemperatureC = 89.1;
constexpr double kReferenceDegeneracyNm = 795.0;
constexpr double kWaveguideCurvaturePerNm2 = 2.0e-7;

} // namespace

double ktp_nz_kato_takaoka(double lambda_um) {
  const double l2 = lambda_um * lambda_um;
  return std::sqrt(4.59423 + 0.06206 / (l2 - 0.04763) + 110.80672 / (l2 - 86.12171));
}

double ktp_nz_thermal_shift(double lambda_um, double temperature_C) {
  const double dt = temperature_C - 25.0;
  const double l = lambda_um;
  const double a = 9.9587e-6 + 9.9228e-6 / l - 8.9603e-6 / (l * l) + 4.1010e-6 / (l * l * l);
  const double b = -1.1882e-8 + 10.459e-8 / l - 9.8136e-8 / (l * l) + 3.1481e-8 / (l * l * l);
  return a * dt + b * dt * dt;
}

Sellmeier::Sellmeier(std::string name, double wg_curvature_per_nm2, bool calibrate_pump_offset)
    : name_(std::move(name)), wg_curvature_per_nm2_(wg_curvature_per_nm2) {
  if (!calibrate_pump_offset) return;
  // Zero the first-order QPM mismatch k_p - 2 k_s - 2 pi / poling at the
  // datasheet operating point by shifting the pump-band effective index.
  const double lam_s_um = kReferenceDegeneracyNm * 1e-3;
  const double lam_p_um = lam_s_um / 2.0;
  const double n_s = index(lam_s_um, kReferenceTemperatureC);
  const double n_p = index(lam_p_um, kReferenceTemperatureC);
  // k/(2 pi) in 1/um
  const double mismatch = n_p / lam_p_um - 2.0 * n_s / lam_s_um - 1.0 / kReferencePolingUm;
  pump_offset_ = -mismatch * lam_p_um;
}

double Sellmeier::index(double lambda_um, double temperature_C) const {
  double n = ktp_nz_kato_takaoka(lambda_um) + ktp_nz_thermal_shift(lambda_um, temperature_C);
  if (wg_curvature_per_nm2_ != 0.0) {
    const double dl_nm = lambda_um * 1e3 - kReferenceDegeneracyNm;
    n += wg_curvature_per_nm2_ * dl_nm * dl_nm;
  }
  return n;
}

double Sellmeier::pump_index(double lambda_um, double temperature_C) const {
  return index(lambda_um, temperature_C) + pump_offset_;
}

Sellmeier Sellmeier::from_name(const std::string& name) {
  if (name == kDefaultSet || name.empty())
    return Sellmeier(kDefaultSet, kWaveguideCurvaturePerNm2, true);
  if (name == kBulkSet)
    return Sellmeier(kBulkSet, 0.0, false);
  throw config_error("unknown sellmeier_set '" + name + "' (available: " +
                     std::string(kDefaultSet) + ", " + std::string(kBulkSet) + ")");
}

} // namespace sqz
