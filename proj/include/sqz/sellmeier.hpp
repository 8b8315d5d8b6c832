#pragma once

#include <string>

namespace sqz {

// KTP z-polarization dispersion (type-0 process: pump, signal and idler all
// polarized along z). Bulk indices follow the Kato-Takaoka fit with the
// Emanueli-Arie temperature correction. The waveguide set adds the modal
// dispersion of the graded-index guide: a quadratic effective-index term in
// the signal band and a constant pump-band offset calibrated so that
// first-order quasi-phase matching is degenerate at the datasheet operating
// point (poling 3.19 um, 89.1 C, degeneracy 795 nm).
class Sellmeier {
 public:
  static Sellmeier from_name(const std::string& name);
  static constexpr const char* kDefaultSet = "ktp-z-waveguide";
  static constexpr const char* kBulkSet = "ktp-kato-takaoka-2002";

  const std::string& name() const { return name_; }

  // refractive index for signal/idler legs; lambda in um, temperature in C
  double index(double lambda_um, double temperature_C) const;

  // index for the pump leg (includes the waveguide pump-band offset)
  double pump_index(double lambda_um, double temperature_C) const;

 private:
  Sellmeier(std::string name, double wg_curvature_per_nm2, bool calibrate_pump_offset);

  std::string name_;
  double wg_curvature_per_nm2_ = 0.0;
  double pump_offset_ = 0.0;
};

// bulk building blocks, exposed for tests
double ktp_nz_kato_takaoka(double lambda_um);
double ktp_nz_thermal_shift(double lambda_um, double temperature_C);

} // namespace sqz
