#include "sqz/frequency_grid.hpp"

#include <stdexcept>

namespace sqz {

FrequencyGrid::FrequencyGrid(double lambda_min, double lambda_max, Index n)
    : n_points(n), lambda_min_nm(lambda_min), lambda_max_nm(lambda_max) {
  if (n < 16) throw std::invalid_argument("FrequencyGrid: n_points < 16");
  if (!(lambda_min > 0.0 && lambda_min < lambda_max))
    throw std::invalid_argument("FrequencyGrid: need 0 < lambda_min < lambda_max");
  const double w_lo = omega_from_lambda_nm(lambda_max);
  const double w_hi = omega_from_lambda_nm(lambda_min);
  omega = Arr::LinSpaced(n, w_lo, w_hi);
  spacing = (w_hi - w_lo) / static_cast<double>(n - 1);
}

Arr FrequencyGrid::wavelengths_nm() const {
  return 2.0 * M_PI * kSpeedOfLight / omega * 1e9;
}

} // namespace sqz
