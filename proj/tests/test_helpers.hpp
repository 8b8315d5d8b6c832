#pragma once

#include <vector>

#include "sqz/gaussian_state.hpp"
#include "sqz/mode_basis.hpp"
#include "sqz/rng.hpp"
#include "sqz/types.hpp"

namespace sqz::testing {

inline Mat random_orthogonal(Index n, Rng& rng) {
  Mat g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

// squeezed vacuum with random signed r, rotated by a random orthogonal
// congruence on both blocks, then random loss
inline GaussianState random_physical_state(Index n, Rng& rng, double max_r = 1.0,
                                           bool with_loss = true) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (auto& v : r) v = rng.uniform(-max_r, max_r);
  GaussianState state = make_squeezed_vacuum(r);
  const Mat o = random_orthogonal(n, rng);
  Mat vqq = o * state.Vqq * o.transpose();
  Mat vpp = o * state.Vpp * o.transpose();
  vqq = ((vqq + vqq.transpose()) / 2.0).eval();
  vpp = ((vpp + vpp.transpose()) / 2.0).eval();
  GaussianState rotated(std::move(vqq), std::move(vpp), "rotated");
  if (!with_loss) return rotated;
  return apply_loss(rotated, rng.uniform(0.2, 1.0));
}

} // namespace sqz::testing
