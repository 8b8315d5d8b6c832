#include "sqz/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

void require_symmetric(const Mat& m, const char* name) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double dev = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale)
    throw std::invalid_argument(std::string(name) + " not symmetric (max dev " +
                                std::to_string(dev) + ")");
}

} // namespace

GaussianState::GaussianState(Mat vqq, Mat vpp, std::string basis)
    : n_modes(vqq.rows()), Vqq(std::move(vqq)), Vpp(std::move(vpp)), basis_label(std::move(basis)) {
  if (n_modes < 1) throw std::invalid_argument("GaussianState: empty covariance");
  if (Vqq.rows() != Vqq.cols() || Vpp.rows() != Vpp.cols() || Vpp.rows() != n_modes)
    throw std::invalid_argument("GaussianState: block shape mismatch");
  require_symmetric(Vqq, "Vqq");
  require_symmetric(Vpp, "Vpp");
}

GaussianState GaussianState::vacuum(Index n, std::string basis) {
  return GaussianState(Mat::Identity(n, n), Mat::Identity(n, n), std::move(basis));
}

SymplecticForm::SymplecticForm(Index n) : n_modes(n), J(Mat::Zero(2 * n, 2 * n)) {
  if (n < 1) throw std::invalid_argument("SymplecticForm: n_modes < 1");
  J.topRightCorner(n, n) = -Mat::Identity(n, n);
  J.bottomLeftCorner(n, n) = Mat::Identity(n, n);
}

GaussianState make_squeezed_vacuum(const std::vector<double>& r_list) {
  const Index n = static_cast<Index>(r_list.size());
  if (n < 1) throw std::invalid_argument("make_squeezed_vacuum: empty r_list");
  Mat vqq = Mat::Zero(n, n), vpp = Mat::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const double r = r_list[static_cast<std::size_t>(j)];
    if (!std::isfinite(r)) throw std::invalid_argument("make_squeezed_vacuum: non-finite r");
    vqq(j, j) = std::exp(-2.0 * r);
    vpp(j, j) = std::exp(+2.0 * r);
  }
  return GaussianState(std::move(vqq), std::move(vpp), "supermodes");
}

GaussianState apply_loss(const GaussianState& state, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("apply_loss: eta outside [0, 1]");
  const Mat id = Mat::Identity(state.n_modes, state.n_modes);
  return GaussianState(eta * state.Vqq + (1.0 - eta) * id,
                       eta * state.Vpp + (1.0 - eta) * id, state.basis_label);
}

double variance_to_dB(double v) {
  if (!(v > 0.0)) throw std::domain_error("variance_to_dB: v <= 0");
  return 10.0 * std::log10(v);
}

double dB_to_variance(double dB) { return std::pow(10.0, dB / 10.0); }

PhysicalityReport check_physicality(const GaussianState& state) {
  const Index n = state.n_modes;
  CMat m = CMat::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = state.Vqq.cast<std::complex<double>>();
  m.bottomRightCorner(n, n) = state.Vpp.cast<std::complex<double>>();
  const SymplecticForm form(n);
  m += std::complex<double>(0.0, 1.0) * form.J.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMat> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numerical_error("check_physicality: eigensolve failed");
  const double min_eig = solver.eigenvalues().minCoeff();
  return PhysicalityReport{min_eig >= -kPhysicalityTolerance, min_eig};
}

} // namespace sqz
