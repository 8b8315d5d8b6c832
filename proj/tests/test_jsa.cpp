#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqz/errors.hpp"
#include "sqz/experiment_config.hpp"
#include "sqz/jsa.hpp"
#include "sqz/pipeline.hpp"

using namespace sqz;

namespace {

FrequencyGrid paper_grid() { return FrequencyGrid(695.0, 895.0, 512); }
PumpEnvelope paper_pump() { return PumpEnvelope{397.5, 0.7}; }
PhaseMatchingSpec paper_pm() { return PhaseMatchingSpec{}; }

} // namespace

TEST_CASE("sellmeier model") {
  const Sellmeier bulk = Sellmeier::from_name(Sellmeier::kBulkSet);
  SUBCASE("bulk index magnitudes and normal dispersion") {
    const double n795 = ktp_nz_kato_takaoka(0.795);
    const double n397 = ktp_nz_kato_takaoka(0.3975);
    CHECK(n795 > 1.8);
    CHECK(n795 < 1.9);
    CHECK(n397 > n795);   // normal dispersion
    CHECK(bulk.index(0.795, 25.0) == doctest::Approx(n795));
  }
  SUBCASE("thermal shift is small and positive near 795 nm") {
    const double dn = ktp_nz_thermal_shift(0.795, 89.1);
    CHECK(dn > 1e-5);
    CHECK(dn < 5e-3);
    CHECK(ktp_nz_thermal_shift(0.795, 25.0) == 0.0);
  }
  SUBCASE("waveguide set is degenerate-phase-matched at the operating point") {
    const Sellmeier wg = Sellmeier::from_name(Sellmeier::kDefaultSet);
    const double w_deg = omega_from_lambda_nm(795.0);
    const double dk = phase_mismatch(paper_pm(), wg, w_deg, w_deg);
    CHECK(std::abs(dk) < 1e-3);   // rad/m; sinc(dk l / 2) = 1 to machine level
  }
  SUBCASE("unknown set rejected") {
    CHECK_THROWS_AS(Sellmeier::from_name("ktp-nosuch"), config_error);
  }
}

TEST_CASE("jsa separable limit via mismatch hook") {
  // flat pump + zero mismatch -> constant amplitude -> single Schmidt mode
  const FrequencyGrid grid(795.0 - 8.0, 795.0 + 8.0, 32);
  PumpEnvelope flat{397.5, 1e6};
  const JointSpectralAmplitude jsa =
      compute_jsa_with_mismatch(flat, grid, [](double, double) { return 0.0; }, 1.0);
  const SchmidtDecomposition dec = schmidt_decompose(jsa, 4);
  CHECK(dec.lambdas[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dec.schmidt_K == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("hand SVD oracle on a synthetic amplitude") {
  // A = diag(3, 4)/5: singular values 0.8 and 0.6 after sorting,
  // K = 1 / (0.8^4 + 0.6^4) = 1.854599...
  JointSpectralAmplitude jsa;
  jsa.grid.n_points = 2;
  jsa.grid.lambda_min_nm = 794.0;
  jsa.grid.lambda_max_nm = 796.0;
  jsa.grid.omega = Arr(2);
  jsa.grid.omega << omega_from_lambda_nm(796.0), omega_from_lambda_nm(794.0);
  jsa.grid.spacing = jsa.grid.omega[1] - jsa.grid.omega[0];
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 3.0 / 5.0;
  a(1, 1) = 4.0 / 5.0;
  jsa.amplitude = a.cast<std::complex<double>>();

  const SchmidtDecomposition dec = schmidt_decompose(jsa, 2);
  CHECK(dec.lambdas[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(dec.lambdas[1] == doctest::Approx(0.6).epsilon(1e-12));
  const double k_oracle = 1.0 / (std::pow(0.8, 4) + std::pow(0.6, 4));
  CHECK(dec.schmidt_K == doctest::Approx(k_oracle).epsilon(1e-12));
}

TEST_CASE("paper-default jsa") {
  const JointSpectralAmplitude jsa = compute_jsa(paper_pump(), paper_pm(), paper_grid());

  SUBCASE("normalized and exchange-symmetric") {
    CHECK(jsa.amplitude.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const Mat re = jsa.amplitude.real();
    CHECK((re - re.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("energy-conservation ridge at the pump center") {
    Index si = 0, ii = 0;
    jsa.amplitude.cwiseAbs().maxCoeff(&si, &ii);
    const double w_sum = jsa.grid.omega[si] + jsa.grid.omega[ii];
    const double w_p0 = omega_from_lambda_nm(397.5);
    CHECK(std::abs(w_sum - w_p0) < 2.0 * jsa.grid.spacing);
  }

  SUBCASE("Schmidt spectrum") {
    const SchmidtDecomposition dec = schmidt_decompose(jsa, 64);
    CHECK(dec.schmidt_K > 50.0);
    CHECK(dec.schmidt_K < 200.0);
    CHECK(dec.lambdas.squaredNorm() == doctest::Approx(1.0).epsilon(1e-9));
    // smooth decay with at least the measured 21 modes clearly present
    Index strong = 0;
    while (strong < dec.lambdas.size() && dec.lambdas[strong] / dec.lambdas[0] > 0.1) ++strong;
    CHECK(strong >= 21);
    // non-increasing ordering
    for (Index j = 1; j < dec.lambdas.size(); ++j) CHECK(dec.lambdas[j] <= dec.lambdas[j - 1]);
    // supermode orthonormality on the grid
    const Mat gram = dec.modes.gram();
    CHECK((gram - Mat::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-8);
    // type-0 signature: ellipse signs alternate for the leading pairs
    for (int j = 0; j < 6; ++j) CHECK(dec.signs[j] == (j % 2 == 0 ? 1 : -1));
  }

  SUBCASE("decomposition reconstructs the amplitude") {
    const SchmidtDecomposition dec = schmidt_decompose(jsa, jsa.grid.n_points);
    Mat rebuilt = Mat::Zero(jsa.grid.n_points, jsa.grid.n_points);
    const double w = jsa.grid.spacing;
    for (Index j = 0; j < dec.lambdas.size(); ++j) {
      const Vec mode = dec.modes.functions.row(j).transpose() * std::sqrt(w);
      rebuilt += dec.signs[j] * dec.lambdas[j] * mode * mode.transpose();
    }
    CHECK((rebuilt - jsa.amplitude.real()).cwiseAbs().maxCoeff() < 1e-8);
  }

  SUBCASE("halving the interaction length reduces K") {
    PhaseMatchingSpec half = paper_pm();
    half.interaction_length_mm /= 2.0;
    const auto dec_full = schmidt_decompose(jsa, 1);
    const auto dec_half = schmidt_decompose(compute_jsa(paper_pump(), half, paper_grid()), 1);
    CHECK(dec_half.schmidt_K < dec_full.schmidt_K);
  }
}

TEST_CASE("K stable under grid refinement") {
  const auto k_of = [&](Index n) {
    const FrequencyGrid grid(695.0, 895.0, n);
    return schmidt_decompose(compute_jsa(paper_pump(), paper_pm(), grid), 1).schmidt_K;
  };
  const double k512 = k_of(512);
  const double k1024 = k_of(1024);
  CHECK(std::abs(k1024 - k512) / k512 < 0.02);
}

TEST_CASE("jsa configuration errors") {
  SUBCASE("grid missing the degeneracy point") {
    const FrequencyGrid grid(600.0, 700.0, 64);
    CHECK_THROWS_AS(compute_jsa(paper_pump(), paper_pm(), grid), config_error);
  }
  SUBCASE("unknown sellmeier set") {
    PhaseMatchingSpec pm = paper_pm();
    pm.sellmeier_set = "bogus";
    CHECK_THROWS_AS(compute_jsa(paper_pump(), pm, paper_grid()), config_error);
  }
  SUBCASE("n_keep beyond the grid") {
    const JointSpectralAmplitude jsa = compute_jsa(paper_pump(), paper_pm(), paper_grid());
    CHECK_THROWS_AS(schmidt_decompose(jsa, 513), std::invalid_argument);
  }
}

TEST_CASE("squeezing spectrum and gain calibration") {
  const JointSpectralAmplitude jsa = compute_jsa(paper_pump(), paper_pm(), paper_grid());
  const SchmidtDecomposition dec = schmidt_decompose(jsa, 8);

  SUBCASE("zero gain, linearity, ordering") {
    for (double r : squeezing_spectrum(dec, 0.0, 8)) CHECK(r == 0.0);
    const auto r1 = squeezing_spectrum(dec, 0.7, 8);
    const auto r2 = squeezing_spectrum(dec, 1.4, 8);
    for (std::size_t j = 0; j < r1.size(); ++j) CHECK(r2[j] == doctest::Approx(2.0 * r1[j]));
    for (std::size_t j = 1; j < r1.size(); ++j) CHECK(r1[j] <= r1[j - 1]);
  }

  SUBCASE("signed spectrum carries the ellipse phases") {
    const auto rs = signed_squeezing_spectrum(dec, 0.7, 8);
    const auto ru = squeezing_spectrum(dec, 0.7, 8);
    for (std::size_t j = 0; j < rs.size(); ++j)
      CHECK(std::abs(rs[j]) == doctest::Approx(ru[j]));
    CHECK(rs[0] > 0.0);
    CHECK(rs[1] < 0.0);
  }

  SUBCASE("calibration hits the target through loss") {
    const double gain = calibrate_gain(dec, -0.47, 0.7);
    const double v = 0.7 * std::exp(-2.0 * gain * dec.lambdas[0]) + 0.3;
    CHECK(10.0 * std::log10(v) == doctest::Approx(-0.47).epsilon(1e-6));
    // Table-1 ordering: the calibrated spectrum decreases monotonically
    const auto r = squeezing_spectrum(dec, gain, 8);
    for (std::size_t j = 1; j < r.size(); ++j) CHECK(r[j] <= r[j - 1]);
  }

  SUBCASE("lossless closed form") {
    const double gain = calibrate_gain(dec, -3.0, 1.0);
    CHECK(gain == doctest::Approx(-std::log(std::pow(10.0, -3.0 / 20.0)) / dec.lambdas[0])
                      .epsilon(1e-12));
  }

  SUBCASE("target below the loss floor is infeasible") {
    // floor = 10 log10(1 - 0.7) = -5.23 dB
    CHECK_THROWS_AS(calibrate_gain(dec, -20.0, 0.7), infeasible_target_error);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(calibrate_gain(dec, 0.5, 0.7), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_gain(dec, -0.47, 0.0), std::invalid_argument);
  }
}
