#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqz/errors.hpp"
#include "sqz/tomography.hpp"
#include "test_helpers.hpp"

using namespace sqz;

TEST_CASE("variance simulation and reconstruction") {
  Rng rng(42);

  SUBCASE("noiseless vacuum dataset") {
    const GaussianState vac = GaussianState::vacuum(4);
    const VarianceDataset data = simulate_variance_dataset(vac, 0.0, rng);
    for (const auto& e : data.single) {
      CHECK(e.var_q == 1.0);
      CHECK(e.var_p == 1.0);
    }
    const ReconstructionResult rec = reconstruct_covariance(data);
    CHECK((rec.state.Vqq - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(rec.physicality.physical);
  }

  SUBCASE("two-mode arithmetic oracle") {
    Mat vqq(2, 2), vpp(2, 2);
    vqq << 0.9, -0.05, -0.05, 0.9;
    vpp << 1.2, 0.07, 0.07, 1.2;
    const GaussianState s(vqq, vpp, "test");
    const VarianceDataset data = simulate_variance_dataset(s, 0.0, rng);
    // D2q_{0+1} = (0.9 + 0.9)/2 - 0.05 = 0.85
    CHECK(data.pairs.at({0, 1}).var_q == doctest::Approx(0.85).epsilon(1e-15));
    const ReconstructionResult rec = reconstruct_covariance(data);
    CHECK(rec.state.Vqq(0, 1) == doctest::Approx(-0.05).epsilon(1e-15));
    CHECK(rec.state.Vpp(0, 1) == doctest::Approx(0.07).epsilon(1e-15));
  }

  SUBCASE("noiseless round trip is exact on random physical states") {
    for (int t = 0; t < 25; ++t) {
      const GaussianState s = testing::random_physical_state(8, rng);
      const ReconstructionResult rec =
          reconstruct_covariance(simulate_variance_dataset(s, 0.0, rng));
      CHECK((rec.state.Vqq - s.Vqq).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((rec.state.Vpp - s.Vpp).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  SUBCASE("reconstruction error bounded by propagated jitter") {
    const GaussianState s = testing::random_physical_state(6, rng);
    const double noise = 0.05;
    // multiplicative jitter of at most 10^(0.05/10) on every input
    const double rel = std::pow(10.0, noise / 10.0) - 1.0;
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
      const ReconstructionResult rec =
          reconstruct_covariance(simulate_variance_dataset(s, noise, rng));
      worst = std::max(worst, (rec.state.Vqq - s.Vqq).cwiseAbs().maxCoeff());
    }
    // off-diagonals combine one pair and two halved singles
    const double bound = rel * (2.0 * s.Vqq.cwiseAbs().maxCoeff() + 2.0);
    CHECK(worst < bound);
    CHECK(worst > 0.0);
  }

  SUBCASE("missing pair raises with the pair named") {
    const GaussianState s = testing::random_physical_state(4, rng);
    VarianceDataset data = simulate_variance_dataset(s, 0.0, rng);
    data.pairs.erase({1, 3});
    try {
      reconstruct_covariance(data);
      FAIL("expected incomplete_dataset_error");
    } catch (const incomplete_dataset_error& e) {
      CHECK(std::string(e.what()).find("(1,3)") != std::string::npos);
    }
  }

  SUBCASE("band-power imbalance biases the pair combination") {
    Mat vqq(2, 2), vpp(2, 2);
    vqq << 0.9, -0.05, -0.05, 0.9;
    vpp << 1.2, 0.07, 0.07, 1.2;
    const GaussianState s(vqq, vpp, "test");
    Vec power(2);
    power << 1.0, 0.5;
    const VarianceDataset data = simulate_variance_dataset(s, 0.0, rng, &power);
    // x_{0+1} with unequal powers: (p0 V00 + p1 V11 + 2 sqrt(p0 p1) V01)/(p0 + p1)
    const double expect = (1.0 * 0.9 + 0.5 * 0.9 + 2.0 * std::sqrt(0.5) * -0.05) / 1.5;
    CHECK(data.pairs.at({0, 1}).var_q == doctest::Approx(expect).epsilon(1e-15));
    // reconstructing under the equal-power assumption is now biased
    const ReconstructionResult rec = reconstruct_covariance(data);
    CHECK(rec.state.Vqq(0, 1) != doctest::Approx(-0.05).epsilon(1e-3));
  }
}

TEST_CASE("supermode recovery") {
  Rng rng(77);

  SUBCASE("already-diagonal state needs no rotation") {
    const GaussianState s = make_squeezed_vacuum({0.5, 0.3, 0.1});
    const SupermodeRecovery rec = recover_supermodes(s);
    // each transform row is a signed unit vector
    for (Index k = 0; k < 3; ++k) {
      Vec row = rec.transform.row(k).cwiseAbs().transpose();
      CHECK(row.maxCoeff() == doctest::Approx(1.0).epsilon(1e-9));
    }
    // p-block ordering puts the largest antisqueezing first
    CHECK(rec.eigen_dB[0].antisqueeze_dB == doctest::Approx(variance_to_dB(std::exp(1.0))));
    CHECK(rec.eigen_dB[0].squeeze_dB == doctest::Approx(variance_to_dB(std::exp(-1.0))));
  }

  SUBCASE("construct-then-invert oracle") {
    const std::vector<double> r = {0.6, 0.45, 0.3, 0.15, 0.05};
    const GaussianState diag = make_squeezed_vacuum(r);
    const Mat o = testing::random_orthogonal(5, rng);
    Mat vqq = (o * diag.Vqq * o.transpose()).eval();
    Mat vpp = (o * diag.Vpp * o.transpose()).eval();
    vqq = ((vqq + vqq.transpose()) / 2.0).eval();
    vpp = ((vpp + vpp.transpose()) / 2.0).eval();
    const SupermodeRecovery rec = recover_supermodes(GaussianState(vqq, vpp, "rotated"));
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double expected_sq = variance_to_dB(std::exp(-2.0 * r[k]));
      const double expected_asq = variance_to_dB(std::exp(2.0 * r[k]));
      CHECK(rec.eigen_dB[k].squeeze_dB == doctest::Approx(expected_sq).epsilon(1e-9));
      CHECK(rec.eigen_dB[k].antisqueeze_dB == doctest::Approx(expected_asq).epsilon(1e-9));
      CHECK(rec.relative_signs[k] == 1);
    }
    CHECK(rec.residual_q_offdiag < 1e-9);
  }

  SUBCASE("rotated squeezing ellipses carry negative relative sign") {
    const GaussianState s = make_squeezed_vacuum({0.4, -0.4});
    const SupermodeRecovery rec = recover_supermodes(s);
    CHECK(rec.relative_signs[0] == 1);    // antisqueezed in p
    CHECK(rec.relative_signs[1] == -1);   // ellipse rotated: squeezed in p
  }

  SUBCASE("transform orthogonality and trace preservation") {
    for (int t = 0; t < 30; ++t) {
      const GaussianState s = testing::random_physical_state(6, rng);
      const SupermodeRecovery rec = recover_supermodes(s);
      const Mat tt = rec.transform * rec.transform.transpose();
      CHECK((tt - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-8);
      const Mat q_rot = rec.transform * s.Vqq * rec.transform.transpose();
      const Mat p_rot = rec.transform * s.Vpp * rec.transform.transpose();
      CHECK(q_rot.trace() == doctest::Approx(s.Vqq.trace()).epsilon(1e-9));
      CHECK(p_rot.trace() == doctest::Approx(s.Vpp.trace()).epsilon(1e-9));
    }
  }

  SUBCASE("shared eigenbasis leaves no q residue") {
    // q and p blocks share eigenvectors in the noiseless real-pump model
    const std::vector<double> r = {0.5, 0.2, -0.35, 0.1};
    const GaussianState diag = make_squeezed_vacuum(r);
    const Mat o = testing::random_orthogonal(4, rng);
    Mat vqq = ((o * diag.Vqq * o.transpose() + (o * diag.Vqq * o.transpose()).transpose()) / 2.0);
    Mat vpp = ((o * diag.Vpp * o.transpose() + (o * diag.Vpp * o.transpose()).transpose()) / 2.0);
    const SupermodeRecovery rec = recover_supermodes(GaussianState(vqq, vpp, "rotated"));
    CHECK(rec.residual_q_offdiag < 1e-9);
  }

  SUBCASE("degenerate eigenvalues fall back to the q-diagonal tie break") {
    const GaussianState s = make_squeezed_vacuum({0.3, -0.3});   // equal p eigenvalues? no
    // build an exactly degenerate p block with distinct q diagonal
    Mat vqq(2, 2), vpp(2, 2);
    vqq << 0.5, 0.0, 0.0, 0.8;
    vpp << 1.7, 0.0, 0.0, 1.7;
    const SupermodeRecovery rec = recover_supermodes(GaussianState(vqq, vpp, "deg"));
    CHECK(rec.tie_break_applied);
    // descending |q diagonal| puts the 0.8 mode first
    CHECK(rec.eigen_dB[0].squeeze_dB == doctest::Approx(variance_to_dB(0.8)));
    CHECK(rec.eigen_dB[1].squeeze_dB == doctest::Approx(variance_to_dB(0.5)));
    (void)s;
  }
}

TEST_CASE("uncertainty propagation") {
  Rng rng(99);

  SUBCASE("zero input uncertainty propagates to zero") {
    const GaussianState s = testing::random_physical_state(4, rng);
    const VarianceDataset data = simulate_variance_dataset(s, 0.0, rng);
    const UncertaintyReport rep = propagate_uncertainty(data);
    CHECK(rep.sigma_Vqq.cwiseAbs().maxCoeff() == 0.0);
    CHECK(rep.sigma_squeeze_dB.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("closed-form off-diagonal propagation") {
    const GaussianState s = GaussianState::vacuum(3);
    VarianceDataset data = simulate_variance_dataset(s, 0.0, rng);
    const double sig = 0.01;
    for (auto& e : data.single) { e.sigma_q = sig; e.sigma_p = sig; }
    for (auto& [k, e] : data.pairs) { e.sigma_q = sig; e.sigma_p = sig; }
    const UncertaintyReport rep = propagate_uncertainty(data);
    // sigma_off = s sqrt(1 + 1/4 + 1/4) = s sqrt(3/2)
    CHECK(rep.sigma_Vqq(0, 1) == doctest::Approx(sig * std::sqrt(1.5)).epsilon(1e-12));
  }

  SUBCASE("first-order propagation matches Monte-Carlo within 15 percent") {
    const GaussianState s = testing::random_physical_state(5, rng, 0.4);
    const double noise = 0.05;
    const VarianceDataset nominal = simulate_variance_dataset(s, 0.0, rng);
    VarianceDataset with_sigmas = simulate_variance_dataset(s, noise, rng);
    const UncertaintyReport rep = propagate_uncertainty(with_sigmas);

    // Monte-Carlo oracle: empirical std of the reconstructed off-diagonal
    const int n_draws = 1000;
    double sum = 0.0, sum2 = 0.0;
    for (int d = 0; d < n_draws; ++d) {
      const ReconstructionResult rec =
          reconstruct_covariance(simulate_variance_dataset(s, noise, rng));
      const double v = rec.state.Vqq(0, 1);
      sum += v;
      sum2 += v * v;
    }
    const double mc_std = std::sqrt(sum2 / n_draws - (sum / n_draws) * (sum / n_draws));
    CHECK(rep.sigma_Vqq(0, 1) == doctest::Approx(mc_std).epsilon(0.15));
    (void)nominal;
  }
}
