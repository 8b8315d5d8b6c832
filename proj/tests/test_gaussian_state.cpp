#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqz/errors.hpp"
#include "sqz/gaussian_state.hpp"
#include "test_helpers.hpp"

using namespace sqz;

TEST_CASE("squeezed vacuum covariance") {
  SUBCASE("zero squeezing is vacuum") {
    const GaussianState s = make_squeezed_vacuum({0.0, 0.0});
    CHECK((s.Vqq - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.Vpp - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("r for the -0.47 dB table entry") {
    // r derived from dB: r = -ln(10^(-0.47/20))
    const double r = -std::log(std::pow(10.0, -0.47 / 20.0));
    const GaussianState s = make_squeezed_vacuum({r});
    CHECK(s.Vqq(0, 0) == doctest::Approx(0.897433).epsilon(1e-5));
    CHECK(variance_to_dB(s.Vqq(0, 0)) == doctest::Approx(-0.47).epsilon(1e-12));
  }

  SUBCASE("unit squeezing parameter") {
    const GaussianState s = make_squeezed_vacuum({1.0});
    CHECK(s.Vqq(0, 0) == doctest::Approx(std::exp(-2.0)));
    CHECK(s.Vpp(0, 0) == doctest::Approx(std::exp(2.0)));
  }

  SUBCASE("negative r squeezes p") {
    const GaussianState s = make_squeezed_vacuum({-0.3});
    CHECK(s.Vqq(0, 0) > 1.0);
    CHECK(s.Vpp(0, 0) < 1.0);
  }

  SUBCASE("non-finite input rejected") {
    CHECK_THROWS_AS(make_squeezed_vacuum({std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(make_squeezed_vacuum({}), std::invalid_argument);
  }

  SUBCASE("minimum uncertainty per mode for every r") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      const double r = rng.uniform(-2.0, 2.0);
      const GaussianState s = make_squeezed_vacuum({r});
      CHECK(s.Vqq(0, 0) * s.Vpp(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("loss channel") {
  const GaussianState pure = make_squeezed_vacuum({1.0});

  SUBCASE("eta = 1 leaves the state unchanged") {
    const GaussianState out = apply_loss(pure, 1.0);
    CHECK((out.Vqq - pure.Vqq).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("eta = 0 gives vacuum") {
    const GaussianState out = apply_loss(pure, 0.0);
    CHECK((out.Vqq - Mat::Identity(1, 1)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((out.Vpp - Mat::Identity(1, 1)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("half loss on r = 1") {
    const GaussianState out = apply_loss(pure, 0.5);
    CHECK(out.Vqq(0, 0) == doctest::Approx(0.5 * std::exp(-2.0) + 0.5).epsilon(1e-14));
  }

  SUBCASE("eta outside [0, 1] rejected") {
    CHECK_THROWS_AS(apply_loss(pure, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(apply_loss(pure, 1.1), std::invalid_argument);
  }

  SUBCASE("physicality preserved for all eta") {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
      const GaussianState s = testing::random_physical_state(4, rng);
      const GaussianState out = apply_loss(s, rng.uniform(0.0, 1.0));
      CHECK(check_physicality(out).physical);
    }
  }
}

TEST_CASE("dB conversions") {
  CHECK(variance_to_dB(1.0) == 0.0);
  CHECK(variance_to_dB(0.8974) == doctest::Approx(-0.470).epsilon(1e-3));
  CHECK(variance_to_dB(1.135) == doctest::Approx(0.55).epsilon(1e-2));
  CHECK_THROWS_AS(variance_to_dB(0.0), std::domain_error);
  CHECK_THROWS_AS(variance_to_dB(-1.0), std::domain_error);

  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const double v = std::exp(rng.uniform(-3.0, 3.0));
    CHECK(dB_to_variance(variance_to_dB(v)) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("physicality check") {
  SUBCASE("vacuum sits on the boundary") {
    const PhysicalityReport rep = check_physicality(GaussianState::vacuum(3));
    CHECK(rep.physical);
    CHECK(std::abs(rep.min_eigenvalue) < 1e-12);
  }

  SUBCASE("sub-vacuum isotropic noise is unphysical") {
    // 2x2 oracle: V + iJ for V = 0.5 I has eigenvalues 0.5 -+ 1
    GaussianState s(0.5 * Mat::Identity(1, 1), 0.5 * Mat::Identity(1, 1), "test");
    const PhysicalityReport rep = check_physicality(s);
    CHECK_FALSE(rep.physical);
    CHECK(rep.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
  }

  SUBCASE("squeezed vacuum plus loss is always physical") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> r = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                               rng.uniform(-2.0, 2.0)};
      const GaussianState s = apply_loss(make_squeezed_vacuum(r), rng.uniform(0.0, 1.0));
      CHECK(check_physicality(s).physical);
    }
  }
}

TEST_CASE("state and form validation") {
  SUBCASE("asymmetric block rejected") {
    Mat bad = Mat::Identity(2, 2);
    bad(0, 1) = 1e-6;
    CHECK_THROWS_AS(GaussianState(bad, Mat::Identity(2, 2), "x"), std::invalid_argument);
  }

  SUBCASE("symplectic form identities") {
    const SymplecticForm form(3);
    CHECK((form.J * form.J + Mat::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((form.J.transpose() + form.J).cwiseAbs().maxCoeff() == 0.0);
  }
}
