#include <cmath>
#include <random>

#include "cofermion/entanglement.hpp"
#include "cofermion/solutions.hpp"
#include "doctest.h"

using namespace cofermion;
using entanglement::SchmidtSpectrum;

TEST_CASE("schmidt spectrum invariants") {
  CHECK_THROWS(SchmidtSpectrum({}));
  CHECK_THROWS(SchmidtSpectrum({0.9, 0.1}));            // squares must sum to 1
  CHECK_THROWS(SchmidtSpectrum({1.2, -0.66332495807}));  // negative value

  SchmidtSpectrum s({0.6, 0.8});
  CHECK(s[0] == 0.8);  // sorted descending
  CHECK(s[1] == 0.6);

  // a lone surviving coefficient is pinned to exactly 1
  SchmidtSpectrum lone({1.0 - 2e-16, 1e-15});
  CHECK(lone[0] == 1.0);
  CHECK(lone[1] == 0.0);
}

TEST_CASE("schmidt decomposition of wave matrices") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  auto spec = entanglement::schmidt(composite::WaveMatrix(d, 1));
  CHECK(spec[0] == 1.0);
  CHECK(spec[1] == 0.0);

  Rng rng(13);
  auto phi4 = solutions::coboson_phi(random_unitary(4, rng),
                                     random_unitary(4, rng), 4, 0, 1,
                                     random_unitary(4, rng));
  auto s4 = entanglement::schmidt(phi4);
  for (int k = 0; k < 4; ++k) CHECK(s4[k] == doctest::Approx(0.5).epsilon(1e-13));

  solutions::TwoModeParams p;
  p.theta = M_PI / 8;
  auto fam = solutions::two_mode_family(p);
  auto s1 = entanglement::schmidt(fam[0]);
  CHECK(s1[0] == doctest::Approx(std::cos(M_PI / 8)).epsilon(1e-13));
  CHECK(s1[1] == doctest::Approx(std::sin(M_PI / 8)).epsilon(1e-13));
}

TEST_CASE("entropy and purity closed values") {
  // m equal coefficients: entropy ln m, purity 1/m
  for (int m = 1; m <= 6; ++m) {
    std::vector<double> v(m, 1.0 / std::sqrt(double(m)));
    SchmidtSpectrum s(v);
    CHECK(entanglement::entropy(s) == doctest::Approx(std::log(double(m))).epsilon(1e-13));
    CHECK(entanglement::purity(s) == doctest::Approx(1.0 / m).epsilon(1e-13));
  }

  SchmidtSpectrum product({1.0, 0.0});
  CHECK(entanglement::entropy(product) == 0.0);
  CHECK(entanglement::purity(product) == 1.0);

  // lambda^2 = (1/2, 1/4, 1/4)
  SchmidtSpectrum mixed({std::sqrt(0.5), 0.5, 0.5});
  CHECK(entanglement::entropy(mixed) ==
        doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-13));
  CHECK(entanglement::purity(mixed) == doctest::Approx(0.375).epsilon(1e-13));
}

TEST_CASE("two-mode closed forms") {
  CHECK(entanglement::two_mode_entropy_closed(0.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(std::abs(entanglement::two_mode_entropy_closed(M_PI / 4)) < 1e-12);
  CHECK(std::abs(entanglement::two_mode_entropy_closed(-M_PI / 4)) < 1e-12);
  CHECK(entanglement::two_mode_entropy_closed(M_PI / 8) ==
        doctest::Approx(0.4165).epsilon(2e-4));

  CHECK(entanglement::two_mode_purity_closed(0.0) ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK(entanglement::two_mode_purity_closed(M_PI / 4) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(entanglement::two_mode_purity_closed(-M_PI / 4) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(entanglement::two_mode_purity_closed(M_PI / 8) ==
        doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("closed forms agree with the singular-value path") {
  Rng rng(37);
  std::uniform_real_distribution<double> u(-M_PI / 4, M_PI / 4);
  std::uniform_real_distribution<double> ph(0, 2 * M_PI);
  for (int rep = 0; rep < 1000; ++rep) {
    solutions::TwoModeParams p;
    p.theta = u(rng);
    p.psi = ph(rng);
    p.phi = ph(rng);
    p.U = random_unitary(2, rng);
    p.V = random_unitary(2, rng);
    auto fam = solutions::two_mode_family(p);
    for (int alpha = 0; alpha < 2; ++alpha) {
      auto s = entanglement::schmidt(fam[alpha]);
      CHECK(std::abs(entanglement::entropy(s) -
                     entanglement::two_mode_entropy_closed(p.theta)) < 1e-12);
      CHECK(std::abs(entanglement::purity(s) -
                     entanglement::two_mode_purity_closed(p.theta)) < 1e-12);
    }
  }
}

TEST_CASE("unitary invariance and the purity-entropy correspondence") {
  Rng rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    composite::WaveFamily fam = composite::random_family(3, 3, 1, rng);
    auto s0 = entanglement::schmidt(fam[0]);
    Matrix rotated = random_unitary(3, rng) * fam[0].phi() *
                     random_unitary(3, rng).adjoint();
    auto s1 = entanglement::schmidt(composite::WaveMatrix(rotated, 1));
    CHECK(std::abs(entanglement::entropy(s0) - entanglement::entropy(s1)) < 1e-12);
    CHECK(std::abs(entanglement::purity(s0) - entanglement::purity(s1)) < 1e-12);
  }

  // purity = 1 iff entropy = 0 over random spectra
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    double x = u(rng);
    std::vector<double> v{std::sqrt(x), std::sqrt(1.0 - x)};
    SchmidtSpectrum s(v);
    bool pure = std::abs(entanglement::purity(s) - 1.0) < 1e-12;
    bool zero_entropy = entanglement::entropy(s) < 1e-12;
    CHECK(pure == zero_entropy);
  }
}

TEST_CASE("coboson closed loop") {
  Rng rng(43);
  for (int m = 1; m <= 6; ++m) {
    auto phi = solutions::coboson_phi(random_unitary(m, rng),
                                      random_unitary(m, rng), m, 0, 1,
                                      random_unitary(m, rng));
    auto s = entanglement::schmidt(phi);
    CHECK(std::abs(entanglement::entropy(s) - std::log(double(m))) < 1e-12);
    CHECK(std::abs(entanglement::purity(s) - 1.0 / m) < 1e-12);
  }
}
