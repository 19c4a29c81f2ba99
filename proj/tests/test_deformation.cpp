#include <cstdio>
#include <fstream>
#include <random>

#include "cofermion/deformation.hpp"
#include "doctest.h"

using namespace cofermion;
using deformation::StructureFunction;

TEST_CASE("structure function admissibility") {
  CHECK_THROWS(StructureFunction({0.1, 1.0, 2.0}, "bad chi0"));
  CHECK_THROWS(StructureFunction({0.0, 0.9, 2.0}, "bad chi1"));
  CHECK_THROWS(StructureFunction({0.0, 1.0, -0.5}, "negative"));
  CHECK_THROWS(StructureFunction({0.0}, "too short"));

  auto lin = StructureFunction::linear(5);
  CHECK(lin(0) == 0.0);
  CHECK(lin(3) == 3.0);
  CHECK(lin.table_max() == 5);
  CHECK_THROWS(lin(6));
  CHECK(lin.chi2() == 2.0);
  CHECK(lin.delta_chi2() == 0.0);

  auto c = StructureFunction::with_chi2(0.7, 5);
  CHECK(c(2) == 0.7);
  CHECK(c(3) == 3.0);
  CHECK(c.delta_chi2() == doctest::Approx(-1.3).epsilon(1e-15));
}

TEST_CASE("quasiboson structure function values") {
  // phi(1) = 1 for any admissible (m, kappa)
  for (int m = 1; m <= 5; ++m)
    for (int kappa : {-1, +1}) {
      auto phi = deformation::quasiboson_phi({m, kappa}, kappa == 1 ? m + 1 : 6);
      CHECK(phi(1) == doctest::Approx(1.0).epsilon(1e-15));
    }

  // m=1, kappa=-1 is the square law, exactly
  auto sq = deformation::quasiboson_phi({1, -1}, 8);
  for (int n = 0; n <= 8; ++n) CHECK(sq(n) == double(n) * n);

  // m=2, kappa=+1: phi(2) = (1 + 1/2) 2 - (1/2) 4 = 1
  auto f2 = deformation::quasiboson_phi({2, +1}, 3);
  CHECK(f2(2) == doctest::Approx(1.0).epsilon(1e-15));

  // kappa=+1 vanishes at n = m + 1 and is rejected past that point
  for (int m = 1; m <= 5; ++m) {
    auto phi = deformation::quasiboson_phi({m, +1}, m + 1);
    CHECK(std::abs(phi(m + 1)) <= 1e-12);
    CHECK_THROWS(deformation::quasiboson_phi({m, +1}, m + 3));
  }

  CHECK_THROWS(deformation::QuasibosonDeformation(0, 1));
  CHECK_THROWS(deformation::QuasibosonDeformation(2, 3));
  CHECK(deformation::QuasibosonDeformation(4, 1).f() == 0.5);
}

TEST_CASE("fermionic structure function") {
  auto phi = deformation::fermionic_phi(6);
  CHECK(phi(0) == 0.0);
  CHECK(phi(1) == 1.0);
  CHECK(phi(2) == 0.0);
  CHECK(phi(5) == 0.0);
}

TEST_CASE("finite differences") {
  auto lin = StructureFunction::linear(8);
  for (int n = 0; n <= 6; ++n) {
    CHECK(deformation::finite_difference(lin, 0, n) == double(n));
    CHECK(deformation::finite_difference(lin, 1, n) == 1.0);
    CHECK(deformation::finite_difference(lin, 2, n) == 0.0);
  }
  auto sq = deformation::quasiboson_phi({1, -1}, 8);
  CHECK(deformation::finite_difference(sq, 2, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS(deformation::finite_difference(lin, 3, 7));
  CHECK_THROWS(deformation::finite_difference(lin, -1, 0));
}

TEST_CASE("difference recursion and linearity on random tables") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> va{0.0, 1.0}, vb{0.0, 1.0};
    for (int n = 2; n <= 9; ++n) {
      va.push_back(u(rng));
      vb.push_back(u(rng));
    }
    StructureFunction a(va, "a"), b(vb, "b");
    for (int k = 0; k <= 4; ++k)
      for (int n = 0; n + k + 1 <= 9; ++n)
        CHECK(deformation::finite_difference(a, k + 1, n) ==
              doctest::Approx(deformation::finite_difference(a, k, n + 1) -
                              deformation::finite_difference(a, k, n))
                  .epsilon(1e-12));
    std::vector<double> vc(va.size());
    for (size_t i = 0; i < va.size(); ++i) vc[i] = 0.25 * va[i] + 0.75 * vb[i];
    StructureFunction c(vc, "c");
    for (int k = 0; k <= 3; ++k)
      for (int n = 0; n + k <= 9; ++n)
        CHECK(deformation::finite_difference(c, k, n) ==
              doctest::Approx(0.25 * deformation::finite_difference(a, k, n) +
                              0.75 * deformation::finite_difference(b, k, n))
                  .epsilon(1e-12));
  }
}

TEST_CASE("chi table csv import") {
  const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/cofermion_chi_test.csv";
  {
    std::ofstream f(path);
    f << "n,chi\n0,0\n1,1\n2,0.5\n3,3\n4,4\n5,5\n";
  }
  auto chi = deformation::chi_from_csv(path);
  CHECK(chi(2) == 0.5);
  CHECK(chi.table_max() == 5);

  {
    std::ofstream f(path);
    f << "n,value\n0,0\n1,1\n";
  }
  CHECK_THROWS(deformation::chi_from_csv(path));

  // lenient load keeps corrupted values so they can be reported by name
  {
    std::ofstream f(path);
    f << "n,chi\n0,0\n1,0.9\n2,2\n";
  }
  auto raw = deformation::chi_table_from_csv(path);
  CHECK(raw[1] == 0.9);
  auto issues = deformation::validate_chi_table(raw);
  REQUIRE(!issues.empty());
  CHECK(issues.front().find("chi(1)") != std::string::npos);
  std::remove(path.c_str());
}
