// Exercises the installed command-line surface through subprocesses. The
// binary path arrives in COFERMION_CLI (set by ctest).
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cofermion/csv.hpp"
#include "cofermion/entanglement.hpp"
#include "cofermion/solutions.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace cofermion;

namespace {

std::string cli_path() {
  const char* p = std::getenv("COFERMION_CLI");
  REQUIRE_MESSAGE(p != nullptr, "COFERMION_CLI must point at the binary");
  return p;
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("cofermion_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct CmdResult {
  int code;
  std::string out;
  std::string err;
};

CmdResult run(const std::string& args) {
  fs::path so = scratch_dir() / "stdout.txt";
  fs::path se = scratch_dir() / "stderr.txt";
  std::string cmd = cli_path() + " " + args + " > " + so.string() + " 2> " + se.string();
  int rc = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(so), slurp(se)};
}

std::string slurp_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run("verify --family two-mode --theta 0.3 --chi linear").code == 0);
  CHECK(run("verify --family random --seed 7 --chi linear").code == 1);
  CHECK(run("verify --family eq33 --mu0 1 --chi2 1.0").code == 0);
  CHECK(run("verify --family eq31").code == 0);
  CHECK(run("verify --family eq32 --chi2 0.7 --theta 0.4").code == 0);
  CHECK(run("verify --family general --seed 11 --d 3").code == 0);
  CHECK(run("verify --family su3 --theta1 0.5 --theta2 0.8 --theta3 0.1 --phi2 2.0").code == 0);
  CHECK(run("verify --family coboson").code == 0);

  // parse and usage errors
  CHECK(run("verify").code == 2);
  CHECK(run("verify --family nosuch").code == 2);
  CHECK(run("bogus-subcommand").code == 2);
  CHECK(run("verify --family eq31 --chi2 0.5").code == 2);  // tag mismatch
}

TEST_CASE("verify report file") {
  fs::path out = scratch_dir() / "report.csv";
  CHECK(run("verify --family two-mode --theta 0.2 --out " + out.string()).code == 0);
  auto table = csv::read_csv_file(out.string());
  REQUIRE(table.header == std::vector<std::string>({"condition", "residual", "passed"}));
  REQUIRE(table.rows.size() == 6);
  for (const auto& row : table.rows) CHECK(row[2] == "true");
}

TEST_CASE("figure1 values and determinism") {
  fs::path out = scratch_dir() / "f1.csv";
  CHECK(run("figure1 --steps 201 --out " + out.string()).code == 0);
  std::string first = slurp_file(out);
  auto table = csv::read_csv_file(out.string());
  REQUIRE(table.header == std::vector<std::string>({"theta", "S_ent", "purity"}));
  REQUIRE(table.rows.size() == 201);

  auto row_at = [&](size_t i) {
    return std::array<double, 3>{csv::to_double(table.rows[i][0]),
                                 csv::to_double(table.rows[i][1]),
                                 csv::to_double(table.rows[i][2])};
  };
  auto mid = row_at(100);  // theta = 0
  CHECK(std::abs(mid[0]) < 1e-15);
  CHECK(std::abs(mid[1] - std::log(2.0)) < 1e-11);
  CHECK(std::abs(mid[2] - 0.5) < 1e-11);
  auto lo = row_at(0);  // theta = -pi/4
  CHECK(std::abs(lo[1]) < 1e-11);
  CHECK(std::abs(lo[2] - 1.0) < 1e-11);
  auto hi = row_at(200);  // theta = +pi/4
  CHECK(std::abs(hi[0] - M_PI / 4) < 1e-10);
  CHECK(std::abs(hi[1]) < 1e-11);
  CHECK(std::abs(hi[2] - 1.0) < 1e-11);
  auto q = row_at(150);  // theta = pi/8
  CHECK(std::abs(q[1] - 0.4165) < 5e-4);
  CHECK(std::abs(q[2] - 0.75) < 1e-11);

  CHECK(run("figure1 --steps 201 --out " + out.string()).code == 0);
  CHECK(slurp_file(out) == first);

  fs::path out2 = scratch_dir() / "f1x.csv";
  CHECK(run("figure1 --steps 51 --crosscheck --out " + out2.string()).code == 0);
  auto t2 = csv::read_csv_file(out2.string());
  REQUIRE(t2.header.size() == 5);
  for (const auto& row : t2.rows) {
    CHECK(std::abs(csv::to_double(row[1]) - csv::to_double(row[3])) < 1e-11);
    CHECK(std::abs(csv::to_double(row[2]) - csv::to_double(row[4])) < 1e-11);
  }
}

TEST_CASE("figure2 upper panel values") {
  fs::path out = scratch_dir() / "f2u.csv";
  CHECK(run("figure2 --panel upper --steps 20 --out " + out.string()).code == 0);
  std::string first = slurp_file(out);
  auto table = csv::read_csv_file(out.string());
  REQUIRE(table.header == std::vector<std::string>({"theta1", "theta3", "S1", "S2"}));
  REQUIRE(!table.rows.empty());

  const double ln3 = std::log(3.0);
  for (const auto& row : table.rows) {
    double th1 = csv::to_double(row[0]), th3 = csv::to_double(row[1]);
    double s1 = csv::to_double(row[2]), s2 = csv::to_double(row[3]);
    CHECK(s1 >= -1e-12);
    CHECK(s1 <= ln3 + 1e-12);
    CHECK(s2 >= -1e-12);
    CHECK(s2 <= ln3 + 1e-12);

    // reconstruct the preimage and compare against the parametrized rows
    double cph2 = -std::sqrt(3.0) * std::cos(th1) * std::cos(th1) /
                  (2.0 * std::sin(th1));
    REQUIRE(std::abs(cph2) <= 1.0 + 1e-12);
    solutions::SU3LambdaParams p{th1, M_PI / 4, th3, 0.0,
                                 std::acos(std::clamp(cph2, -1.0, 1.0)), 0.0};
    for (int alpha : {1, 2}) {
      Vector l = solutions::su3_lambda(alpha, p);
      double s_ref = entanglement::entropy_from_squares(
          {std::norm(l(0)), std::norm(l(1)), std::norm(l(2))});
      CHECK(std::abs((alpha == 1 ? s1 : s2) - s_ref) < 1e-10);
    }
  }

  CHECK(run("figure2 --panel upper --steps 20 --out " + out.string()).code == 0);
  CHECK(slurp_file(out) == first);
}

TEST_CASE("figure2 lower panel pins the first entropy to ln 3") {
  fs::path out = scratch_dir() / "f2l.csv";
  CHECK(run("figure2 --panel lower --steps 16 --out " + out.string()).code == 0);
  auto table = csv::read_csv_file(out.string());
  REQUIRE(table.header == std::vector<std::string>({"theta3", "phi2", "S1", "S2"}));
  REQUIRE(!table.rows.empty());
  const double ln3 = std::log(3.0);
  for (const auto& row : table.rows) {
    CHECK(std::abs(csv::to_double(row[2]) - ln3) <= 1e-6);
    CHECK(csv::to_double(row[3]) <= ln3 + 1e-12);
  }

  CHECK(run("figure2 --steps 8 --out " + out.string()).code == 2);
}

TEST_CASE("config file input and family export") {
  fs::path conf = scratch_dir() / "params.conf";
  {
    std::ofstream f(conf);
    f << "[verify]\nfamily=eq32\nchi2=0.7\ntheta=0.4\n";
  }
  fs::path fam_out = scratch_dir() / "family.csv";
  CHECK(run("--config " + conf.string() + " verify --export-family " +
            fam_out.string()).code == 0);

  auto fam = composite::family_from_csv_file(fam_out.string());
  REQUIRE(fam.size() == 2);
  CHECK(max_abs(fam.gram() - Matrix::Identity(2, 2)) < 1e-13);
  // the exported family is the generic diagonal case: row mu of each matrix
  // carries cos/sin of (alpha-tilde + theta)
  CHECK(std::abs(std::abs(fam[0].phi()(0, 0)) - std::cos(-M_PI / 4 + 0.4)) < 1e-12);
}

TEST_CASE("oracle runs and the corrupted table is reported by name") {
  fs::path out = scratch_dir() / "oracle.csv";
  CHECK(run("oracle --trials 5 --seed 1 --out " + out.string()).code == 0);
  std::string first = slurp_file(out);
  CHECK(run("oracle --trials 5 --seed 1 --out " + out.string()).code == 0);
  CHECK(slurp_file(out) == first);

  fs::path chi = scratch_dir() / "chi_bad.csv";
  {
    std::ofstream f(chi);
    f << "n,chi\n0,0\n1,0.9\n2,2\n3,3\n4,4\n5,5\n";
  }
  CHECK(run("oracle --trials 1").code == 0);

  auto res = run("oracle --trials 5 --chi table:" + chi.string());
  CHECK(res.code == 1);
  CHECK(res.out.find("chi_normalization") != std::string::npos);
  CHECK(res.err.find("FAILED") != std::string::npos);
  CHECK(res.err.find("chi_normalization") != std::string::npos);

  // a healthy custom table passes
  fs::path good = scratch_dir() / "chi_good.csv";
  {
    std::ofstream f(good);
    f << "n,chi\n0,0\n1,1\n2,0.5\n3,3\n4,4\n5,5\n";
  }
  CHECK(run("oracle --trials 5 --chi table:" + good.string()).code == 0);
  CHECK(run("verify --family eq32 --theta 0.3 --chi table:" + good.string()).code == 0);
}
