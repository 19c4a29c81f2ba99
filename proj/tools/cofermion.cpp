// Command-line front end: realization verification, figure data sweeps, and
// the cross-module oracle battery. All output CSVs are deterministic for a
// fixed --seed.
#include <clocale>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cofermion/composite.hpp"
#include "cofermion/csv.hpp"
#include "cofermion/deformation.hpp"
#include "cofermion/entanglement.hpp"
#include "cofermion/fock.hpp"
#include "cofermion/oracle.hpp"
#include "cofermion/solutions.hpp"

namespace {

using namespace cofermion;

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("COFERMION_LOG");
  if (!env) return LogLevel::info;
  std::string v(env);
  if (v == "quiet") return LogLevel::quiet;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::info;
}

void logi(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::cerr << "[cofermion] " << msg << "\n";
}
void logd(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::cerr << "[cofermion:debug] " << msg << "\n";
}

struct ChiSpec {
  std::string spec = "linear";
  std::optional<double> chi2_flag;  // --chi2 shorthand
};

deformation::StructureFunction parse_chi(const ChiSpec& c, int n_table) {
  using deformation::StructureFunction;
  if (c.chi2_flag) return StructureFunction::with_chi2(*c.chi2_flag, n_table);
  const std::string& s = c.spec;
  if (s == "linear") return StructureFunction::linear(n_table);
  if (s.rfind("quasiboson:", 0) == 0) {
    std::string body = s.substr(11);
    auto comma = body.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--chi", "expected quasiboson:m,kappa");
    int m = std::stoi(body.substr(0, comma));
    int kappa = std::stoi(body.substr(comma + 1));
    return deformation::quasiboson_phi({m, kappa}, n_table);
  }
  if (s.rfind("table:", 0) == 0) {
    auto chi = deformation::chi_from_csv(s.substr(6));
    if (chi.table_max() < n_table)
      throw std::runtime_error("chi table too short: need n up to " +
                               std::to_string(n_table));
    return chi;
  }
  if (s.rfind("chi2:", 0) == 0)
    return StructureFunction::with_chi2(std::stod(s.substr(5)), n_table);
  throw CLI::ValidationError("--chi", "unknown structure function '" + s + "'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output path " + path);
  return f;
}

// ---------------------------------------------------------------- verify --

struct VerifyArgs {
  std::string family;
  ChiSpec chi;
  double theta = 0.0, psi = 0.0, phi = 0.0;
  double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
  int mu0 = 1;
  double tol = 1e-10;
  unsigned long seed = 0;
  std::string out;
  std::string export_family;
  std::string states = "auto";
  int m = 1;       // coboson block size
  int d = 2;       // constituent modes for general/random
  int n_max = 3;
  double u_re = 0.6, u_im = 0.0, v_re = 0.8, v_im = 0.0;
};

int run_verify(const VerifyArgs& a) {
  Rng rng(a.seed);
  const bool deformed_case =
      a.family == "eq31" || a.family == "eq32" || a.family == "eq33";

  double default_chi2 = (a.family == "eq31") ? 0.0 : 1.0;
  ChiSpec chi_spec = a.chi;
  if (deformed_case && !chi_spec.chi2_flag && chi_spec.spec == "linear")
    chi_spec.chi2_flag = default_chi2;

  std::optional<composite::WaveFamily> fam;
  int d_a = 2, d_b = 2;
  if (a.family == "two-mode") {
    solutions::TwoModeParams p;
    p.theta = a.theta;
    p.psi = a.psi;
    p.phi = a.phi;
    fam = solutions::two_mode_family(p);
  } else if (a.family == "general") {
    d_a = d_b = a.d;
    Matrix rows_src = random_unitary(a.d, rng);
    std::vector<Vector> rows;
    for (int k = 0; k < std::min(2, a.d); ++k)
      rows.push_back(rows_src.row(k).transpose());
    fam = solutions::cf_general_family(random_unitary(a.d, rng),
                                       random_unitary(a.d, rng), rows);
  } else if (a.family == "su3") {
    d_a = d_b = 3;
    solutions::SU3LambdaParams p{a.theta1, a.theta2, a.theta3,
                                 a.phi1,   a.phi2,   a.phi3};
    std::vector<Vector> rows{solutions::su3_lambda(1, p),
                             solutions::su3_lambda(2, p)};
    fam = solutions::cf_general_family(Matrix::Identity(3, 3),
                                       Matrix::Identity(3, 3), rows);
  } else if (a.family == "coboson") {
    int m = a.m;
    if (chi_spec.spec.rfind("quasiboson:", 0) == 0)
      m = std::stoi(chi_spec.spec.substr(11, chi_spec.spec.find(',') - 11));
    if (m != 1)
      throw std::runtime_error(
          "coboson verify supports m = 1 (larger blocks exceed the dense "
          "operator budget; entanglement closed forms cover any m)");
    d_a = d_b = 2 * m;
    std::vector<composite::WaveMatrix> mats;
    Matrix u1 = random_unitary(d_a, rng), u2 = random_unitary(d_b, rng);
    for (int alpha : {1, 2})
      mats.push_back(solutions::coboson_phi(u1, u2, m, (alpha - 1) * m, alpha,
                                            random_unitary(m, rng)));
    fam = composite::WaveFamily(std::move(mats));
  } else if (a.family == "random") {
    d_a = d_b = a.d;
    fam = composite::random_family(d_a, d_b, 2, rng);
  } else if (deformed_case) {
    solutions::DeformedTwoModeParams p;
    p.theta = a.theta;
    p.u = Complex(a.u_re, a.u_im);
    p.v = Complex(a.v_re, a.v_im);
    p.mu0 = a.mu0;
    p.chi2 = chi_spec.chi2_flag ? *chi_spec.chi2_flag
                                : parse_chi(chi_spec, 2).chi2();
    solutions::DeformedCaseTag tag;
    if (a.family == "eq31") {
      tag = solutions::DeformedCaseTag::chi2_zero;
    } else if (a.family == "eq33") {
      tag = solutions::DeformedCaseTag::chi2_one_rank1;
    } else if (std::abs(p.chi2 - 1.0) <= 1e-12) {
      tag = solutions::DeformedCaseTag::chi2_one_diag;
    } else if (std::abs(p.chi2 - 2.0) <= 1e-12) {
      tag = solutions::DeformedCaseTag::nondeformed;
    } else {
      tag = solutions::DeformedCaseTag::generic;
    }
    fam = solutions::deformed_two_mode_family(tag, p);
  } else {
    throw CLI::ValidationError("--family", "unknown family '" + a.family + "'");
  }

  fock::ModeSpace space(d_a, d_b, a.n_max);
  auto chi = parse_chi(chi_spec, a.n_max + 2);

  composite::StateSet sel;
  if (a.states == "auto") {
    sel.two_cf = (d_a == 2 && d_b == 2 && fam->size() == 2);
  } else {
    sel = composite::StateSet{false, false, false};
    std::stringstream ss(a.states);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok == "vacuum") sel.vacuum = true;
      else if (tok == "one") sel.one_cf = true;
      else if (tok == "two") sel.two_cf = true;
      else throw CLI::ValidationError("--states", "unknown state tag '" + tok + "'");
    }
  }

  if (!a.export_family.empty()) {
    composite::family_to_csv_file(*fam, a.export_family);
    logi("verify: exported family to " + a.export_family);
  }

  logi("verify: family=" + a.family + " chi=" + chi.label() +
       " dim=" + std::to_string(space.dim()));
  auto report = composite::verify_realization(*fam, chi, space, sel, a.tol);

  std::ostringstream csv;
  composite::report_to_csv(report, csv);
  if (!a.out.empty()) {
    auto f = open_out(a.out);
    f << csv.str();
  } else {
    std::cout << csv.str();
  }
  for (const auto& [name, ok] : report.passed)
    logd(name + ": residual=" + csv::format_sci(report.residuals.at(name)) +
         (ok ? " ok" : " FAIL"));
  return report.all_passed() ? 0 : 1;
}

// --------------------------------------------------------------- figure1 --

int run_figure1(int steps, const std::string& out, bool crosscheck) {
  if (steps < 2) throw CLI::ValidationError("--steps", "steps >= 2 required");
  std::ostringstream os;
  std::vector<std::string> header{"theta", "S_ent", "purity"};
  if (crosscheck) {
    header.push_back("S_svd");
    header.push_back("P_svd");
  }
  csv::write_row(os, header);
  for (int i = 0; i < steps; ++i) {
    double theta = -M_PI / 4 + (M_PI / 2) * i / (steps - 1);
    std::vector<std::string> row{
        csv::format_sci(theta),
        csv::format_sci(entanglement::two_mode_entropy_closed(theta)),
        csv::format_sci(entanglement::two_mode_purity_closed(theta))};
    if (crosscheck) {
      solutions::TwoModeParams p;
      p.theta = theta;
      auto fam = solutions::two_mode_family(p);
      auto spec = entanglement::schmidt(fam[0]);
      row.push_back(csv::format_sci(entanglement::entropy(spec)));
      row.push_back(csv::format_sci(entanglement::purity(spec)));
    }
    csv::write_row(os, row);
  }
  auto f = open_out(out);
  f << os.str();
  logi("figure1: wrote " + std::to_string(steps) + " rows to " + out);
  return 0;
}

// --------------------------------------------------------------- figure2 --

// Fixed-shift slice of the upper panel: both shift angles pi/3. A parameter
// point (theta1, theta3) is emitted only when a preimage (theta2, phi2)
// exists, i.e. |cos phi2| = sqrt(3) cos^2(theta1) / (2 sin theta1) <= 1.
int run_figure2_upper(int steps, std::ostream& os) {
  const solutions::ShiftAngles shifts{M_PI / 3, M_PI / 3};
  csv::write_row(os, {"theta1", "theta3", "S1", "S2"});
  int rows = 0;
  for (int i = 0; i < steps; ++i) {
    double th1 = (M_PI / 2) * i / (steps - 1);
    double s1 = std::sin(th1);
    if (s1 <= 0.0) continue;
    double cph2 = -std::sqrt(3.0) * std::cos(th1) * std::cos(th1) / (2.0 * s1);
    if (std::abs(cph2) > 1.0 + 1e-12) continue;
    for (int j = 0; j < steps; ++j) {
      double th3 = -M_PI / 4 + (M_PI / 2) * j / (steps - 1);
      double s[2];
      for (int alpha : {1, 2}) {
        auto sq = solutions::schmidt_sq_closed_form(alpha, th1, th3, shifts);
        s[alpha - 1] = entanglement::entropy_from_squares(
            {std::max(sq[0], 0.0), std::max(sq[1], 0.0), std::max(sq[2], 0.0)});
      }
      csv::write_row(os, {csv::format_sci(th1), csv::format_sci(th3),
                          csv::format_sci(s[0]), csv::format_sci(s[1])});
      ++rows;
    }
  }
  return rows;
}

// Lower panel: S1 is pinned to its maximum ln 3. theta1 solves the middle-
// coefficient constraint in closed form; the remaining constraint is solved
// by bisection in theta2 (the two endpoint values always bracket a root).
int run_figure2_lower(int steps, std::ostream& os) {
  csv::write_row(os, {"theta3", "phi2", "S1", "S2"});
  const double ln3 = std::log(3.0);
  int rows = 0;
  for (int i = 0; i < steps; ++i) {
    double th3 = -M_PI / 4 + (M_PI / 2) * i / (steps - 1);
    double t1 = th3 - M_PI / 4;  // alpha = 1 argument
    double c2t1 = std::cos(t1) * std::cos(t1);
    if (3.0 * c2t1 < 1.0) continue;  // middle coefficient cannot reach 1/3
    double th1 = std::acos(1.0 / std::sqrt(3.0 * c2t1));
    for (int j = 0; j < steps; ++j) {
      double ph2 = 2.0 * M_PI * j / (steps - 1);
      auto lam1_sq_first = [&](double th2) {
        solutions::SU3LambdaParams p{th1, th2, th3, 0.0, ph2, 0.0};
        return std::norm(solutions::su3_lambda(1, p)(0)) - 1.0 / 3.0;
      };
      double lo = 0.0, hi = M_PI / 2;
      double flo = lam1_sq_first(lo), fhi = lam1_sq_first(hi);
      double th2;
      if (flo == 0.0 || flo * fhi > 0.0) {
        if (std::abs(flo) > 1e-9 && std::abs(fhi) > 1e-9) continue;
        th2 = std::abs(flo) <= std::abs(fhi) ? lo : hi;
      } else {
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = lam1_sq_first(mid);
          if (fm == 0.0) { lo = hi = mid; break; }
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        th2 = 0.5 * (lo + hi);
      }
      solutions::SU3LambdaParams p{th1, th2, th3, 0.0, ph2, 0.0};
      double s[2];
      for (int alpha : {1, 2}) {
        Vector l = solutions::su3_lambda(alpha, p);
        s[alpha - 1] = entanglement::entropy_from_squares(
            {std::norm(l(0)), std::norm(l(1)), std::norm(l(2))});
      }
      if (std::abs(s[0] - ln3) > 1e-6) continue;  // constraint tolerance gate
      csv::write_row(os, {csv::format_sci(th3), csv::format_sci(ph2),
                          csv::format_sci(s[0]), csv::format_sci(s[1])});
      ++rows;
    }
  }
  return rows;
}

int run_figure2(int steps, const std::string& panel, const std::string& out) {
  if (steps < 16)
    throw CLI::ValidationError("--steps", "grid resolution >= 16 required");
  std::ostringstream os;
  int rows = 0;
  if (panel == "upper") {
    rows = run_figure2_upper(steps, os);
  } else if (panel == "lower") {
    rows = run_figure2_lower(steps, os);
  } else {
    throw CLI::ValidationError("--panel", "panel must be upper or lower");
  }
  auto f = open_out(out);
  f << os.str();
  logi("figure2 " + panel + ": wrote " + std::to_string(rows) + " rows to " + out);
  return 0;
}

// ---------------------------------------------------------------- oracle --

int run_oracle(unsigned long seed, int trials, const std::string& chi_spec,
               const std::string& out) {
  oracle::OracleConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  if (chi_spec.rfind("table:", 0) == 0) {
    cfg.chi_table = deformation::chi_table_from_csv(chi_spec.substr(6));
  } else if (chi_spec != "linear") {
    cfg.chi_table = parse_chi({chi_spec, std::nullopt}, 6).values();
  }
  auto results = oracle::run_checks(cfg);

  std::ostringstream os;
  csv::write_row(os, {"check", "residual", "threshold", "passed"});
  for (const auto& r : results)
    csv::write_row(os, {r.name, csv::format_sci(r.residual),
                        csv::format_sci(r.threshold), r.passed ? "true" : "false"});
  if (!out.empty()) {
    auto f = open_out(out);
    f << os.str();
  } else {
    std::cout << os.str();
  }

  std::string failing;
  for (const auto& r : results)
    if (!r.passed) failing += (failing.empty() ? "" : " ") + r.name;
  if (!failing.empty()) {
    std::cerr << "FAILED: " << failing << "\n";
    return 1;
  }
  logi("oracle: " + std::to_string(results.size()) + " checks passed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{"composite-fermion realization laboratory"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value parameter file (keys under a [subcommand] section)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check realization conditions for a family");
  verify->add_option("--family", va.family,
                     "coboson|general|two-mode|su3|eq31|eq32|eq33|random")
      ->required();
  verify->add_option("--chi", va.chi.spec,
                     "linear|quasiboson:m,kappa|table:FILE|chi2:VALUE");
  double chi2_flag = 0.0;
  auto* chi2_opt = verify->add_option("--chi2", chi2_flag, "shorthand for --chi chi2:VALUE");
  verify->add_option("--theta", va.theta, "two-mode angle");
  verify->add_option("--psi", va.psi, "two-mode phase");
  verify->add_option("--phi", va.phi, "two-mode phase");
  verify->add_option("--theta1", va.theta1, "three-mode angle");
  verify->add_option("--theta2", va.theta2, "three-mode angle");
  verify->add_option("--theta3", va.theta3, "three-mode angle");
  verify->add_option("--phi1", va.phi1, "three-mode phase");
  verify->add_option("--phi2", va.phi2, "three-mode phase");
  verify->add_option("--phi3", va.phi3, "three-mode phase");
  verify->add_option("--mu0", va.mu0, "boson mode for the rank-1 family (1 or 2)");
  verify->add_option("--tol", va.tol, "weak-equality tolerance");
  verify->add_option("--seed", va.seed, "random seed");
  verify->add_option("--out", va.out, "report CSV path (stdout when absent)");
  verify->add_option("--states", va.states, "auto or comma list of vacuum,one,two");
  verify->add_option("--m", va.m, "coboson block size");
  verify->add_option("--d", va.d, "constituent modes for general/random");
  verify->add_option("--nmax", va.n_max, "boson cutoff");
  verify->add_option("--u-re", va.u_re, "Re u for the deformed families");
  verify->add_option("--u-im", va.u_im, "Im u");
  verify->add_option("--v-re", va.v_re, "Re v");
  verify->add_option("--v-im", va.v_im, "Im v");
  verify->add_option("--export-family", va.export_family,
                     "write the constructed family CSV here");

  int f1_steps = 201;
  std::string f1_out = "figure1.csv";
  bool f1_cross = false;
  auto* fig1 = app.add_subcommand("figure1", "two-mode entropy and purity sweep");
  fig1->add_option("--steps", f1_steps, "number of theta samples");
  fig1->add_option("--out", f1_out, "output CSV path");
  fig1->add_flag("--crosscheck", f1_cross, "append singular-value-path columns");

  int f2_steps = 64;
  std::string f2_out = "figure2.csv";
  std::string f2_panel = "upper";
  auto* fig2 = app.add_subcommand("figure2", "three-mode equi-entropy data");
  fig2->add_option("--steps", f2_steps, "grid resolution per axis (>= 16)");
  fig2->add_option("--panel", f2_panel, "upper or lower");
  fig2->add_option("--out", f2_out, "output CSV path");

  unsigned long o_seed = 0;
  int o_trials = 100;
  std::string o_chi = "linear";
  std::string o_out;
  auto* orac = app.add_subcommand("oracle", "run the cross-module property battery");
  orac->add_option("--seed", o_seed, "random seed");
  orac->add_option("--trials", o_trials, "trial count scaling");
  orac->add_option("--chi", o_chi, "structure function to validate and use");
  orac->add_option("--out", o_out, "summary CSV path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      if (*chi2_opt) va.chi.chi2_flag = chi2_flag;
      return run_verify(va);
    }
    if (*fig1) return run_figure1(f1_steps, f1_out, f1_cross);
    if (*fig2) return run_figure2(f2_steps, f2_panel, f2_out);
    if (*orac) return run_oracle(o_seed, o_trials, o_chi, o_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
