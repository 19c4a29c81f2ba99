#ifndef COFERMION_ORACLE_HPP
#define COFERMION_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

namespace cofermion::oracle {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct OracleConfig {
  unsigned long seed = 0;
  int trials = 100;
  /// Raw structure-function table to validate and use; linear chi when absent.
  std::optional<std::vector<double>> chi_table;
};

/// Cross-module property battery: constituent algebra (exact and safe-
/// subspace checks), difference-calculus identities, the vacuum reduction of
/// the double commutator, closed-form spectra against the SU(3) rows, the
/// determinant system, the diagonal-extraction identity, family membership,
/// the negative control, and the entanglement closed loops. Deterministic
/// for a fixed seed.
std::vector<CheckResult> run_checks(const OracleConfig& cfg);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cofermion::oracle

#endif
