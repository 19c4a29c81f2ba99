#ifndef COFERMION_DEFORMATION_HPP
#define COFERMION_DEFORMATION_HPP

#include <string>
#include <vector>

namespace cofermion::deformation {

/// Tabulated deformation structure function chi(n), n = 0..table_max().
/// Admissible tables have chi(0) = 0, chi(1) = 1 (one-particle normalization)
/// and chi(n) >= 0 everywhere; the constructor rejects anything else.
class StructureFunction {
 public:
  StructureFunction(std::vector<double> values, std::string label);

  double operator()(int n) const;
  int table_max() const { return static_cast<int>(values_.size()) - 1; }
  const std::vector<double>& values() const { return values_; }
  const std::string& label() const { return label_; }

  double chi2() const { return (*this)(2); }
  double delta_chi2() const { return chi2() - 2.0; }

  /// chi(n) = n, the non-deformed oscillator.
  static StructureFunction linear(int n_table);
  /// chi(n) = n except chi(2) = chi2; the minimal table with a prescribed
  /// second level.
  static StructureFunction with_chi2(double chi2, int n_table);

 private:
  std::vector<double> values_;
  std::string label_;
};

/// Discrete deformation family phi(n) = (1 + kappa f/2) n - kappa (f/2) n^2
/// with f = 2/m.
struct QuasibosonDeformation {
  int m = 1;
  int kappa = -1;

  QuasibosonDeformation(int m, int kappa);
  double f() const { return 2.0 / m; }
};

/// Tabulates the quasiboson structure function up to n_table. For kappa = +1
/// the polynomial turns negative beyond n = m + 1; requesting a table that
/// reaches into that region is an error.
StructureFunction quasiboson_phi(const QuasibosonDeformation& d, int n_table);

/// phi(1) = 1, phi(n) = 0 otherwise.
StructureFunction fermionic_phi(int n_table);

/// k-th forward difference: sum_{l=0..k} (-1)^{k-l} C(k,l) chi(n+l).
/// Requires n + k within the table.
double finite_difference(const StructureFunction& chi, int k, int n);

/// Strict CSV import (header "n,chi" required; rows n = 0,1,2,... complete).
StructureFunction chi_from_csv(const std::string& path);

/// Lenient raw read of the same format: returns the table without the
/// admissibility checks (the oracle validates separately so that a corrupted
/// table is reported as a named check failure rather than a load error).
std::vector<double> chi_table_from_csv(const std::string& path);

/// Admissibility issues of a raw table, empty when the table is valid.
std::vector<std::string> validate_chi_table(const std::vector<double>& values);

}  // namespace cofermion::deformation

#endif
