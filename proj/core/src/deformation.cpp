#include "cofermion/deformation.hpp"

#include <cmath>
#include <stdexcept>

#include "cofermion/csv.hpp"

namespace cofermion::deformation {

namespace {
constexpr double kAdmissibilityTol = 1e-12;
}

StructureFunction::StructureFunction(std::vector<double> values,
                                     std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  auto issues = validate_chi_table(values_);
  if (!issues.empty())
    throw std::invalid_argument("structure function '" + label_ +
                                "': " + issues.front());
  for (double& v : values_)
    if (v < 0.0) v = 0.0;  // clear admissible rounding dust
}

double StructureFunction::operator()(int n) const {
  if (n < 0 || n >= static_cast<int>(values_.size()))
    throw std::out_of_range("structure function table access at n=" +
                            std::to_string(n));
  return values_[static_cast<size_t>(n)];
}

StructureFunction StructureFunction::linear(int n_table) {
  std::vector<double> v(static_cast<size_t>(n_table) + 1);
  for (int n = 0; n <= n_table; ++n) v[static_cast<size_t>(n)] = n;
  return {std::move(v), "linear"};
}

StructureFunction StructureFunction::with_chi2(double chi2, int n_table) {
  if (n_table < 2) throw std::invalid_argument("with_chi2: table too short");
  std::vector<double> v(static_cast<size_t>(n_table) + 1);
  for (int n = 0; n <= n_table; ++n) v[static_cast<size_t>(n)] = n;
  v[2] = chi2;
  return {std::move(v), "chi2=" + std::to_string(chi2)};
}

QuasibosonDeformation::QuasibosonDeformation(int m_, int kappa_)
    : m(m_), kappa(kappa_) {
  if (m < 1) throw std::invalid_argument("quasiboson deformation: m >= 1 required");
  if (kappa != 1 && kappa != -1)
    throw std::invalid_argument("quasiboson deformation: kappa must be +1 or -1");
}

StructureFunction quasiboson_phi(const QuasibosonDeformation& d, int n_table) {
  const double half_f = d.f() / 2.0;
  const double c1 = 1.0 + d.kappa * half_f;
  const double c2 = d.kappa * half_f;
  std::vector<double> v(static_cast<size_t>(n_table) + 1);
  for (int n = 0; n <= n_table; ++n) {
    double phi = c1 * n - c2 * static_cast<double>(n) * n;
    if (phi < -kAdmissibilityTol)
      throw std::invalid_argument(
          "quasiboson phi turns negative at n=" + std::to_string(n) +
          "; shorten the table (kappa=+1 is cut off at n=m+1)");
    v[static_cast<size_t>(n)] = phi < 0.0 ? 0.0 : phi;
  }
  return {std::move(v),
          "quasiboson m=" + std::to_string(d.m) +
              (d.kappa > 0 ? ",kappa=+1" : ",kappa=-1")};
}

StructureFunction fermionic_phi(int n_table) {
  std::vector<double> v(static_cast<size_t>(n_table) + 1, 0.0);
  if (n_table >= 1) v[1] = 1.0;
  return {std::move(v), "fermionic"};
}

double finite_difference(const StructureFunction& chi, int k, int n) {
  if (k < 0) throw std::invalid_argument("finite_difference: k >= 0 required");
  if (n < 0 || n + k > chi.table_max())
    throw std::out_of_range("finite_difference: n + k exceeds the chi table");
  double acc = 0.0;
  double binom = 1.0;  // C(k, l), built incrementally
  for (int l = 0; l <= k; ++l) {
    const double sign = ((k - l) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom * chi(n + l);
    binom = binom * (k - l) / (l + 1);
  }
  return acc;
}

std::vector<std::string> validate_chi_table(const std::vector<double>& values) {
  std::vector<std::string> issues;
  if (values.size() < 2) {
    issues.push_back("table must cover at least n = 0, 1");
    return issues;
  }
  if (std::abs(values[0]) > kAdmissibilityTol)
    issues.push_back("chi(0) must be 0");
  if (std::abs(values[1] - 1.0) > kAdmissibilityTol)
    issues.push_back("chi(1) must be 1 (one-particle normalization)");
  for (size_t n = 0; n < values.size(); ++n)
    if (values[n] < -kAdmissibilityTol) {
      issues.push_back("chi(" + std::to_string(n) +
                       ") < 0 is not Fock-representable");
      break;
    }
  return issues;
}

std::vector<double> chi_table_from_csv(const std::string& path) {
  csv::Table t = csv::read_csv_file(path);
  if (t.header != std::vector<std::string>{"n", "chi"})
    throw std::runtime_error("chi table: header 'n,chi' required");
  std::vector<double> values(t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i) {
    if (csv::to_long(t.rows[i][0]) != static_cast<long>(i))
      throw std::runtime_error("chi table: rows must list n = 0,1,2,... in order");
    values[i] = csv::to_double(t.rows[i][1]);
  }
  return values;
}

StructureFunction chi_from_csv(const std::string& path) {
  return {chi_table_from_csv(path), "table:" + path};
}

}  // namespace cofermion::deformation
