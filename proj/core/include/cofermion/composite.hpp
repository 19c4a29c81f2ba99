#ifndef COFERMION_COMPOSITE_HPP
#define COFERMION_COMPOSITE_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cofermion/fock.hpp"

namespace cofermion::composite {

/// Internal wavefunction of one composite mode: a complex d_a x d_b matrix
/// Phi with Tr(Phi Phi^dag) = 1.
class WaveMatrix {
 public:
  WaveMatrix(Matrix phi, int mode_label);

  const Matrix& phi() const { return phi_; }
  int mode_label() const { return mode_label_; }
  int d_a() const { return static_cast<int>(phi_.rows()); }
  int d_b() const { return static_cast<int>(phi_.cols()); }

 private:
  Matrix phi_;
  int mode_label_;
};

/// Ordered set of wave matrices, pairwise orthonormal under the trace inner
/// product Tr(Phi_beta Phi_alpha^dag) = delta_{alpha beta}. Closed-form
/// constructions and full-precision CSV round trips are near-exact, so the
/// Gram deviation gate is tight.
class WaveFamily {
 public:
  explicit WaveFamily(std::vector<WaveMatrix> matrices, double gram_tol = 1e-12);

  int size() const { return static_cast<int>(mats_.size()); }
  const WaveMatrix& operator[](int i) const { return mats_[i]; }
  int d_a() const { return mats_.front().d_a(); }
  int d_b() const { return mats_.front().d_b(); }

  Matrix gram() const;  // G_{alpha beta} = Tr(Phi_beta Phi_alpha^dag)

 private:
  std::vector<WaveMatrix> mats_;
};

/// Random orthonormal family (Gaussian matrices, Gram-Schmidt in the trace
/// inner product). Generic draws violate the realization conditions; used as
/// the negative control.
WaveFamily random_family(int d_a, int d_b, int count, Rng& rng);

/// Constituent operator sets over one space: deformed (or ordinary) bosons
/// for the a-sector, fermions for the b-sector.
struct ConstituentOps {
  fock::ModeSpace space;
  deformation::StructureFunction chi;
  std::vector<fock::LadderPair> a;
  std::vector<fock::LadderPair> b;
};

ConstituentOps make_constituents(const fock::ModeSpace& space,
                                 const deformation::StructureFunction& chi);

struct CfOperators {
  fock::FockOperator A;
  fock::FockOperator A_dag;
  fock::FockOperator N;  // excitation counter on the composite-generated span
};

/// Composite creators A_alpha^dag = sum_{mu nu} Phi_alpha^{mu nu} a_mu^dag
/// b_nu^dag, their adjoints, and the per-mode number operators. N_alpha is
/// defined by its eigenvalues on the span of products of creators applied to
/// the vacuum and acts as zero on the orthogonal complement.
std::vector<CfOperators> build_cf_ops(const WaveFamily& family,
                                      const ConstituentOps& ops);

/// One basis state of the composite-generated span: a normalized product of
/// distinct creators on the vacuum, tagged with the modes it carries.
struct CfState {
  Vector vec;
  std::vector<int> modes;  // ascending mode labels (0-based family indices)
};

/// State selection for the weak-equality checks.
struct StateSet {
  bool vacuum = true;
  bool one_cf = true;
  bool two_cf = false;
};

std::vector<CfState> build_cf_states(const WaveFamily& family,
                                     const ConstituentOps& ops,
                                     const StateSet& sel);

/// {A_alpha^dag, A_beta^dag} evaluated by expanding in composite-creator
/// pairs and summing each symmetric pair jointly; the paired contributions
/// cancel exactly in floating point, so a valid construction yields the
/// exact zero matrix, not a small residual.
Matrix creator_anticommutator_matrix(const WaveFamily& family, int alpha,
                                     int beta, const ConstituentOps& ops);

/// Residual of the analytic anticommutator expansion
///   {A_alpha, A_beta^dag} = sum_mu (Phi_beta Phi_alpha^dag)^{mu mu} D1chi(n_mu)
///     + sum_{mu mu'} (Phi_beta Phi_alpha^dag)^{mu' mu} a_mu'^dag a_mu
///     - sum_{mu nu nu'} conj(Phi_alpha^{mu nu}) Phi_beta^{mu nu'} D1chi(n_mu)
///       b_nu'^dag b_nu
/// against the brute-force anticommutator, maximized over mode pairs and
/// safe basis columns. With chi(n) = n the middle line reduces to
/// delta_{alpha beta} + a^dag a - b^dag b terms and the residual vanishes.
double anticommutator_expansion_residual(
    const WaveFamily& family, const deformation::StructureFunction& chi,
    const fock::ModeSpace& space);

/// The wavefunction condition matrix for one index triple:
///   M = Phi_b Phi_a^dag Phi_c - Phi_c Phi_a^dag Phi_b
///     + (chi2 - 2) [diag(Phi_b Phi_a^dag) Phi_c - diag(Phi_c Phi_a^dag) Phi_b].
Matrix condition12_matrix(const WaveFamily& family, int a, int b, int c,
                          double chi2);

/// Max Frobenius norm of the condition matrix over all index triples.
/// chi2 = 2 recovers the non-deformed constituent condition
/// Phi_b Phi_a^dag Phi_c = Phi_c Phi_a^dag Phi_b.
double condition12_residual(const WaveFamily& family, double chi2);

struct RealizationReport {
  double tol = 1e-10;
  // condition name -> max residual; names: normalization, eq7, eq8_anti,
  // eq8_number, eq9, eq12
  std::map<std::string, double> residuals;
  std::map<std::string, bool> passed;

  bool all_passed() const;
};

/// Runs every realization condition for a family against the fermionic
/// target algebra on the selected states and reports per-condition maxima.
/// eq9 (strict nilpotency / cross-mode creator anticommutators) must come
/// out exactly zero; the other conditions compare against tol.
RealizationReport verify_realization(const WaveFamily& family,
                                     const deformation::StructureFunction& chi,
                                     const fock::ModeSpace& space,
                                     const StateSet& states, double tol = 1e-10);

// CSV interfaces. Families: header "alpha,mu,nu,re,im" with 1-based indices,
// full-precision floats (round-trip safe). Reports: "condition,residual,passed".
void family_to_csv(const WaveFamily& family, std::ostream& out);
void family_to_csv_file(const WaveFamily& family, const std::string& path);
WaveFamily family_from_csv(std::istream& in);
WaveFamily family_from_csv_file(const std::string& path);
void report_to_csv(const RealizationReport& report, std::ostream& out);

}  // namespace cofermion::composite

#endif
