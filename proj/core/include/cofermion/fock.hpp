#ifndef COFERMION_FOCK_HPP
#define COFERMION_FOCK_HPP

#include <functional>
#include <span>
#include <vector>

#include "cofermion/deformation.hpp"
#include "cofermion/linalg.hpp"

namespace cofermion::fock {

struct FockState {
  std::vector<int> a_occ;  // boson occupations, 0..n_max
  std::vector<int> b_occ;  // fermion occupations, 0/1
};

/// Truncated multimode space: d_a boson modes with per-mode cutoff n_max,
/// d_b fermion modes. Basis order is lexicographic over (a_occ, b_occ) with
/// the first mode most significant; total dimension (n_max+1)^d_a * 2^d_b.
class ModeSpace {
 public:
  ModeSpace(int d_a, int d_b, int n_max);

  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }
  int n_max() const { return n_max_; }
  long dim() const { return dim_; }

  long index_of(const FockState& s) const;
  FockState state_at(long index) const;
  int boson_occ(long index, int mode) const;
  int fermion_occ(long index, int mode) const;

  bool operator==(const ModeSpace& o) const {
    return d_a_ == o.d_a_ && d_b_ == o.d_b_ && n_max_ == o.n_max_;
  }

 private:
  int d_a_, d_b_, n_max_;
  long dim_;
  std::vector<long> a_stride_;  // index stride of raising mode mu by one
  long b_block_;                // 2^d_b
};

struct FockOperator {
  ModeSpace space;
  Matrix mat;
};

struct LadderPair {
  FockOperator create;
  FockOperator annihilate;
};

/// Ordinary bosons: a^dag |..n..> = sqrt(n+1) |..n+1..>, hard cutoff at
/// n_max (creation from a full mode gives the zero vector).
std::vector<LadderPair> build_boson_ops(const ModeSpace& space);

/// Deformed bosons for a structure function chi: a^dag |n> = sqrt(chi(n+1))
/// |n+1>, so a^dag a = chi(n) and [a, a^dag] = chi(n+1) - chi(n) below the
/// cutoff. chi must be tabulated at least to n_max + 1.
std::vector<LadderPair> build_deformed_boson_ops(
    const ModeSpace& space, const deformation::StructureFunction& chi);

/// Ordinary fermions with sign strings over the b-modes in ascending order;
/// the anticommutation relations hold exactly (no truncation in the fermion
/// sector).
std::vector<LadderPair> build_fermion_ops(const ModeSpace& space);

FockOperator identity_op(const ModeSpace& space);
/// Diagonal operator f(n_mu) of the boson occupation of one mode.
FockOperator boson_diagonal(const ModeSpace& space, int mode,
                            const std::function<double(int)>& f);
FockOperator boson_number_op(const ModeSpace& space, int mode);
FockOperator fermion_number_op(const ModeSpace& space, int mode);

Vector vacuum_state(const ModeSpace& space);
Vector basis_state(const ModeSpace& space, const FockState& s);

FockOperator commutator(const FockOperator& x, const FockOperator& y);
FockOperator anticommutator(const FockOperator& x, const FockOperator& y);

/// max_psi || (lhs - rhs) |psi> || over the given normalized states.
double weak_equality_residual(const FockOperator& lhs, const FockOperator& rhs,
                              std::span<const Vector> states);

/// Basis indices of the safe subspace (every boson occupation <= n_max - 1),
/// where one creation cannot hit the cutoff and the boson commutation
/// relations hold exactly.
std::vector<long> safe_columns(const ModeSpace& space);

/// max over safe basis columns of || (x - y) e_col ||.
double safe_column_residual(const FockOperator& x, const FockOperator& y);

}  // namespace cofermion::fock

#endif
