#include "cofermion/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace cofermion::fock {

ModeSpace::ModeSpace(int d_a, int d_b, int n_max)
    : d_a_(d_a), d_b_(d_b), n_max_(n_max) {
  if (d_a < 1 || d_b < 1)
    throw std::invalid_argument("ModeSpace: at least one mode per constituent");
  if (n_max < 2) throw std::invalid_argument("ModeSpace: n_max >= 2 required");
  double dim = std::pow(static_cast<double>(n_max + 1), d_a) *
               std::pow(2.0, d_b);
  if (dim > 1024)
    throw std::invalid_argument("ModeSpace: dimension too large for dense operators");
  b_block_ = 1L << d_b_;
  a_stride_.assign(static_cast<size_t>(d_a_), 0);
  long s = 1;
  for (int mu = d_a_ - 1; mu >= 0; --mu) {
    a_stride_[static_cast<size_t>(mu)] = s;
    s *= (n_max_ + 1);
  }
  dim_ = s * b_block_;
}

long ModeSpace::index_of(const FockState& st) const {
  if (static_cast<int>(st.a_occ.size()) != d_a_ ||
      static_cast<int>(st.b_occ.size()) != d_b_)
    throw std::invalid_argument("FockState: occupation lengths do not match the space");
  long ia = 0;
  for (int mu = 0; mu < d_a_; ++mu) {
    int n = st.a_occ[static_cast<size_t>(mu)];
    if (n < 0 || n > n_max_)
      throw std::invalid_argument("FockState: boson occupation out of range");
    ia += n * a_stride_[static_cast<size_t>(mu)];
  }
  long ib = 0;
  for (int nu = 0; nu < d_b_; ++nu) {
    int o = st.b_occ[static_cast<size_t>(nu)];
    if (o != 0 && o != 1)
      throw std::invalid_argument("FockState: fermion occupation must be 0 or 1");
    ib = (ib << 1) | o;
  }
  return ia * b_block_ + ib;
}

FockState ModeSpace::state_at(long index) const {
  FockState st;
  st.a_occ.resize(static_cast<size_t>(d_a_));
  st.b_occ.resize(static_cast<size_t>(d_b_));
  long ib = index % b_block_;
  long ia = index / b_block_;
  for (int nu = d_b_ - 1; nu >= 0; --nu) {
    st.b_occ[static_cast<size_t>(nu)] = static_cast<int>(ib & 1);
    ib >>= 1;
  }
  for (int mu = d_a_ - 1; mu >= 0; --mu) {
    st.a_occ[static_cast<size_t>(mu)] = static_cast<int>(ia % (n_max_ + 1));
    ia /= (n_max_ + 1);
  }
  return st;
}

int ModeSpace::boson_occ(long index, int mode) const {
  long ia = index / b_block_;
  return static_cast<int>((ia / a_stride_[static_cast<size_t>(mode)]) % (n_max_ + 1));
}

int ModeSpace::fermion_occ(long index, int mode) const {
  return static_cast<int>((index >> (d_b_ - 1 - mode)) & 1);
}

std::vector<LadderPair> build_deformed_boson_ops(
    const ModeSpace& space, const deformation::StructureFunction& chi) {
  if (chi.table_max() < space.n_max() + 1)
    throw std::invalid_argument(
        "build_deformed_boson_ops: chi must be tabulated up to n_max + 1");
  std::vector<LadderPair> out;
  out.reserve(static_cast<size_t>(space.d_a()));
  const long dim = space.dim();
  const long b_block = 1L << space.d_b();
  for (int mu = 0; mu < space.d_a(); ++mu) {
    Matrix c = Matrix::Zero(dim, dim);
    long stride = 1;
    for (int k = space.d_a() - 1; k > mu; --k) stride *= (space.n_max() + 1);
    stride *= b_block;
    for (long idx = 0; idx < dim; ++idx) {
      int n = space.boson_occ(idx, mu);
      if (n < space.n_max())  // hard cutoff: creation from n_max is dropped
        c(idx + stride, idx) = std::sqrt(chi(n + 1));
    }
    out.push_back({FockOperator{space, c}, FockOperator{space, c.adjoint()}});
  }
  return out;
}

std::vector<LadderPair> build_boson_ops(const ModeSpace& space) {
  return build_deformed_boson_ops(
      space, deformation::StructureFunction::linear(space.n_max() + 2));
}

std::vector<LadderPair> build_fermion_ops(const ModeSpace& space) {
  std::vector<LadderPair> out;
  out.reserve(static_cast<size_t>(space.d_b()));
  const long dim = space.dim();
  for (int nu = 0; nu < space.d_b(); ++nu) {
    Matrix c = Matrix::Zero(dim, dim);
    const long bit = 1L << (space.d_b() - 1 - nu);
    for (long idx = 0; idx < dim; ++idx) {
      if ((idx & bit) != 0) continue;  // already occupied
      int string = 0;  // occupied modes below nu, in ascending mode order
      for (int k = 0; k < nu; ++k) string += space.fermion_occ(idx, k);
      c(idx + bit, idx) = (string % 2 == 0) ? 1.0 : -1.0;
    }
    out.push_back({FockOperator{space, c}, FockOperator{space, c.adjoint()}});
  }
  return out;
}

FockOperator identity_op(const ModeSpace& space) {
  return {space, Matrix::Identity(space.dim(), space.dim())};
}

FockOperator boson_diagonal(const ModeSpace& space, int mode,
                            const std::function<double(int)>& f) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (long idx = 0; idx < space.dim(); ++idx)
    m(idx, idx) = f(space.boson_occ(idx, mode));
  return {space, std::move(m)};
}

FockOperator boson_number_op(const ModeSpace& space, int mode) {
  return boson_diagonal(space, mode, [](int n) { return double(n); });
}

FockOperator fermion_number_op(const ModeSpace& space, int mode) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (long idx = 0; idx < space.dim(); ++idx)
    m(idx, idx) = space.fermion_occ(idx, mode);
  return {space, std::move(m)};
}

Vector vacuum_state(const ModeSpace& space) {
  Vector v = Vector::Zero(space.dim());
  v(0) = 1.0;
  return v;
}

Vector basis_state(const ModeSpace& space, const FockState& s) {
  Vector v = Vector::Zero(space.dim());
  v(space.index_of(s)) = 1.0;
  return v;
}

static void check_same_space(const FockOperator& x, const FockOperator& y) {
  if (!(x.space == y.space) || x.mat.rows() != y.mat.rows())
    throw std::invalid_argument("operators live on different spaces");
}

FockOperator commutator(const FockOperator& x, const FockOperator& y) {
  check_same_space(x, y);
  return {x.space, x.mat * y.mat - y.mat * x.mat};
}

FockOperator anticommutator(const FockOperator& x, const FockOperator& y) {
  check_same_space(x, y);
  return {x.space, x.mat * y.mat + y.mat * x.mat};
}

double weak_equality_residual(const FockOperator& lhs, const FockOperator& rhs,
                              std::span<const Vector> states) {
  check_same_space(lhs, rhs);
  double worst = 0.0;
  for (const Vector& psi : states) {
    if (psi.size() != lhs.mat.rows())
      throw std::invalid_argument("weak_equality_residual: state dimension mismatch");
    worst = std::max(worst, (lhs.mat * psi - rhs.mat * psi).norm());
  }
  return worst;
}

std::vector<long> safe_columns(const ModeSpace& space) {
  std::vector<long> cols;
  for (long idx = 0; idx < space.dim(); ++idx) {
    bool safe = true;
    for (int mu = 0; mu < space.d_a() && safe; ++mu)
      safe = space.boson_occ(idx, mu) <= space.n_max() - 1;
    if (safe) cols.push_back(idx);
  }
  return cols;
}

double safe_column_residual(const FockOperator& x, const FockOperator& y) {
  check_same_space(x, y);
  double worst = 0.0;
  for (long col : safe_columns(x.space))
    worst = std::max(worst, (x.mat.col(col) - y.mat.col(col)).norm());
  return worst;
}

}  // namespace cofermion::fock
