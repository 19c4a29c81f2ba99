#include "cofermion/composite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "cofermion/csv.hpp"

namespace cofermion::composite {

WaveMatrix::WaveMatrix(Matrix phi, int mode_label)
    : phi_(std::move(phi)), mode_label_(mode_label) {
  if (phi_.rows() < 1 || phi_.cols() < 1)
    throw std::invalid_argument("WaveMatrix: empty matrix");
  const double norm2 = phi_.squaredNorm();  // Tr(Phi Phi^dag)
  if (norm2 < 1e-12)
    throw std::invalid_argument("WaveMatrix: zero matrix violates self-normalization");
  if (std::abs(norm2 - 1.0) > 1e-9)
    throw std::invalid_argument("WaveMatrix: Tr(Phi Phi^dag) must be 1");
}

WaveFamily::WaveFamily(std::vector<WaveMatrix> matrices, double gram_tol)
    : mats_(std::move(matrices)) {
  if (mats_.empty()) throw std::invalid_argument("WaveFamily: no matrices");
  for (const auto& m : mats_)
    if (m.d_a() != mats_.front().d_a() || m.d_b() != mats_.front().d_b())
      throw std::invalid_argument("WaveFamily: inconsistent dimensions");
  Matrix g = gram();
  g -= Matrix::Identity(size(), size());
  if (g.norm() > gram_tol)
    throw std::invalid_argument("WaveFamily: matrices are not orthonormal");
}

Matrix WaveFamily::gram() const {
  Matrix g(size(), size());
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      g(a, b) = (mats_[static_cast<size_t>(b)].phi() *
                 mats_[static_cast<size_t>(a)].phi().adjoint())
                    .trace();
  return g;
}

WaveFamily random_family(int d_a, int d_b, int count, Rng& rng) {
  if (count > d_a * d_b)
    throw std::invalid_argument("random_family: too many modes for the dimensions");
  std::vector<Matrix> raw;
  for (int k = 0; k < count; ++k) raw.push_back(random_gaussian(d_a, d_b, rng));
  std::vector<WaveMatrix> mats;
  for (int k = 0; k < count; ++k) {
    Matrix m = raw[static_cast<size_t>(k)];
    for (int j = 0; j < k; ++j) {
      const Matrix& prev = mats[static_cast<size_t>(j)].phi();
      m -= (m.cwiseProduct(prev.conjugate())).sum() * prev;
    }
    double n = std::sqrt(m.squaredNorm());
    if (n < 1e-8) throw std::runtime_error("random_family: degenerate draw");
    mats.emplace_back(m / n, k + 1);
  }
  return WaveFamily(std::move(mats));
}

ConstituentOps make_constituents(const fock::ModeSpace& space,
                                 const deformation::StructureFunction& chi) {
  return ConstituentOps{space, chi, fock::build_deformed_boson_ops(space, chi),
                        fock::build_fermion_ops(space)};
}

namespace {

// Column-sparse view of an operator with at most one entry per column
// (every creator is of this form). row = -1 marks an annihilated column.
struct OneToOneOp {
  std::vector<long> row;
  std::vector<Complex> val;
};

OneToOneOp to_one_to_one(const Matrix& m) {
  OneToOneOp op;
  const long dim = m.rows();
  op.row.assign(static_cast<size_t>(dim), -1);
  op.val.assign(static_cast<size_t>(dim), Complex(0, 0));
  for (long c = 0; c < dim; ++c)
    for (long r = 0; r < dim; ++r)
      if (m(r, c) != Complex(0, 0)) {
        if (op.row[static_cast<size_t>(c)] != -1)
          throw std::invalid_argument("operator is not one-to-one column sparse");
        op.row[static_cast<size_t>(c)] = r;
        op.val[static_cast<size_t>(c)] = m(r, c);
      }
  return op;
}

// p applied after q.
OneToOneOp compose(const OneToOneOp& p, const OneToOneOp& q) {
  OneToOneOp out;
  const size_t dim = q.row.size();
  out.row.assign(dim, -1);
  out.val.assign(dim, Complex(0, 0));
  for (size_t c = 0; c < dim; ++c) {
    long k = q.row[c];
    if (k < 0) continue;
    long r = p.row[static_cast<size_t>(k)];
    if (r < 0) continue;
    out.row[c] = r;
    out.val[c] = p.val[static_cast<size_t>(k)] * q.val[c];
  }
  return out;
}

// Composite creators a_mu^dag b_nu^dag, flattened as mu * d_b + nu.
std::vector<OneToOneOp> composite_creators(const ConstituentOps& ops) {
  const int d_a = ops.space.d_a(), d_b = ops.space.d_b();
  std::vector<OneToOneOp> a_cr, b_cr;
  for (int mu = 0; mu < d_a; ++mu)
    a_cr.push_back(to_one_to_one(ops.a[static_cast<size_t>(mu)].create.mat));
  for (int nu = 0; nu < d_b; ++nu)
    b_cr.push_back(to_one_to_one(ops.b[static_cast<size_t>(nu)].create.mat));
  std::vector<OneToOneOp> c;
  c.reserve(static_cast<size_t>(d_a * d_b));
  for (int mu = 0; mu < d_a; ++mu)
    for (int nu = 0; nu < d_b; ++nu)
      c.push_back(compose(a_cr[static_cast<size_t>(mu)], b_cr[static_cast<size_t>(nu)]));
  return c;
}

Matrix creator_matrix(const WaveMatrix& wm, const std::vector<OneToOneOp>& c,
                      long dim) {
  Matrix m = Matrix::Zero(dim, dim);
  const int d_b = wm.d_b();
  for (int mu = 0; mu < wm.d_a(); ++mu)
    for (int nu = 0; nu < d_b; ++nu) {
      const OneToOneOp& op = c[static_cast<size_t>(mu * d_b + nu)];
      const Complex w = wm.phi()(mu, nu);
      if (w == Complex(0, 0)) continue;
      for (long col = 0; col < dim; ++col)
        if (op.row[static_cast<size_t>(col)] >= 0)
          m(op.row[static_cast<size_t>(col)], col) += w * op.val[static_cast<size_t>(col)];
    }
  return m;
}

double fermionic_phi_pair(int n) {
  // phi(n+1) + phi(n) for the fermionic target structure function:
  // 1 on n = 0, 1 and 0 beyond.
  return (n <= 1) ? 1.0 : 0.0;
}

void check_family_space(const WaveFamily& family, const fock::ModeSpace& space) {
  if (family.d_a() != space.d_a() || family.d_b() != space.d_b())
    throw std::invalid_argument("wave-matrix dimensions do not match the mode space");
}

}  // namespace

std::vector<CfState> build_cf_states(const WaveFamily& family,
                                     const ConstituentOps& ops,
                                     const StateSet& sel) {
  check_family_space(family, ops.space);
  std::vector<OneToOneOp> c = composite_creators(ops);
  const long dim = ops.space.dim();
  std::vector<Matrix> a_dag;
  for (int alpha = 0; alpha < family.size(); ++alpha)
    a_dag.push_back(creator_matrix(family[alpha], c, dim));

  std::vector<CfState> states;
  auto add_product = [&](const std::vector<int>& modes) {
    Vector v = fock::vacuum_state(ops.space);
    for (auto it = modes.rbegin(); it != modes.rend(); ++it)
      v = a_dag[static_cast<size_t>(*it)] * v;
    double n = v.norm();
    if (n < 1e-10) return;  // degenerate product, nothing to check on it
    states.push_back({v / n, modes});
  };

  if (sel.vacuum) add_product({});
  if (sel.one_cf)
    for (int a = 0; a < family.size(); ++a) add_product({a});
  if (sel.two_cf)
    for (int a = 0; a < family.size(); ++a)
      for (int b = a + 1; b < family.size(); ++b) add_product({a, b});
  return states;
}

std::vector<CfOperators> build_cf_ops(const WaveFamily& family,
                                      const ConstituentOps& ops) {
  check_family_space(family, ops.space);
  std::vector<OneToOneOp> c = composite_creators(ops);
  const long dim = ops.space.dim();
  const int m_cf = family.size();

  std::vector<Matrix> a_dag;
  for (int alpha = 0; alpha < m_cf; ++alpha)
    a_dag.push_back(creator_matrix(family[alpha], c, dim));

  // Eigenbasis for the number operators: every product of distinct creators
  // on the vacuum, i.e. all mode subsets.
  std::vector<std::vector<int>> subsets(1);
  for (int a = 0; a < m_cf; ++a) {
    size_t n = subsets.size();
    for (size_t i = 0; i < n; ++i) {
      std::vector<int> s = subsets[i];
      s.push_back(a);
      subsets.push_back(std::move(s));
    }
  }
  std::vector<std::vector<int>> kept;
  Matrix basis(dim, static_cast<long>(subsets.size()));
  long n_kept = 0;
  for (const auto& s : subsets) {
    Vector v = fock::vacuum_state(ops.space);
    for (auto it = s.rbegin(); it != s.rend(); ++it)
      v = a_dag[static_cast<size_t>(*it)] * v;
    double n = v.norm();
    if (n < 1e-10) continue;
    basis.col(n_kept++) = v / n;
    kept.push_back(s);
  }
  Matrix b = basis.leftCols(n_kept);
  Matrix gram = b.adjoint() * b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  if (es.eigenvalues().minCoeff() < 1e-10)
    throw std::runtime_error(
        "build_cf_ops: composite product states are linearly dependent");
  Matrix pinv = gram.ldlt().solve(b.adjoint());  // (B^dag B)^{-1} B^dag

  std::vector<CfOperators> out;
  for (int alpha = 0; alpha < m_cf; ++alpha) {
    Vector counts(n_kept);
    for (long i = 0; i < n_kept; ++i) {
      const auto& s = kept[static_cast<size_t>(i)];
      counts(i) = std::count(s.begin(), s.end(), alpha) > 0 ? 1.0 : 0.0;
    }
    Matrix n_op = b * counts.asDiagonal() * pinv;
    out.push_back({fock::FockOperator{ops.space, a_dag[static_cast<size_t>(alpha)].adjoint()},
                   fock::FockOperator{ops.space, a_dag[static_cast<size_t>(alpha)]},
                   fock::FockOperator{ops.space, std::move(n_op)}});
  }
  return out;
}

Matrix creator_anticommutator_matrix(const WaveFamily& family, int alpha,
                                     int beta, const ConstituentOps& ops) {
  check_family_space(family, ops.space);
  std::vector<OneToOneOp> c = composite_creators(ops);
  const long dim = ops.space.dim();
  const int n = family.d_a() * family.d_b();
  const Matrix& pa = family[alpha].phi();
  const Matrix& pb = family[beta].phi();
  auto coeff_of = [&](const Matrix& m, int flat) {
    return m(flat / family.d_b(), flat % family.d_b());
  };
  Matrix out = Matrix::Zero(dim, dim);
  // Sum over unordered creator pairs; the two orderings of each pair carry
  // exactly opposite weights, so their joint contribution accumulates as an
  // exact floating-point zero.
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      const Complex coeff = coeff_of(pa, p) * coeff_of(pb, q) +
                            coeff_of(pb, p) * coeff_of(pa, q);
      if (coeff == Complex(0, 0)) continue;
      const OneToOneOp& cp = c[static_cast<size_t>(p)];
      const OneToOneOp& cq = c[static_cast<size_t>(q)];
      for (long col = 0; col < dim; ++col) {
        Complex w(0, 0);
        long r = -1;
        long k = cq.row[static_cast<size_t>(col)];
        if (k >= 0 && cp.row[static_cast<size_t>(k)] >= 0) {
          r = cp.row[static_cast<size_t>(k)];
          w += cp.val[static_cast<size_t>(k)] * cq.val[static_cast<size_t>(col)];
        }
        long k2 = cp.row[static_cast<size_t>(col)];
        if (k2 >= 0 && cq.row[static_cast<size_t>(k2)] >= 0) {
          r = cq.row[static_cast<size_t>(k2)];
          w += cq.val[static_cast<size_t>(k2)] * cp.val[static_cast<size_t>(col)];
        }
        if (r >= 0) out(r, col) += (p == q ? coeff / 2.0 : coeff) * w;
      }
    }
  }
  return out;
}

double anticommutator_expansion_residual(
    const WaveFamily& family, const deformation::StructureFunction& chi,
    const fock::ModeSpace& space) {
  ConstituentOps ops = make_constituents(space, chi);
  std::vector<OneToOneOp> c = composite_creators(ops);
  const long dim = space.dim();
  const int d_a = family.d_a(), d_b = family.d_b();
  if (d_a != space.d_a() || d_b != space.d_b())
    throw std::invalid_argument("family dimensions do not match the space");

  std::vector<Matrix> a_dag;
  for (int alpha = 0; alpha < family.size(); ++alpha)
    a_dag.push_back(creator_matrix(family[alpha], c, dim));

  // Diagonal first differences chi(n_mu + 1) - chi(n_mu) per boson mode.
  std::vector<Matrix> d1;
  for (int mu = 0; mu < d_a; ++mu)
    d1.push_back(fock::boson_diagonal(space, mu, [&](int n) {
                   return chi(n + 1) - chi(n);
                 }).mat);

  const std::vector<long> safe = fock::safe_columns(space);
  double worst = 0.0;
  for (int alpha = 0; alpha < family.size(); ++alpha) {
    for (int beta = 0; beta < family.size(); ++beta) {
      const Matrix& pa = family[alpha].phi();
      const Matrix& pb = family[beta].phi();
      Matrix lhs = a_dag[static_cast<size_t>(alpha)].adjoint() * a_dag[static_cast<size_t>(beta)] +
                   a_dag[static_cast<size_t>(beta)] * a_dag[static_cast<size_t>(alpha)].adjoint();

      Matrix overlap = pb * pa.adjoint();  // (Phi_beta Phi_alpha^dag)^{mu' mu}
      Matrix rhs = Matrix::Zero(dim, dim);
      for (int mu = 0; mu < d_a; ++mu)
        rhs += overlap(mu, mu) * d1[static_cast<size_t>(mu)];
      for (int mup = 0; mup < d_a; ++mup)
        for (int mu = 0; mu < d_a; ++mu)
          rhs += overlap(mup, mu) * (ops.a[static_cast<size_t>(mup)].create.mat *
                                     ops.a[static_cast<size_t>(mu)].annihilate.mat);
      for (int mu = 0; mu < d_a; ++mu) {
        Matrix fpart = Matrix::Zero(dim, dim);
        for (int nup = 0; nup < d_b; ++nup)
          for (int nu = 0; nu < d_b; ++nu) {
            Complex w = std::conj(pa(mu, nu)) * pb(mu, nup);
            if (w != Complex(0, 0))
              fpart += w * (ops.b[static_cast<size_t>(nup)].create.mat *
                            ops.b[static_cast<size_t>(nu)].annihilate.mat);
          }
        rhs -= d1[static_cast<size_t>(mu)] * fpart;
      }

      for (long col : safe)
        worst = std::max(worst, (lhs.col(col) - rhs.col(col)).norm());
    }
  }
  return worst;
}

Matrix condition12_matrix(const WaveFamily& family, int a, int b, int c,
                          double chi2) {
  const Matrix& pa = family[a].phi();
  const Matrix& pb = family[b].phi();
  const Matrix& pc = family[c].phi();
  Matrix ba = pb * pa.adjoint();
  Matrix ca = pc * pa.adjoint();
  Matrix m = ba * pc - ca * pb;
  m += (chi2 - 2.0) * (ba.diagonal().asDiagonal() * pc -
                       ca.diagonal().asDiagonal() * pb);
  return m;
}

double condition12_residual(const WaveFamily& family, double chi2) {
  double worst = 0.0;
  for (int a = 0; a < family.size(); ++a)
    for (int b = 0; b < family.size(); ++b)
      for (int c = 0; c < family.size(); ++c)
        worst = std::max(worst, condition12_matrix(family, a, b, c, chi2).norm());
  return worst;
}

bool RealizationReport::all_passed() const {
  for (const auto& [name, ok] : passed)
    if (!ok) return false;
  return !passed.empty();
}

RealizationReport verify_realization(const WaveFamily& family,
                                     const deformation::StructureFunction& chi,
                                     const fock::ModeSpace& space,
                                     const StateSet& sel, double tol) {
  if (!sel.vacuum && !sel.one_cf && !sel.two_cf)
    throw std::invalid_argument("verify_realization: empty state set");

  ConstituentOps ops = make_constituents(space, chi);
  std::vector<CfOperators> cf = build_cf_ops(family, ops);
  std::vector<CfState> states = build_cf_states(family, ops, sel);
  if (states.empty())
    throw std::invalid_argument("verify_realization: no usable states");

  RealizationReport rep;
  rep.tol = tol;
  const int m_cf = family.size();

  // Gram-matrix orthonormality.
  Matrix g = family.gram() - Matrix::Identity(m_cf, m_cf);
  rep.residuals["normalization"] = g.norm();

  // Anticommutator against the fermionic number-function combination, and
  // the weak creator anticommutator, state by state.
  double r7 = 0.0, r8a = 0.0, r8n = 0.0;
  for (int a = 0; a < m_cf; ++a) {
    for (int b = 0; b < m_cf; ++b) {
      const Matrix& A = cf[static_cast<size_t>(a)].A.mat;
      const Matrix& Bd = cf[static_cast<size_t>(b)].A_dag.mat;
      const Matrix& Na = cf[static_cast<size_t>(a)].N.mat;
      for (const CfState& s : states) {
        Vector anti = A * (Bd * s.vec) + Bd * (A * s.vec);
        if (a == b) {
          int n_a = std::count(s.modes.begin(), s.modes.end(), a) > 0 ? 1 : 0;
          anti -= fermionic_phi_pair(n_a) * s.vec;
        }
        r7 = std::max(r7, anti.norm());

        Vector num = Na * (Bd * s.vec) - Bd * (Na * s.vec);
        if (a == b) num -= Bd * s.vec;
        r8n = std::max(r8n, num.norm());

        if (a != b) {
          const Matrix& Ad = cf[static_cast<size_t>(a)].A_dag.mat;
          r8a = std::max(r8a, (Ad * (Bd * s.vec) + Bd * (Ad * s.vec)).norm());
        }
      }
    }
  }
  rep.residuals["eq7"] = r7;
  rep.residuals["eq8_anti"] = r8a;
  rep.residuals["eq8_number"] = r8n;

  double r9 = 0.0;
  for (int a = 0; a < m_cf; ++a)
    for (int b = a; b < m_cf; ++b)
      r9 = std::max(r9, max_abs(creator_anticommutator_matrix(family, a, b, ops)));
  rep.residuals["eq9"] = r9;

  rep.residuals["eq12"] = condition12_residual(family, chi.chi2());

  for (const auto& [name, res] : rep.residuals)
    rep.passed[name] = (name == "eq9") ? (res == 0.0) : (res <= tol);
  return rep;
}

void family_to_csv(const WaveFamily& family, std::ostream& out) {
  csv::write_row(out, {"alpha", "mu", "nu", "re", "im"});
  for (int a = 0; a < family.size(); ++a) {
    const Matrix& phi = family[a].phi();
    for (int mu = 0; mu < phi.rows(); ++mu)
      for (int nu = 0; nu < phi.cols(); ++nu)
        csv::write_row(out, {std::to_string(family[a].mode_label()),
                             std::to_string(mu + 1), std::to_string(nu + 1),
                             csv::format_full(phi(mu, nu).real()),
                             csv::format_full(phi(mu, nu).imag())});
  }
}

void family_to_csv_file(const WaveFamily& family, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  family_to_csv(family, f);
}

WaveFamily family_from_csv(std::istream& in) {
  csv::Table t = csv::read_csv(in);
  if (t.header != std::vector<std::string>{"alpha", "mu", "nu", "re", "im"})
    throw std::runtime_error("family csv: header 'alpha,mu,nu,re,im' required");
  std::map<long, std::map<std::pair<long, long>, Complex>> entries;
  long d_a = 0, d_b = 0;
  for (const auto& row : t.rows) {
    long alpha = csv::to_long(row[0]);
    long mu = csv::to_long(row[1]), nu = csv::to_long(row[2]);
    if (mu < 1 || nu < 1) throw std::runtime_error("family csv: 1-based indices");
    d_a = std::max(d_a, mu);
    d_b = std::max(d_b, nu);
    entries[alpha][{mu - 1, nu - 1}] = {csv::to_double(row[3]), csv::to_double(row[4])};
  }
  std::vector<WaveMatrix> mats;
  for (const auto& [alpha, cells] : entries) {
    Matrix m = Matrix::Zero(d_a, d_b);
    for (const auto& [idx, val] : cells) m(idx.first, idx.second) = val;
    mats.emplace_back(std::move(m), static_cast<int>(alpha));
  }
  return WaveFamily(std::move(mats));
}

WaveFamily family_from_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return family_from_csv(f);
}

void report_to_csv(const RealizationReport& report, std::ostream& out) {
  csv::write_row(out, {"condition", "residual", "passed"});
  for (const auto& [name, res] : report.residuals)
    csv::write_row(out, {name, csv::format_sci(res),
                         report.passed.at(name) ? "true" : "false"});
}

}  // namespace cofermion::composite
