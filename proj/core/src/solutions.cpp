#include "cofermion/solutions.hpp"

#include <cmath>
#include <stdexcept>

namespace cofermion::solutions {

namespace {

double alpha_tilde(int alpha) {
  if (alpha != 1 && alpha != 2)
    throw std::invalid_argument("composite mode index must be 1 or 2");
  return (alpha == 1) ? -M_PI / 4 : M_PI / 4;
}

void require_unitary(const Matrix& u, const char* name, double tol = 1e-9) {
  if (u.rows() != u.cols())
    throw std::invalid_argument(std::string(name) + " must be square");
  Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  if (d.norm() > tol)
    throw std::invalid_argument(std::string(name) + " is not unitary");
}

void require_unit_pair(Complex u, Complex v) {
  if (std::abs(std::norm(u) + std::norm(v) - 1.0) > 1e-9)
    throw std::invalid_argument("|u|^2 + |v|^2 = 1 required");
}

/// Wraps an angle into (-pi/4, pi/4]; the closed-form spectra are invariant
/// under pi/2 shifts of either shift angle.
double wrap_quarter(double x) {
  while (x > M_PI / 4 + 1e-15) x -= M_PI / 2;
  while (x <= -M_PI / 4 - 1e-15) x += M_PI / 2;
  return x;
}

}  // namespace

SVDBlocks svd_blocks(const composite::WaveMatrix& phi, double group_rtol) {
  Eigen::JacobiSVD<Matrix> svd(phi.phi(),
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  SVDBlocks out;
  out.U1 = svd.matrixU();
  out.V1 = svd.matrixV();
  const auto& sv = svd.singularValues();
  const double scale = sv.size() > 0 ? std::max(sv(0), 1e-300) : 1.0;
  for (long i = 0; i < sv.size(); ++i) {
    if (!out.singulars.empty() &&
        out.singulars.back() - sv(i) <= group_rtol * scale) {
      ++out.multiplicities.back();
    } else {
      out.singulars.push_back(sv(i));
      out.multiplicities.push_back(1);
    }
  }
  return out;
}

Matrix reconstruct(const SVDBlocks& blocks, int rows, int cols) {
  Matrix d = Matrix::Zero(rows, cols);
  int k = 0;
  for (size_t l = 0; l < blocks.singulars.size(); ++l)
    for (int r = 0; r < blocks.multiplicities[l]; ++r, ++k)
      d(k, k) = blocks.singulars[l];
  return blocks.U1 * d * blocks.V1.adjoint();
}

composite::WaveMatrix coboson_phi(const Matrix& U1, const Matrix& U2, int m,
                                  int block_position, int alpha,
                                  const Matrix& U_alpha) {
  require_unitary(U1, "U1");
  require_unitary(U2, "U2");
  require_unitary(U_alpha, "U_alpha");
  if (m < 1) throw std::invalid_argument("coboson_phi: m >= 1 required");
  if (U_alpha.rows() != m)
    throw std::invalid_argument("coboson_phi: U_alpha must be m x m");
  const long d_a = U1.rows(), d_b = U2.rows();
  if (block_position < 0 || block_position + m > std::min(d_a, d_b))
    throw std::invalid_argument("coboson_phi: block out of range");
  Matrix b = Matrix::Zero(d_a, d_b);
  b.block(block_position, block_position, m, m) =
      std::sqrt(1.0 / m) * U_alpha;
  return composite::WaveMatrix(U1 * b * U2.adjoint(), alpha);
}

composite::WaveMatrix coboson_phi(const Matrix& U1, const Matrix& U2, int m,
                                  int block_position, int alpha) {
  return coboson_phi(U1, U2, m, block_position, alpha, Matrix::Identity(m, m));
}

composite::WaveFamily cf_general_family(const Matrix& U, const Matrix& V,
                                        const std::vector<Vector>& lambda_rows) {
  require_unitary(U, "U");
  require_unitary(V, "V");
  const long d_a = U.rows(), d_b = V.rows();
  const long len = std::min(d_a, d_b);
  for (const Vector& row : lambda_rows)
    if (row.size() != len)
      throw std::invalid_argument("cf_general_family: row length must be min(d_a, d_b)");
  for (size_t a = 0; a < lambda_rows.size(); ++a)
    for (size_t b = 0; b <= a; ++b) {
      Complex ip = lambda_rows[b].dot(lambda_rows[a]);  // sum l^a conj(l^b)
      double target = (a == b) ? 1.0 : 0.0;
      if (std::abs(ip - target) > 1e-12)
        throw std::invalid_argument("cf_general_family: rows are not orthonormal");
    }
  std::vector<composite::WaveMatrix> mats;
  for (size_t a = 0; a < lambda_rows.size(); ++a) {
    Matrix d = Matrix::Zero(d_a, d_b);
    for (long k = 0; k < len; ++k) d(k, k) = lambda_rows[a](k);
    mats.emplace_back(U * d * V.adjoint(), static_cast<int>(a) + 1);
  }
  return composite::WaveFamily(std::move(mats));
}

composite::WaveFamily two_mode_family(const TwoModeParams& p) {
  require_unitary(p.U, "U");
  require_unitary(p.V, "V");
  if (p.U.rows() != 2 || p.V.rows() != 2)
    throw std::invalid_argument("two_mode_family: 2x2 unitaries required");
  std::vector<composite::WaveMatrix> mats;
  for (int alpha : {1, 2}) {
    const double at = alpha_tilde(alpha);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::cos(at + p.theta) * std::polar(1.0, p.phi);
    d(1, 1) = std::sin(at + p.theta) * std::polar(1.0, -p.phi);
    mats.emplace_back(std::polar(1.0, -at * p.psi) * (p.U * d * p.V.adjoint()),
                      alpha);
  }
  return composite::WaveFamily(std::move(mats));
}

void validate(const SU3LambdaParams& p) {
  constexpr double eps = 1e-9;
  auto in = [](double x, double lo, double hi) {
    return x >= lo - eps && x <= hi + eps;
  };
  if (!in(p.theta1, 0, M_PI / 2) || !in(p.theta2, 0, M_PI / 2) ||
      !in(p.theta3 + M_PI / 4, 0, M_PI / 2))
    throw std::invalid_argument("su3 params: angle out of range");
  if (!in(p.phi1, 0, 2 * M_PI) || !in(p.phi2, 0, 2 * M_PI) ||
      !in(p.phi3, 0, 2 * M_PI))
    throw std::invalid_argument("su3 params: phase out of range");
}

Vector su3_lambda(int alpha, const SU3LambdaParams& p) {
  validate(p);
  const double at = alpha_tilde(alpha);
  const double c3 = std::cos(at + p.theta3), s3 = std::sin(at + p.theta3);
  const Complex e1 = std::polar(1.0, p.phi1);
  const Complex e2 = std::polar(1.0, p.phi2);
  const Complex e3m = std::polar(1.0, -p.phi3);
  Vector v(3);
  v(0) = e1 * (std::sin(p.theta1) * std::cos(p.theta2) * c3 -
               std::sin(p.theta2) * s3 * e2);
  v(1) = std::cos(p.theta1) * c3;
  v(2) = e3m * (std::sin(p.theta1) * std::sin(p.theta2) * c3 +
                std::cos(p.theta2) * s3 * e2);
  return v;
}

ShiftAngles shift_angles(double theta1, double theta2, double phi2) {
  const double s1 = std::sin(theta1);
  const double cp2 = std::cos(phi2);
  // tan 2t = sign * 2 s1 tan(arg) cos(phi2) / (1 - s1^2 tan^2(arg)), in the
  // pole-free form obtained by multiplying through by cos^2(arg); atan2
  // resolves the branch. Plus branch: arg = theta2; minus branch: arg =
  // theta2 + pi/2 with an overall minus sign.
  auto half_atan = [&](double arg, double sign) {
    const double num = sign * s1 * std::sin(2.0 * arg) * cp2;
    const double den = std::cos(arg) * std::cos(arg) -
                       s1 * s1 * std::sin(arg) * std::sin(arg);
    return wrap_quarter(0.5 * std::atan2(num, den));
  };
  return {half_atan(theta2 + M_PI / 2, -1.0), half_atan(theta2, +1.0)};
}

std::array<double, 3> schmidt_sq_closed_form(int alpha, double theta1,
                                             double theta3,
                                             const ShiftAngles& shifts) {
  const double at = alpha_tilde(alpha);
  const double s1sq = std::sin(theta1) * std::sin(theta1);
  const double c1sq = 1.0 - s1sq;
  const double a = 2.0 * shifts.theta3_plus;
  const double b = 2.0 * shifts.theta3_minus;
  const double sab = std::sin(a + b);

  double middle_ratio, ratio_plus, ratio_minus;
  if (sab != 0.0) {
    middle_ratio = std::sin(a - b) / sab;
    ratio_plus = std::sin(a) / sab;
    ratio_minus = std::sin(b) / sab;
  } else if (std::sin(a - b) == 0.0) {
    // equal shift angles: the 0/0 ratios have finite limits
    middle_ratio = 0.0;
    ratio_plus = ratio_minus = 1.0 / (2.0 * std::cos(a));
  } else {
    throw std::domain_error(
        "schmidt_sq_closed_form: singular shift-angle combination");
  }

  const double term2 = 0.25 * c1sq * c1sq * middle_ratio / (1.0 + s1sq);
  std::array<double, 3> r;
  r[0] = 0.25 * (1.0 + s1sq) + term2 -
         0.5 * ratio_plus * c1sq *
             std::cos(2.0 * (theta3 - shifts.theta3_minus + at));
  r[1] = 0.5 * (1.0 - s1sq) + 0.5 * c1sq * std::cos(2.0 * (theta3 + at));
  r[2] = 0.25 * (1.0 + s1sq) - term2 -
         0.5 * ratio_minus * c1sq *
             std::cos(2.0 * (theta3 + shifts.theta3_plus + at));
  return r;
}

double c3_entropy(int alpha, double theta3) {
  const double at = alpha_tilde(alpha);
  double acc = 0.0;
  for (int l = -1; l <= 1; ++l) {
    const double c = std::cos(theta3 + l * M_PI / 3 + at);
    const double x = (2.0 / 3.0) * c * c;
    if (x > 0.0) acc -= x * std::log(x);
  }
  return acc;
}

Matrix L_operator(const composite::WaveMatrix& phi1,
                  const composite::WaveMatrix& phi2, double delta_chi2) {
  if (phi1.d_a() != phi2.d_a() || phi1.d_b() != phi2.d_b())
    throw std::invalid_argument("L_operator: dimension mismatch");
  const Matrix& p1 = phi1.phi();
  const Matrix& p2 = phi2.phi();
  Matrix m = p1 * p1.adjoint() * p2 - p2 * p1.adjoint() * p1;
  m += delta_chi2 * ((p1 * p1.adjoint()).diagonal().asDiagonal() * p2 -
                     (p2 * p1.adjoint()).diagonal().asDiagonal() * p1);
  return m;
}

Matrix su2_matrix(Complex u, Complex v) {
  require_unit_pair(u, v);
  Matrix m(2, 2);
  m << u, v, -std::conj(v), std::conj(u);
  return m;
}

Matrix r_matrix(Complex u, Complex v) {
  require_unit_pair(u, v);
  Matrix m(2, 2);
  m << std::norm(u) - std::norm(v), 2.0 * std::conj(u) * v,
      2.0 * u * std::conj(v), std::norm(v) - std::norm(u);
  return m;
}

double determinant_criterion(double chi2, Complex u, Complex v, double lam1_sq,
                             double lam2_sq) {
  require_unit_pair(u, v);
  if (std::abs(lam1_sq + lam2_sq - 1.0) > 1e-9)
    throw std::invalid_argument("determinant_criterion: lam squares must sum to 1");
  const double diff = lam1_sq - lam2_sq;
  return -chi2 * (chi2 - 2.0) * std::norm(u) * std::norm(v) * diff * diff;
}

Eigen::Matrix3cd deformed_two_mode_system(double chi2, Complex u, Complex v,
                                          double lam1, double lam2) {
  require_unit_pair(u, v);
  if (std::abs(lam1 * lam1 + lam2 * lam2 - 1.0) > 1e-9)
    throw std::invalid_argument("deformed_two_mode_system: lam1^2 + lam2^2 = 1 required");
  const double dchi2 = chi2 - 2.0;
  const Complex kap = std::polar(1.0, std::arg(v) - std::arg(u));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = lam1;
  d(1, 1) = lam2;
  Matrix r = r_matrix(u, v);
  std::array<Matrix, 3> basis;
  basis[0] = Matrix::Zero(2, 2);
  basis[0] << lam2, 0, 0, -lam1;
  basis[1] = Matrix::Zero(2, 2);
  basis[1] << 0, kap * lam1, std::conj(kap) * lam2, 0;
  basis[2] = Matrix::Zero(2, 2);
  basis[2] << 0, -kap * lam2, std::conj(kap) * lam1, 0;

  Eigen::Matrix3cd t;
  for (int j = 0; j < 3; ++j) {
    const Matrix& m = basis[static_cast<size_t>(j)];
    // the linear realization condition in the tilde frame, applied to m
    Matrix e = chi2 * (d * d * m - m * d * d) +
               dchi2 * r * (d * d * r * m - m * d * r * d);
    for (int k = 0; k < 3; ++k)
      t(k, j) = (basis[static_cast<size_t>(k)].adjoint() * e).trace();
  }
  return t;
}

composite::WaveFamily deformed_two_mode_family(DeformedCaseTag tag,
                                               const DeformedTwoModeParams& p) {
  require_unitary(p.V, "V");
  if (p.V.rows() != 2)
    throw std::invalid_argument("deformed_two_mode_family: V must be 2x2");

  auto require_chi2 = [&](double want) {
    if (std::abs(p.chi2 - want) > 1e-12)
      throw std::invalid_argument("deformed_two_mode_family: tag requires chi(2) = " +
                                  std::to_string(want));
  };

  std::vector<composite::WaveMatrix> mats;
  switch (tag) {
    case DeformedCaseTag::chi2_zero: {
      require_chi2(0.0);
      for (int alpha : {1, 2}) {
        const double at = alpha_tilde(alpha);
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = std::cos(at + p.theta);
        d(1, 1) = std::sin(at + p.theta);
        Matrix su2 = su2_matrix(p.u, alpha == 1 ? p.v : -p.v);
        mats.emplace_back(su2 * d * p.V.adjoint(), alpha);
      }
      break;
    }
    case DeformedCaseTag::chi2_one_diag:
    case DeformedCaseTag::generic: {
      if (tag == DeformedCaseTag::chi2_one_diag) {
        require_chi2(1.0);
      } else {
        for (double excl : {0.0, 1.0, 2.0})
          if (std::abs(p.chi2 - excl) < 1e-9)
            throw std::invalid_argument(
                "deformed_two_mode_family: generic tag requires chi(2) outside {0,1,2}");
      }
      for (int alpha : {1, 2}) {
        const double at = alpha_tilde(alpha);
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = std::cos(at + p.theta);
        d(1, 1) = std::sin(at + p.theta);
        mats.emplace_back(d * p.V.adjoint(), alpha);
      }
      break;
    }
    case DeformedCaseTag::chi2_one_rank1: {
      require_chi2(1.0);
      if (p.mu0 != 1 && p.mu0 != 2)
        throw std::invalid_argument("deformed_two_mode_family: mu0 must be 1 or 2");
      for (int alpha : {1, 2}) {
        Matrix m = Matrix::Zero(2, 2);
        for (int nu = 0; nu < 2; ++nu)
          m(p.mu0 - 1, nu) = std::conj(p.V(nu, alpha - 1));
        mats.emplace_back(std::move(m), alpha);
      }
      break;
    }
    case DeformedCaseTag::nondeformed: {
      require_chi2(2.0);
      TwoModeParams tp;
      tp.theta = p.theta;
      tp.U = su2_matrix(p.u, p.v);
      tp.V = p.V;
      return two_mode_family(tp);
    }
  }
  return composite::WaveFamily(std::move(mats));
}

}  // namespace cofermion::solutions
