#ifndef COFERMION_SOLUTIONS_HPP
#define COFERMION_SOLUTIONS_HPP

#include <array>
#include <vector>

#include "cofermion/composite.hpp"

namespace cofermion::solutions {

/// Singular value decomposition with degenerate values grouped into blocks:
/// phi = U1 * diag{s_1 E_{m_1}, s_2 E_{m_2}, ...} * V1^dag with strictly
/// descending distinct s_l and multiplicities m_l.
struct SVDBlocks {
  Matrix U1, V1;
  std::vector<double> singulars;      // distinct, descending
  std::vector<int> multiplicities;    // same length
};

SVDBlocks svd_blocks(const composite::WaveMatrix& phi, double group_rtol = 1e-9);
Matrix reconstruct(const SVDBlocks& blocks, int rows, int cols);

/// Composite-boson wave matrix: U1 * diag{0..0, sqrt(1/m) U_alpha, 0..0} *
/// U2^dag with an m x m unitary block starting at block_position on the
/// diagonal. All nonzero Schmidt coefficients equal 1/sqrt(m).
composite::WaveMatrix coboson_phi(const Matrix& U1, const Matrix& U2, int m,
                                  int block_position, int alpha,
                                  const Matrix& U_alpha);
composite::WaveMatrix coboson_phi(const Matrix& U1, const Matrix& U2, int m,
                                  int block_position, int alpha);

/// General non-deformed-constituent family: Phi_alpha = U diag{lambda^alpha}
/// V^dag with orthonormal complex rows lambda^alpha. Satisfies the
/// wavefunction condition at chi2 = 2 by construction.
composite::WaveFamily cf_general_family(const Matrix& U, const Matrix& V,
                                        const std::vector<Vector>& lambda_rows);

/// Two-mode family (both constituents in two modes):
/// Phi_alpha = e^{-i at psi} U diag(cos(at + theta) e^{i phi},
///                                  sin(at + theta) e^{-i phi}) V^dag,
/// at = -pi/4 for alpha = 1 and +pi/4 for alpha = 2.
struct TwoModeParams {
  double theta = 0.0;
  double psi = 0.0;
  double phi = 0.0;
  Matrix U = Matrix::Identity(2, 2);
  Matrix V = Matrix::Identity(2, 2);
};
composite::WaveFamily two_mode_family(const TwoModeParams& p);

/// Angles of the symmetric SU(3)-row parametrization,
/// 0 <= theta1, theta2, theta3 + pi/4 <= pi/2, phases in [0, 2 pi].
struct SU3LambdaParams {
  double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
};
void validate(const SU3LambdaParams& p);

/// The unit 3-vector lambda^alpha (alpha = 1, 2); the two rows are exactly
/// orthonormal for any parameter values.
Vector su3_lambda(int alpha, const SU3LambdaParams& p);

/// Derived shift angles replacing (theta2, phi2) in the closed-form Schmidt
/// coefficients; normalized into (-pi/4, pi/4] (the closed form is invariant
/// under shifts of either angle by pi/2).
struct ShiftAngles {
  double theta3_minus = 0.0;
  double theta3_plus = 0.0;
};
ShiftAngles shift_angles(double theta1, double theta2, double phi2);

/// Closed-form squared Schmidt coefficients (|l1|^2, |l2|^2, |l3|^2) of
/// lambda^alpha in terms of (theta1, theta3) and the shift angles. Validated
/// against |su3_lambda|^2, which is the ground truth; accuracy degrades near
/// the degenerate locus sin 2(theta3_plus + theta3_minus) -> 0 where the
/// parametrization itself is ill-conditioned.
std::array<double, 3> schmidt_sq_closed_form(int alpha, double theta1,
                                             double theta3,
                                             const ShiftAngles& shifts);

/// Cyclically symmetric three-mode entropy
///   sum_{l=-1..1} S1((2/3) cos^2(theta3 + pi l/3 + at)), S1(x) = -x ln x,
/// valid on the slice shift angles = pi/3, sin^2 theta1 = 1/3.
double c3_entropy(int alpha, double theta3);

/// L(phi1, phi2) = P1 P1^d P2 - P2 P1^d P1
///   + dchi2 [diag(P1 P1^d) P2 - diag(P2 P1^d) P1];
/// the two-mode realization conditions are L(P1,P2) = 0 and L(P2,P1) = 0.
Matrix L_operator(const composite::WaveMatrix& phi1,
                  const composite::WaveMatrix& phi2, double delta_chi2);

/// U(u, v) = [[u, v], [-conj(v), conj(u)]] with |u|^2 + |v|^2 = 1.
Matrix su2_matrix(Complex u, Complex v);

/// Hermitian involution R = [[|u|^2-|v|^2, 2 conj(u) v],
///                           [2 u conj(v), |v|^2-|u|^2]]; R^2 = 1 and
/// U^dag diag{(U X U^dag)^{mu mu}} U = X/2 + R X R/2 for U = su2_matrix(u,v).
Matrix r_matrix(Complex u, Complex v);

/// Closed-form determinant of the two-mode linear system:
///   -chi2 (chi2 - 2) |u|^2 |v|^2 (lam1_sq - lam2_sq)^2.
/// A second composite mode exists only where this vanishes.
double determinant_criterion(double chi2, Complex u, Complex v, double lam1_sq,
                             double lam2_sq);

/// The 3x3 system behind the criterion: the linear realization condition in
/// the tilde frame, expanded over the basis
///   M1 = [[l2,0],[0,-l1]], M2 = [[0,k l1],[conj(k) l2,0]],
///   M3 = [[0,-k l2],[conj(k) l1,0]],  k = e^{i(arg v - arg u)},
/// and projected back onto that basis with the trace pairing. Its
/// determinant equals 8 times determinant_criterion (real up to rounding).
Eigen::Matrix3cd deformed_two_mode_system(double chi2, Complex u, Complex v,
                                          double lam1, double lam2);

enum class DeformedCaseTag {
  chi2_zero,       // chi(2) = 0 family with the paired SU(2) rotations
  chi2_one_diag,   // chi(2) = 1, diagonal-times-V^dag family
  chi2_one_rank1,  // chi(2) = 1, single-boson-mode rank-1 family
  generic,         // chi(2) outside {0, 1, 2}, same shape as chi2_one_diag
  nondeformed      // chi(2) = 2, reduces to the two-mode family
};

struct DeformedTwoModeParams {
  double theta = 0.0;
  Complex u = 1.0, v = 0.0;          // chi2_zero / nondeformed cases
  Matrix V = Matrix::Identity(2, 2);
  int mu0 = 1;                       // chi2_one_rank1: boson mode 1 or 2
  double chi2 = 1.0;                 // must match the tag
};

/// Builds the closed-form two-mode family for one deformed case; the result
/// satisfies L(P1,P2) = L(P2,P1) = 0 at its chi(2). Throws when the supplied
/// chi(2) contradicts the tag.
composite::WaveFamily deformed_two_mode_family(DeformedCaseTag tag,
                                               const DeformedTwoModeParams& p);

}  // namespace cofermion::solutions

#endif
