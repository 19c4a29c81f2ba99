#ifndef COFERMION_LINALG_HPP
#define COFERMION_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <random>

namespace cofermion {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline Matrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

/// Haar-distributed unitary: QR of a complex Gaussian with the R-diagonal
/// phases pushed into Q.
inline Matrix random_unitary(int n, Rng& rng) {
  Matrix a = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

inline Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  return std::polar(1.0, u(rng));
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace cofermion

#endif
