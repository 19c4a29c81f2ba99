#ifndef COFERMION_ENTANGLEMENT_HPP
#define COFERMION_ENTANGLEMENT_HPP

#include <vector>

#include "cofermion/composite.hpp"

namespace cofermion::entanglement {

/// Descending Schmidt coefficients with sum of squares 1 (within 1e-12).
/// Values below 1e-14 are clamped to zero at construction; if a single
/// nonzero coefficient remains it is pinned to exactly 1 (forced by the
/// normalization invariant), so product states report entropy exactly 0.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> lambdas);

  const std::vector<double>& lambdas() const { return lambdas_; }
  int size() const { return static_cast<int>(lambdas_.size()); }
  double operator[](int k) const { return lambdas_[k]; }

 private:
  std::vector<double> lambdas_;
};

/// Singular values of the wave matrix, descending.
SchmidtSpectrum schmidt(const composite::WaveMatrix& phi);

/// S = -sum_k lambda_k^2 ln lambda_k^2 (nats), with 0 ln 0 := 0.
double entropy(const SchmidtSpectrum& s);

/// P = sum_k lambda_k^4, the inverse Schmidt number.
double purity(const SchmidtSpectrum& s);

/// Two-mode closed forms, both composite modes alike:
/// S2(pi/4 + theta) with S2(x) = -sin^2 x ln sin^2 x - cos^2 x ln cos^2 x,
/// and P(theta) = (3 - cos 4 theta)/4.
double two_mode_entropy_closed(double theta);
double two_mode_purity_closed(double theta);

/// Entropy of a spectrum given as squared coefficients (clamps tiny
/// negatives from closed-form evaluation noise).
double entropy_from_squares(const std::vector<double>& lambda_sq);

}  // namespace cofermion::entanglement

#endif
