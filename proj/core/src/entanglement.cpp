#include "cofermion/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cofermion::entanglement {

namespace {
constexpr double kClamp = 1e-14;

double shannon_term(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }
}  // namespace

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> lambdas)
    : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw std::invalid_argument("SchmidtSpectrum: empty");
  for (double& l : lambdas_) {
    if (l < -kClamp)
      throw std::invalid_argument("SchmidtSpectrum: negative coefficient");
    if (l < kClamp) l = 0.0;
  }
  std::sort(lambdas_.begin(), lambdas_.end(), std::greater<double>());
  double sum_sq = 0.0;
  int nonzero = 0;
  for (double l : lambdas_) {
    sum_sq += l * l;
    if (l > 0.0) ++nonzero;
  }
  if (std::abs(sum_sq - 1.0) > 1e-12)
    throw std::invalid_argument("SchmidtSpectrum: squares must sum to 1");
  // A single surviving coefficient is pinned by the normalization invariant.
  if (nonzero == 1) lambdas_.front() = 1.0;
}

SchmidtSpectrum schmidt(const composite::WaveMatrix& phi) {
  Eigen::JacobiSVD<Matrix> svd(phi.phi());
  const auto& sv = svd.singularValues();
  return SchmidtSpectrum({sv.data(), sv.data() + sv.size()});
}

double entropy(const SchmidtSpectrum& s) {
  double acc = 0.0;
  for (double l : s.lambdas()) acc += shannon_term(l * l);
  return acc == 0.0 ? 0.0 : acc;
}

double purity(const SchmidtSpectrum& s) {
  double acc = 0.0;
  for (double l : s.lambdas()) acc += l * l * l * l;
  return acc;
}

double two_mode_entropy_closed(double theta) {
  const double x = M_PI / 4 + theta;
  const double s2 = std::sin(x) * std::sin(x);
  const double c2 = std::cos(x) * std::cos(x);
  return shannon_term(s2) + shannon_term(c2);
}

double two_mode_purity_closed(double theta) {
  return 0.25 * (3.0 - std::cos(4.0 * theta));
}

double entropy_from_squares(const std::vector<double>& lambda_sq) {
  double acc = 0.0;
  for (double x : lambda_sq) {
    if (x < -1e-9)
      throw std::invalid_argument("entropy_from_squares: negative weight");
    acc += shannon_term(x);
  }
  return acc;
}

}  // namespace cofermion::entanglement
