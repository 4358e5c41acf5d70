#include "pipdim/estimate.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace pipdim {

NoiseEstimate estimate_noise(const Matrix& m1, const Matrix& m2) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
    throw std::invalid_argument("estimate_noise: the two halves differ in shape");
  }
  if (m1.size() == 0) throw std::invalid_argument("estimate_noise: empty matrices");
  const double mn = static_cast<double>(m1.rows()) * static_cast<double>(m1.cols());
  NoiseEstimate est;
  est.sigma = (m1 - m2).norm() / (2.0 * std::sqrt(mn));
  return est;
}

NoiseEstimate estimate_noise(const SignalMatrix& m1, const SignalMatrix& m2) {
  if (m1.transform != m2.transform) {
    throw std::invalid_argument("estimate_noise: halves went through different transforms");
  }
  return estimate_noise(m1.values, m2.values);
}

Spectrum soft_threshold_spectrum(const Vector& singular_values, double sigma, Index max_dim,
                                 Index ambient) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  const double threshold = 2.0 * sigma * std::sqrt(static_cast<double>(max_dim));
  std::vector<double> vals(static_cast<std::size_t>(singular_values.size()));
  for (Index i = 0; i < singular_values.size(); ++i) {
    vals[static_cast<std::size_t>(i)] = std::max(singular_values(i) - threshold, 0.0);
  }
  return Spectrum(std::move(vals), ambient);
}

Spectrum estimate_spectrum(const Matrix& noisy, double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  const Index max_dim = std::max(noisy.rows(), noisy.cols());
  Eigen::BDCSVD<Matrix> svd(noisy);
  const Vector& s = svd.singularValues();
  if (sigma > 0.0) return soft_threshold_spectrum(s, sigma, max_dim, max_dim);
  // With no threshold, drop round-off level values so rank is the numerical rank.
  Vector kept = s;
  if (s.size() > 0) {
    const double tol = static_cast<double>(max_dim) * std::numeric_limits<double>::epsilon() * s(0);
    for (Index i = 0; i < kept.size(); ++i) {
      if (kept(i) <= tol) kept(i) = 0.0;
    }
  }
  return soft_threshold_spectrum(kept, 0.0, max_dim, max_dim);
}

Spectrum estimate_spectrum(const SignalMatrix& noisy, double sigma) {
  return estimate_spectrum(noisy.values, sigma);
}

}  // namespace pipdim
