#include "pipdim/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pipdim {

namespace {

// Largest-magnitude entry of every left singular vector made positive.
void fix_signs(Matrix& u, Matrix& v) {
  for (Index j = 0; j < u.cols(); ++j) {
    Index arg = 0;
    u.col(j).cwiseAbs().maxCoeff(&arg);
    if (u(arg, j) < 0.0) {
      u.col(j) *= -1.0;
      if (j < v.cols()) v.col(j) *= -1.0;
    }
  }
}

void require_orthonormal(const Matrix& x, const char* name) {
  if (orthonormality_error(x) > kOrthonormalTolerance) {
    throw std::invalid_argument(std::string(name) + " does not have orthonormal columns");
  }
}

}  // namespace

double spectral_power(double lambda, double alpha) noexcept {
  if (alpha == 0.0) return 1.0;
  return std::pow(lambda, alpha);
}

Factorization::Factorization(const Matrix& m, bool full_left)
    : max_dim_(std::max(m.rows(), m.cols())) {
  const unsigned opts =
      (full_left ? Eigen::ComputeFullU : Eigen::ComputeThinU) | Eigen::ComputeThinV;
  Eigen::BDCSVD<Matrix> svd(m, opts);
  left_ = svd.matrixU();
  right_ = svd.matrixV();
  singular_values_ = svd.singularValues();
  fix_signs(left_, right_);
}

Index Factorization::numerical_rank() const noexcept {
  if (singular_values_.size() == 0) return 0;
  const double tol = static_cast<double>(max_dim_) * std::numeric_limits<double>::epsilon() *
                     singular_values_(0);
  return (singular_values_.array() > tol).count();
}

Embedding Factorization::embedding(double alpha, Index k) const {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (k < 1 || k > singular_values_.size()) {
    throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, " +
                                std::to_string(singular_values_.size()) + "]");
  }
  Vector scale(k);
  for (Index i = 0; i < k; ++i) scale(i) = spectral_power(singular_values_(i), alpha);
  Embedding e;
  e.values = left_.leftCols(k) * scale.asDiagonal();
  e.alpha = alpha;
  e.source_spectrum = spectrum();
  e.provenance = "svd truncation k=" + std::to_string(k);
  return e;
}

Spectrum Factorization::spectrum() const {
  std::vector<double> vals(singular_values_.data(),
                           singular_values_.data() + singular_values_.size());
  return Spectrum(std::move(vals), max_dim_);
}

Embedding factorize(const Matrix& m, double alpha, Index k) {
  if (k < 1 || k > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("k outside [1, min(m, n)]");
  }
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0, 1]");
  return Factorization(m).embedding(alpha, k);
}

Embedding factorize(const SignalMatrix& m, double alpha, Index k) {
  Embedding e = factorize(m.values, alpha, k);
  e.provenance = "f(alpha=" + std::to_string(alpha) + ", k=" + std::to_string(k) + ") of " +
                 (m.provenance.empty() ? to_string(m.transform) : m.provenance);
  return e;
}

Matrix pip_matrix(const Matrix& e) { return e * e.transpose(); }

double pip_distance(const Matrix& e1, const Matrix& e2) {
  if (e1.rows() != e2.rows()) {
    throw std::invalid_argument("pip_distance: row counts differ (" + std::to_string(e1.rows()) +
                                " vs " + std::to_string(e2.rows()) + ")");
  }
  const Index k1 = e1.cols();
  const Index k2 = e2.cols();
  if (k1 + k2 == 0 || e1.rows() == 0) return 0.0;
  Matrix stacked(e1.rows(), k1 + k2);
  stacked << e1, e2;
  Eigen::HouseholderQR<Matrix> qr(stacked);
  const Index r = std::min(e1.rows(), k1 + k2);
  const Matrix upper = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const Matrix diff = upper.leftCols(k1) * upper.leftCols(k1).transpose() -
                      upper.rightCols(k2) * upper.rightCols(k2).transpose();
  return diff.norm();
}

double orthonormality_error(const Matrix& x) {
  return (x.transpose() * x - Matrix::Identity(x.cols(), x.cols())).norm();
}

Matrix orthonormal_complement(const Matrix& x) {
  const Index n = x.rows();
  const Index k = x.cols();
  if (k > n) throw std::invalid_argument("more columns than rows");
  Eigen::HouseholderQR<Matrix> qr(x);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - k);
}

PrincipalAngles principal_angles(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows()) throw std::invalid_argument("principal_angles: row counts differ");
  require_orthonormal(x, "X");
  require_orthonormal(y, "Y");
  Eigen::JacobiSVD<Matrix> svd(x.transpose() * y);
  PrincipalAngles out{svd.singularValues().cwiseMax(0.0).cwiseMin(1.0)};
  return out;
}

Matrix random_orthonormal(Index n, Index k, std::uint64_t seed) {
  if (k > n || k < 0) throw std::invalid_argument("random_orthonormal needs 0 <= k <= n");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix g(n, k);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  // Positive diag(R) makes the QR unique and the result Haar distributed.
  for (Index j = 0; j < k; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

ProcrustesResult procrustes_align(const Matrix& e1, const Matrix& e2) {
  if (e1.rows() != e2.rows() || e1.cols() != e2.cols()) {
    throw std::invalid_argument("procrustes_align: shapes differ");
  }
  Eigen::JacobiSVD<Matrix> svd(e1.transpose() * e2, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ProcrustesResult out;
  out.rotation = svd.matrixU() * svd.matrixV().transpose();
  out.residual = (e1 * out.rotation - e2).norm();
  return out;
}

}  // namespace pipdim
