#pragma once

#include "pipdim/spectrum.hpp"
#include "pipdim/transforms.hpp"

#include <optional>
#include <string>

namespace pipdim {

/// n x k embedding U_{.,1:k} diag(lambda_1^alpha, ..., lambda_k^alpha).
struct Embedding {
  Matrix values;
  double alpha = 0.0;
  std::optional<Spectrum> source_spectrum;
  std::string provenance;

  Index rows() const noexcept { return values.rows(); }
  Index dims() const noexcept { return values.cols(); }
};

/// Thin SVD of a matrix computed once; every truncation slices these factors.
///
/// Singular values are descending. Each left singular vector is signed so its
/// entry of largest magnitude is positive (the matching right vector is
/// flipped along with it). The object is immutable after construction and
/// safe to share between threads.
class Factorization {
 public:
  explicit Factorization(const Matrix& m, bool full_left = false);

  const Matrix& left() const noexcept { return left_; }
  const Vector& singular_values() const noexcept { return singular_values_; }
  const Matrix& right() const noexcept { return right_; }

  /// Number of singular values above max(m, n) * eps * sigma_1.
  Index numerical_rank() const noexcept;

  /// 0^0 is taken as 1, so alpha = 0 always yields orthonormal columns.
  Embedding embedding(double alpha, Index k) const;
  Spectrum spectrum() const;

 private:
  Matrix left_;
  Vector singular_values_;
  Matrix right_;
  Index max_dim_ = 0;
};

/// f_{alpha,k}(M). Throws std::invalid_argument when k is outside
/// [1, min(m, n)] or alpha is outside [0, 1].
Embedding factorize(const SignalMatrix& m, double alpha, Index k);
Embedding factorize(const Matrix& m, double alpha, Index k);

/// lambda^alpha with 0^0 = 1.
double spectral_power(double lambda, double alpha) noexcept;

Matrix pip_matrix(const Matrix& e);
inline Matrix pip_matrix(const Embedding& e) { return pip_matrix(e.values); }

/// ||E1 E1^T - E2 E2^T||_F, evaluated through a QR of [E1, E2] so that the
/// n x n PIP matrices are never formed and near-zero distances keep full
/// absolute accuracy. Column counts may differ; row counts may not.
double pip_distance(const Matrix& e1, const Matrix& e2);
inline double pip_distance(const Embedding& e1, const Embedding& e2) {
  return pip_distance(e1.values, e2.values);
}

/// Frobenius distance of X^T X from the identity.
double orthonormality_error(const Matrix& x);

/// Columns spanning the orthogonal complement of span(x) (x orthonormal).
Matrix orthonormal_complement(const Matrix& x);

struct PrincipalAngles {
  Vector cosines;  // descending, in [0, 1]
};

/// Cosines of the principal angles between span(x) and span(y): the singular
/// values of X^T Y, clamped to [0, 1]. Both inputs must be orthonormal to 1e-8.
PrincipalAngles principal_angles(const Matrix& x, const Matrix& y);

/// Haar-distributed n x k matrix with orthonormal columns: Householder QR of a
/// seeded standard Gaussian matrix with R's diagonal forced positive.
Matrix random_orthonormal(Index n, Index k, std::uint64_t seed);

struct ProcrustesResult {
  Matrix rotation;  // k x k orthogonal T minimizing ||E1 T - E2||_F
  double residual = 0.0;
};

ProcrustesResult procrustes_align(const Matrix& e1, const Matrix& e2);

inline constexpr double kOrthonormalTolerance = 1e-8;

}  // namespace pipdim
