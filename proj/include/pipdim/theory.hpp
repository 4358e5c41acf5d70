#pragma once

#include "pipdim/linalg.hpp"
#include "pipdim/spectrum.hpp"

#include <string>
#include <vector>

namespace pipdim {

/// Upper bound on the expected PIP loss at one dimensionality, split into
/// its bias and two variance parts. total == bias + magnitude + direction.
struct BoundBreakdown {
  Index k = 0;
  double bias = 0.0;
  double magnitude_variance = 0.0;
  double direction_variance = 0.0;
  double total = 0.0;
};

/// How tied singular values across a cut are treated in the gap sums.
struct GapPolicy {
  bool clamp = false;
  double relative_floor = 1e-8;  // gap floor is relative_floor * lambda_1
};

/// Exact alpha = 0 loss: sqrt(d - k + 2 ||E_hat^T E_perp||_F^2) for
/// orthonormal E (n x d) and E_hat (n x k), k <= d.
double exact_loss_alpha0(const Matrix& e, const Matrix& e_hat);

/// Telescoping bound on ||PIP(f_{alpha,d}(M)) - PIP(f_{alpha,k}(M_noisy))||
/// from both SVDs: bias term, magnitude term from the empirical singular
/// values, and the direction term built from ||U~_{.,1:i}^T U_{.,i+1:n}||_F.
/// d is the numerical rank of M; throws std::invalid_argument when k > d.
double telescoping_bound(const Matrix& m, const Matrix& m_noisy, double alpha, Index k);

/// The same bound for every k = 1..d, sharing one SVD per matrix.
std::vector<double> telescoping_sweep(const Matrix& m, const Matrix& m_noisy, double alpha);

/// Expected-loss bound from the spectrum and noise level alone.
///
/// alpha = 0: sqrt(d - k + 2 sigma^2 sum_{r<=k, s>d} (lambda_r - lambda_s)^-2),
/// reported as bias sqrt(d - k) plus the remainder as direction variance.
/// alpha > 0: bias sqrt(sum_{i>k} lambda_i^{4 alpha}), magnitude variance
/// 2 sqrt(2n) alpha sigma sqrt(sum_{i<=k} lambda_i^{4 alpha - 2}) and direction
/// variance sqrt2 sum_{i<=k} (lambda_i^{2 alpha} - lambda_{i+1}^{2 alpha})
/// sigma sqrt(sum_{r<=i<s<=n} (lambda_r - lambda_s)^-2).
///
/// Throws DegenerateGapError when lambda_i == lambda_{i+1} for some i <= k
/// (alpha > 0) unless the policy clamps gaps.
BoundBreakdown expected_bound(const Spectrum& spectrum, double sigma, double alpha, Index k,
                              const GapPolicy& policy = {});

struct BoundSweep {
  std::vector<BoundBreakdown> rows;  // one per valid k, ascending
  std::vector<Index> excluded;       // k values dropped for degenerate gaps
  std::vector<std::string> warnings;
};

/// expected_bound for k = 1..rank in O(rank * ambient) via running gap sums.
BoundSweep expected_bound_sweep(const Spectrum& spectrum, double sigma, double alpha,
                                const GapPolicy& policy = {});

/// sigma sqrt(sum_{i<=k<j<=n} (lambda_i - lambda_j)^-2). Requires lambda_k > lambda_{k+1}.
double subspace_perturbation_term(const Spectrum& spectrum, double sigma, Index k);

/// Classical sin-theta value sigma sqrt(k (n - k)) / (lambda_k - lambda_{k+1}).
double sin_theta_bound(const Spectrum& spectrum, double sigma, Index k);

/// max_i |lambda_i - lambda~_i| <= ||Z||_2 (with a few ulps of slack).
bool weyl_check(const Spectrum& truth, const Spectrum& noisy, double noise_2norm);

}  // namespace pipdim
