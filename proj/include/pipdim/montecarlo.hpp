#pragma once

#include "pipdim/spectrum.hpp"
#include "pipdim/theory.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pipdim {

enum class CurveMethod { expected_bound, monte_carlo, empirical };

std::string to_string(CurveMethod m);
CurveMethod parse_curve_method(std::string_view name);

/// PIP loss as a function of dimensionality.
struct PipCurve {
  double alpha = 0.0;
  double sigma = 0.0;
  Index ambient = 0;
  std::vector<Index> k_values;  // strictly increasing, all <= rank
  std::vector<double> losses;
  std::vector<double> stddevs;  // zero for analytic curves
  Index samples = 0;
  CurveMethod method = CurveMethod::expected_bound;
  std::vector<std::string> warnings;
};

/// Clean frame and noisy observation of one synthetic instance.
struct SyntheticInstance {
  Matrix left;   // n x d orthonormal U of the clean signal
  Vector lambda; // clean singular values, length d
  Matrix noisy;  // M + Z
};

SyntheticInstance make_instance(const Spectrum& spectrum, double sigma, std::uint64_t seed,
                                bool symmetric = false);

/// PIP loss between U diag(lambda^alpha) and every truncation k = 1..d of the
/// noisy factorization, from one set of cached factors in O(n d^2 + d^3).
std::vector<double> pip_loss_sweep(const Matrix& left, const Vector& lambda, double alpha,
                                   const Factorization& noisy);

/// One synthetic instance: M = U diag(lambda) V^T with random orthonormal
/// frames (V = U when symmetric), noisy copy M + Z with iid N(0, sigma^2)
/// entries (symmetric mode uses (Z + Z^T)/sqrt2), a single SVD of the noisy
/// matrix, and the PIP loss between f_{alpha,d}(M) and f_{alpha,k}(M + Z)
/// for k = 1..d. Entry k-1 of the result is the loss at k.
std::vector<double> simulate_instance(const Spectrum& spectrum, double sigma, double alpha,
                                      std::uint64_t seed, bool symmetric = false);

/// Per-k mean and sample standard deviation over seeds base_seed ..
/// base_seed + samples - 1. Instances run on thread_count() workers; the
/// aggregation order is fixed, so results do not depend on scheduling.
PipCurve mc_curve(const Spectrum& spectrum, double sigma, double alpha, Index samples,
                  std::uint64_t base_seed, bool symmetric = false);

/// Curve of expected_bound totals. Degenerate k are left out and noted in warnings.
PipCurve bound_curve(const Spectrum& spectrum, double sigma, double alpha,
                     const GapPolicy& policy = {});

}  // namespace pipdim
