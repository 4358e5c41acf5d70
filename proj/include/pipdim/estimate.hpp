#pragma once

#include "pipdim/spectrum.hpp"
#include "pipdim/transforms.hpp"

#include <cstdint>
#include <string>

namespace pipdim {

struct NoiseEstimate {
  double sigma = 0.0;
  std::string method = "count_twice";
  std::uint64_t split_seed = 0;
};

/// Count-twice noise estimate from the same transform applied to two disjoint
/// halves of a corpus: ||M1 - M2||_F / (2 sqrt(mn)).
NoiseEstimate estimate_noise(const Matrix& m1, const Matrix& m2);
NoiseEstimate estimate_noise(const SignalMatrix& m1, const SignalMatrix& m2);

/// Universal singular value thresholding of the empirical spectrum:
/// lambda_hat_i = (lambda_tilde_i - 2 sigma sqrt(max(m, n)))_+.
Spectrum estimate_spectrum(const Matrix& noisy, double sigma);
Spectrum estimate_spectrum(const SignalMatrix& noisy, double sigma);

/// The thresholding step alone, for callers that already hold singular values.
Spectrum soft_threshold_spectrum(const Vector& singular_values, double sigma, Index max_dim,
                                 Index ambient);

}  // namespace pipdim
