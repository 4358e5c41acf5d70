#include "pipdim/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pipdim {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
}

void check_sigma(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
}

// (lambda_r - lambda_s)^-2 for r < s, optionally with the gap floored.
struct GapKernel {
  double floor = 0.0;
  double operator()(double hi, double lo) const {
    const double gap = std::max(hi - lo, floor);
    return 1.0 / (gap * gap);
  }
};

GapKernel make_kernel(const Spectrum& s, const GapPolicy& policy) {
  return GapKernel{policy.clamp ? policy.relative_floor * s(1) : 0.0};
}

// First i in [1, last] with lambda_i == lambda_{i+1}, or 0 if none.
Index first_tie(const Spectrum& s, Index last) {
  for (Index i = 1; i <= last; ++i) {
    if (!(s(i) > s(i + 1))) return i;
  }
  return 0;
}

// The gap sum over the cut at i, sum_{r<=i<s<=n} (lambda_r - lambda_s)^-2,
// evaluated directly.
long double cut_gap_sum(const Spectrum& s, Index i, const GapKernel& g) {
  const Index d = s.rank();
  const Index n = s.ambient();
  long double total = 0.0L;
  for (Index r = 1; r <= i; ++r) {
    for (Index t = i + 1; t <= std::min(d, n); ++t) total += g(s(r), s(t));
    if (n > std::max(i, d)) total += static_cast<long double>(n - std::max(i, d)) * g(s(r), 0.0);
  }
  return total;
}

}  // namespace

double exact_loss_alpha0(const Matrix& e, const Matrix& e_hat) {
  if (e.rows() != e_hat.rows()) throw std::invalid_argument("embeddings differ in row count");
  if (orthonormality_error(e) > kOrthonormalTolerance ||
      orthonormality_error(e_hat) > kOrthonormalTolerance) {
    throw std::invalid_argument("exact_loss_alpha0 needs orthonormal columns");
  }
  const Index d = e.cols();
  const Index k = e_hat.cols();
  if (k > d) throw std::invalid_argument("exact_loss_alpha0 needs k <= d");
  const Matrix perp = orthonormal_complement(e);
  const double cross = (e_hat.transpose() * perp).squaredNorm();
  return std::sqrt(static_cast<double>(d - k) + 2.0 * cross);
}

std::vector<double> telescoping_sweep(const Matrix& m, const Matrix& m_noisy, double alpha) {
  check_alpha(alpha);
  if (m.rows() != m_noisy.rows() || m.cols() != m_noisy.cols()) {
    throw std::invalid_argument("telescoping bound needs matrices of equal shape");
  }
  const Factorization clean(m, /*full_left=*/true);
  const Factorization noisy(m_noisy);
  const Index d = clean.numerical_rank();
  const Index rows = m.rows();
  const Vector& lam = clean.singular_values();
  const Vector& lam_t = noisy.singular_values();
  auto pow2a = [&](double v) { return spectral_power(v, 2.0 * alpha); };

  // cross(i, j) = (U~_{.,i}^T U_{.,j})^2; the direction factor at i is the
  // sum over rows < i and columns >= i (0-based).
  const Matrix cross = (noisy.left().leftCols(d).transpose() * clean.left()).array().square();
  std::vector<double> off(static_cast<std::size_t>(d + 1), 0.0);
  for (Index i = 1; i <= d; ++i) {
    off[static_cast<std::size_t>(i)] = cross.topRows(i).rightCols(rows - i).sum();
  }

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Index k = 1; k <= d; ++k) {
    long double bias = 0.0L;
    for (Index i = k; i < d; ++i) bias += std::pow(lam(i), 4.0 * alpha);
    long double magnitude = 0.0L;
    for (Index i = 0; i < k; ++i) {
      const double diff = pow2a(lam(i)) - pow2a(lam_t(i));
      magnitude += static_cast<long double>(diff) * diff;
    }
    long double direction = 0.0L;
    for (Index i = 1; i <= k; ++i) {
      // The telescoped k x k diagonal ends at zero, so the last step uses lambda_k alone.
      const double next = i < k ? pow2a(lam(i)) : 0.0;
      const double step = pow2a(lam(i - 1)) - next;
      direction += static_cast<long double>(step) * std::sqrt(off[static_cast<std::size_t>(i)]);
    }
    out.push_back(static_cast<double>(std::sqrt(bias) + std::sqrt(magnitude) +
                                      kSqrt2 * direction));
  }
  return out;
}

double telescoping_bound(const Matrix& m, const Matrix& m_noisy, double alpha, Index k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const auto sweep = telescoping_sweep(m, m_noisy, alpha);
  if (k > static_cast<Index>(sweep.size())) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the rank " +
                                std::to_string(sweep.size()) + " of the clean matrix");
  }
  return sweep[static_cast<std::size_t>(k - 1)];
}

BoundBreakdown expected_bound(const Spectrum& s, double sigma, double alpha, Index k,
                              const GapPolicy& policy) {
  check_alpha(alpha);
  check_sigma(sigma);
  const Index d = s.rank();
  const Index n = s.ambient();
  if (k < 1 || k > d) {
    throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, rank " +
                                std::to_string(d) + "]");
  }
  const GapKernel g = make_kernel(s, policy);
  BoundBreakdown b;
  b.k = k;

  if (alpha == 0.0) {
    long double gaps = 0.0L;
    for (Index r = 1; r <= k; ++r) gaps += static_cast<long double>(n - d) * g(s(r), 0.0);
    b.bias = std::sqrt(static_cast<double>(d - k));
    b.total = std::sqrt(static_cast<double>(d - k) + 2.0 * sigma * sigma * static_cast<double>(gaps));
    b.direction_variance = b.total - b.bias;
    return b;
  }

  if (sigma > 0.0 && !policy.clamp) {
    if (Index t = first_tie(s, k); t != 0) {
      throw DegenerateGapError(t, "tied singular values lambda_" + std::to_string(t) +
                                      " = lambda_" + std::to_string(t + 1) +
                                      ": the gap sums diverge for k >= " + std::to_string(t));
    }
  }

  long double bias = 0.0L;
  for (Index i = k + 1; i <= d; ++i) bias += std::pow(s(i), 4.0 * alpha);
  long double mag = 0.0L;
  for (Index i = 1; i <= k; ++i) mag += std::pow(s(i), 4.0 * alpha - 2.0);
  long double dir = 0.0L;
  if (sigma > 0.0) {
    for (Index i = 1; i <= k; ++i) {
      const double step = std::pow(s(i), 2.0 * alpha) - std::pow(s(i + 1), 2.0 * alpha);
      dir += static_cast<long double>(step) * std::sqrt(cut_gap_sum(s, i, g));
    }
  }
  b.bias = static_cast<double>(std::sqrt(bias));
  b.magnitude_variance =
      2.0 * std::sqrt(2.0 * static_cast<double>(n)) * alpha * sigma * static_cast<double>(std::sqrt(mag));
  b.direction_variance = kSqrt2 * sigma * static_cast<double>(dir);
  b.total = b.bias + b.magnitude_variance + b.direction_variance;
  return b;
}

BoundSweep expected_bound_sweep(const Spectrum& s, double sigma, double alpha,
                                const GapPolicy& policy) {
  check_alpha(alpha);
  check_sigma(sigma);
  const Index d = s.rank();
  const Index n = s.ambient();
  const GapKernel g = make_kernel(s, policy);
  BoundSweep sweep;
  if (d == 0) {
    sweep.warnings.push_back("spectrum has rank 0; no dimensionality to sweep");
    return sweep;
  }
  sweep.rows.reserve(static_cast<std::size_t>(d));

  if (alpha == 0.0) {
    long double gaps = 0.0L;
    for (Index k = 1; k <= d; ++k) {
      gaps += static_cast<long double>(n - d) * g(s(k), 0.0);
      BoundBreakdown b;
      b.k = k;
      b.bias = std::sqrt(static_cast<double>(d - k));
      b.total = std::sqrt(static_cast<double>(d - k) + 2.0 * sigma * sigma * static_cast<double>(gaps));
      b.direction_variance = b.total - b.bias;
      sweep.rows.push_back(b);
    }
    return sweep;
  }

  Index last = d;
  if (sigma > 0.0 && !policy.clamp) {
    if (Index t = first_tie(s, d); t != 0) {
      last = t - 1;
      for (Index k = t; k <= d; ++k) sweep.excluded.push_back(k);
      sweep.warnings.push_back("degenerate spectral gap at lambda_" + std::to_string(t) +
                               " = lambda_" + std::to_string(t + 1) + "; k >= " +
                               std::to_string(t) + " excluded (enable gap clamping to keep them)");
    }
  }

  // Suffix sums of lambda^{4 alpha} for the bias term.
  std::vector<long double> tail(static_cast<std::size_t>(d + 2), 0.0L);
  for (Index i = d; i >= 1; --i) {
    tail[static_cast<std::size_t>(i)] = tail[static_cast<std::size_t>(i + 1)] + std::pow(s(i), 4.0 * alpha);
  }

  long double mag = 0.0L;
  long double dir = 0.0L;
  long double cut = 0.0L;  // sum_{r<=i<s<=n} gap(r, s)^-2 over unclamped pairs
  long long floored = 0;   // clamped pairs, each worth floor^-2; counted exactly
  auto move = [&](double hi, double lo, long long times) {
    if (g.floor > 0.0 && hi - lo <= g.floor) {
      floored += times;
    } else {
      cut += static_cast<long double>(times) * g(hi, lo);
    }
  };
  const long double floor_term = g.floor > 0.0 ? 1.0L / (static_cast<long double>(g.floor) * g.floor) : 0.0L;
  const double mag_scale = 2.0 * std::sqrt(2.0 * static_cast<double>(n)) * alpha * sigma;
  for (Index k = 1; k <= last; ++k) {
    mag += std::pow(s(k), 4.0 * alpha - 2.0);
    if (sigma > 0.0) {
      // Moving the cut from k-1 to k: pairs (r, k) leave, pairs (k, t) enter.
      for (Index r = 1; r < k; ++r) move(s(r), s(k), -1);
      for (Index t = k + 1; t <= d; ++t) move(s(k), s(t), 1);
      if (n > d) move(s(k), 0.0, n - d);
      const double step = std::pow(s(k), 2.0 * alpha) - std::pow(s(k + 1), 2.0 * alpha);
      const long double total_cut = std::max(cut, 0.0L) + static_cast<long double>(floored) * floor_term;
      dir += static_cast<long double>(step) * std::sqrt(total_cut);
    }
    BoundBreakdown b;
    b.k = k;
    b.bias = static_cast<double>(std::sqrt(tail[static_cast<std::size_t>(k + 1)]));
    b.magnitude_variance = mag_scale * static_cast<double>(std::sqrt(mag));
    b.direction_variance = kSqrt2 * sigma * static_cast<double>(dir);
    b.total = b.bias + b.magnitude_variance + b.direction_variance;
    sweep.rows.push_back(b);
  }
  return sweep;
}

double subspace_perturbation_term(const Spectrum& s, double sigma, Index k) {
  check_sigma(sigma);
  const Index n = s.ambient();
  if (k < 1 || k >= n) throw std::invalid_argument("k must lie in [1, n - 1]");
  if (!(s(k) > s(k + 1))) {
    throw DegenerateGapError(k, "subspace_perturbation_term needs lambda_k > lambda_{k+1}");
  }
  if (sigma == 0.0) return 0.0;
  long double total = 0.0L;
  const GapKernel g{};
  for (Index i = 1; i <= k; ++i) {
    for (Index j = k + 1; j <= n; ++j) total += g(s(i), s(j));
  }
  return sigma * static_cast<double>(std::sqrt(total));
}

double sin_theta_bound(const Spectrum& s, double sigma, Index k) {
  check_sigma(sigma);
  const Index n = s.ambient();
  if (k < 1 || k >= n) throw std::invalid_argument("k must lie in [1, n - 1]");
  const double gap = s(k) - s(k + 1);
  if (!(gap > 0.0)) throw DegenerateGapError(k, "sin_theta_bound needs a positive gap");
  return sigma * std::sqrt(static_cast<double>(k) * static_cast<double>(n - k)) / gap;
}

bool weyl_check(const Spectrum& truth, const Spectrum& noisy, double noise_2norm) {
  if (truth.ambient() != noisy.ambient()) {
    throw std::invalid_argument("weyl_check: ambient dimensions differ");
  }
  const double scale = std::max({1.0, truth(1), noisy(1), noise_2norm});
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  for (Index i = 1; i <= truth.ambient(); ++i) {
    if (std::abs(truth(i) - noisy(i)) > noise_2norm + slack) return false;
  }
  return true;
}

}  // namespace pipdim
