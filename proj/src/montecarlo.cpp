#include "pipdim/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace pipdim {

std::string to_string(CurveMethod m) {
  switch (m) {
    case CurveMethod::expected_bound: return "expected_bound";
    case CurveMethod::monte_carlo: return "monte_carlo";
    case CurveMethod::empirical: return "empirical";
  }
  return "expected_bound";
}

CurveMethod parse_curve_method(std::string_view name) {
  if (name == "bound" || name == "expected_bound") return CurveMethod::expected_bound;
  if (name == "montecarlo" || name == "monte_carlo") return CurveMethod::monte_carlo;
  if (name == "empirical") return CurveMethod::empirical;
  throw std::invalid_argument("unknown curve method: " + std::string(name));
}

namespace {

// Independent stream per (instance seed, purpose).
std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

SyntheticInstance make_instance(const Spectrum& spectrum, double sigma, std::uint64_t seed,
                                bool symmetric) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  const Index d = spectrum.rank();
  const Index n = spectrum.ambient();
  if (d < 1) throw std::invalid_argument("synthetic instances need a spectrum of rank >= 1");

  SyntheticInstance inst;
  inst.lambda.resize(d);
  for (Index i = 0; i < d; ++i) inst.lambda(i) = spectrum(i + 1);
  inst.left = random_orthonormal(n, d, derive_seed(seed, 1));
  if (symmetric) {
    inst.noisy = inst.left * inst.lambda.asDiagonal() * inst.left.transpose();
  } else {
    inst.noisy = inst.left * inst.lambda.asDiagonal() *
                 random_orthonormal(n, d, derive_seed(seed, 2)).transpose();
  }
  if (sigma > 0.0) {
    std::mt19937_64 rng(derive_seed(seed, 3));
    std::normal_distribution<double> normal(0.0, sigma);
    Matrix z(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) z(i, j) = normal(rng);
    }
    if (symmetric) z = ((z + z.transpose()) / std::sqrt(2.0)).eval();
    inst.noisy += z;
  }
  return inst;
}

std::vector<double> pip_loss_sweep(const Matrix& u, const Vector& lam, double alpha,
                                   const Factorization& noisy) {
  const Index d = lam.size();
  if (u.cols() != d || u.rows() != noisy.left().rows() || noisy.singular_values().size() < d) {
    throw std::invalid_argument("pip_loss_sweep: inconsistent shapes");
  }
  const Matrix u_t = noisy.left().leftCols(d);
  Vector a(d), b(d);
  for (Index i = 0; i < d; ++i) {
    a(i) = spectral_power(lam(i), 2.0 * alpha);
    b(i) = spectral_power(noisy.singular_values()(i), 2.0 * alpha);
  }

  // Split each trained direction into its part inside span(U) and the rest:
  // U~ = U A + W with U^T W = 0. Then, with B_k = diag(b_1..b_k),
  //   loss_k^2 = ||diag(a) - A_k B_k A_k^T||^2 + 2 tr(B H B G) + tr(B G B G)
  // where H = A^T A and G = W^T W, both restricted to the leading k x k block.
  const Matrix A = u.transpose() * u_t;
  const Matrix W = u_t - u * A;
  const Matrix G = W.transpose() * W;
  const Matrix H = A.transpose() * A;

  Matrix inner = a.asDiagonal();
  long double cross = 0.0L;
  long double outer = 0.0L;
  std::vector<double> losses(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k) {
    inner.noalias() -= b(k) * A.col(k) * A.col(k).transpose();
    long double cross_k = static_cast<long double>(b(k)) * b(k) * H(k, k) * G(k, k);
    long double outer_k = static_cast<long double>(b(k)) * b(k) * G(k, k) * G(k, k);
    for (Index l = 0; l < k; ++l) {
      cross_k += 2.0L * b(k) * b(l) * H(k, l) * G(k, l);
      outer_k += 2.0L * b(k) * b(l) * G(k, l) * G(k, l);
    }
    cross += cross_k;
    outer += outer_k;
    const long double sq = static_cast<long double>(inner.squaredNorm()) + 2.0L * cross + outer;
    losses[static_cast<std::size_t>(k)] = static_cast<double>(std::sqrt(std::max(sq, 0.0L)));
  }
  return losses;
}

std::vector<double> simulate_instance(const Spectrum& spectrum, double sigma, double alpha,
                                      std::uint64_t seed, bool symmetric) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  const SyntheticInstance inst = make_instance(spectrum, sigma, seed, symmetric);
  return pip_loss_sweep(inst.left, inst.lambda, alpha, Factorization(inst.noisy));
}

PipCurve mc_curve(const Spectrum& spectrum, double sigma, double alpha, Index samples,
                  std::uint64_t base_seed, bool symmetric) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const Index d = spectrum.rank();
  if (d < 1) throw std::invalid_argument("mc_curve needs a spectrum of rank >= 1");

  std::vector<std::vector<double>> runs(static_cast<std::size_t>(samples));
  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (Index s = next++; s < samples; s = next++) {
      try {
        runs[static_cast<std::size_t>(s)] = simulate_instance(
            spectrum, sigma, alpha, base_seed + static_cast<std::uint64_t>(s), symmetric);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto workers = std::min<Index>(samples, static_cast<Index>(thread_count()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (Index t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  PipCurve curve;
  curve.alpha = alpha;
  curve.sigma = sigma;
  curve.ambient = spectrum.ambient();
  curve.samples = samples;
  curve.method = CurveMethod::monte_carlo;
  for (Index k = 0; k < d; ++k) {
    long double sum = 0.0L;
    for (const auto& run : runs) sum += run[static_cast<std::size_t>(k)];
    const long double mean = sum / static_cast<long double>(samples);
    long double ss = 0.0L;
    for (const auto& run : runs) {
      const long double dev = run[static_cast<std::size_t>(k)] - mean;
      ss += dev * dev;
    }
    curve.k_values.push_back(k + 1);
    curve.losses.push_back(static_cast<double>(mean));
    curve.stddevs.push_back(samples > 1 ? static_cast<double>(std::sqrt(ss / (samples - 1))) : 0.0);
  }
  return curve;
}

PipCurve bound_curve(const Spectrum& spectrum, double sigma, double alpha,
                     const GapPolicy& policy) {
  const BoundSweep sweep = expected_bound_sweep(spectrum, sigma, alpha, policy);
  PipCurve curve;
  curve.alpha = alpha;
  curve.sigma = sigma;
  curve.ambient = spectrum.ambient();
  curve.samples = 0;
  curve.method = CurveMethod::expected_bound;
  curve.warnings = sweep.warnings;
  for (const auto& row : sweep.rows) {
    curve.k_values.push_back(row.k);
    curve.losses.push_back(row.total);
    curve.stddevs.push_back(0.0);
  }
  return curve;
}

}  // namespace pipdim
