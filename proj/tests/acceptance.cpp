// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "oracles.hpp"
#include "pipdim/estimate.hpp"
#include "pipdim/io.hpp"
#include "pipdim/linalg.hpp"
#include "pipdim/montecarlo.hpp"
#include "pipdim/select.hpp"
#include "pipdim/theory.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace pipdim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

Matrix power_law_signal(Index n, Index d, double scale, double exponent, std::uint64_t seed,
                        Vector* lambda_out = nullptr) {
  Vector lam(d);
  for (Index i = 0; i < d; ++i) lam(i) = scale * std::pow(static_cast<double>(i + 1), -exponent);
  if (lambda_out) *lambda_out = lam;
  return random_orthonormal(n, d, seed) * lam.asDiagonal() *
         random_orthonormal(n, d, seed + 1).transpose();
}

// 1. Closed form of the alpha = 0 loss against the direct PIP distance.
Outcome exactness() {
  const Index n = 50, d = 20;
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Matrix m = power_law_signal(n, d, 10.0, 1.0, 4 * t);
    const Factorization clean(m);
    const Factorization noisy(m + oracle::gaussian(n, n, 4 * t + 2, 0.3));
    const Matrix e = clean.left().leftCols(d);
    for (Index k = 1; k <= d; ++k) {
      const Matrix e_hat = noisy.left().leftCols(k);
      worst = std::max(worst, std::abs(exact_loss_alpha0(e, e_hat) - pip_distance(e, e_hat)));
    }
  }
  return {worst <= 1e-9, fmt("max |closed form - direct| = %.3g over 20000 (trial, k)", worst)};
}

// 2. Projection distance and principal angle identities.
Outcome identities() {
  const Index n = 50, k = 10;
  double worst_frob = 0.0, worst_sine = 0.0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Matrix x = random_orthonormal(n, n, 2 * t);
    const Matrix y = random_orthonormal(n, n, 2 * t + 1);
    const Matrix x0 = x.leftCols(k), y0 = y.leftCols(k), y1 = y.rightCols(n - k);
    const double lhs = (x0 * x0.transpose() - y0 * y0.transpose()).norm();
    const double cross = (x0.transpose() * y1).norm();
    worst_frob = std::max(worst_frob, std::abs(lhs - std::sqrt(2.0) * cross));

    const Vector cosines = principal_angles(x0, y0).cosines;
    double sine_sq = 0.0;
    for (Index i = 0; i < k; ++i) sine_sq += 1.0 - cosines(i) * cosines(i);
    worst_sine = std::max(worst_sine, std::abs(std::sqrt(sine_sq) - cross));
  }
  return {worst_frob <= 1e-9 && worst_sine <= 1e-9,
          fmt("max deviation: frobenius %.3g, sines %.3g", worst_frob, worst_sine)};
}

// 3. The telescoping bound dominates the realized loss.
Outcome dominance() {
  const Index n = 50, d = 20;
  const double sigma = 0.01;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> exponent(0.5, 2.0);
  std::uniform_real_distribution<double> scale(1.0, 10.0);
  double worst = std::numeric_limits<double>::infinity();
  long long cases = 0, violations = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Matrix m = power_law_signal(n, d, scale(rng), exponent(rng), 3 * t + 10);
    const Matrix noisy = m + oracle::gaussian(n, n, 3 * t + 12, sigma);
    const Factorization fm(m), fn(noisy);
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const std::vector<double> bound = telescoping_sweep(m, noisy, alpha);
      const Matrix oracle_embedding = fm.embedding(alpha, d).values;
      for (Index k = 1; k <= d; ++k) {
        const double loss = pip_distance(oracle_embedding, fn.embedding(alpha, k).values);
        const double slack = bound[k - 1] - loss;
        worst = std::min(worst, slack);
        if (slack < -1e-9) ++violations;
        ++cases;
      }
    }
  }
  return {violations == 0,
          fmt("%.0f cases, %.0f violations, worst slack %.3g", static_cast<double>(cases),
              static_cast<double>(violations), worst)};
}

Spectrum harmonic_spectrum() {
  std::vector<double> v(50);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 10.0 / static_cast<double>(i + 1);
  return Spectrum(v, 200);
}

Index argmin_k(const PipCurve& c) {
  const auto it = std::min_element(c.losses.begin(), c.losses.end());
  return c.k_values[static_cast<std::size_t>(it - c.losses.begin())];
}

// 4. Spectrum-only bound against Monte-Carlo means.
Outcome bound_vs_mc() {
  const Spectrum s = harmonic_spectrum();
  const PipCurve bound = bound_curve(s, 0.01, 0.5);
  const PipCurve mc = mc_curve(s, 0.01, 0.5, 20, 0);
  std::size_t covered = 0, compared = 0;
  for (std::size_t i = 0; i < mc.k_values.size(); ++i) {
    const auto it = std::find(bound.k_values.begin(), bound.k_values.end(), mc.k_values[i]);
    if (it == bound.k_values.end()) continue;
    ++compared;
    if (bound.losses[static_cast<std::size_t>(it - bound.k_values.begin())] >= mc.losses[i]) ++covered;
  }
  const double frac = compared ? static_cast<double>(covered) / static_cast<double>(compared) : 0.0;
  const Index kb = argmin_k(bound), km = argmin_k(mc);
  const double rel = std::abs(static_cast<double>(kb - km)) / static_cast<double>(km);
  return {compared == 50 && frac >= 0.95 && rel <= 0.2,
          fmt("bound >= mean at %.1f%% of k; argmin bound %.0f vs MC %.0f", 100.0 * frac,
              static_cast<double>(kb), static_cast<double>(km))};
}

// 5. Subspace perturbation term against the classical sin-theta value.
Outcome tightness() {
  const Spectrum s = harmonic_spectrum();
  int valid = 0, strict = 0, worse = 0;
  double best_ratio = 1.0;
  for (Index k = 1; k < s.ambient(); ++k) {
    if (!(s(k) > s(k + 1))) continue;
    ++valid;
    const double term = subspace_perturbation_term(s, 0.01, k);
    const double classic = sin_theta_bound(s, 0.01, k);
    if (term > classic) ++worse;
    if (term < classic) ++strict;
    best_ratio = std::min(best_ratio, term / classic);
  }
  return {valid == 50 && worse == 0 && strict == valid,
          fmt("%.0f valid k, strictly tighter at %.0f, smallest ratio %.3g",
              static_cast<double>(valid), static_cast<double>(strict), best_ratio)};
}

// 6. Noise level and rank recovery on simulated data.
Outcome estimator_recovery() {
  const Index n = 1000;
  const double sigma = 0.35;
  const Matrix signal = power_law_signal(n, 5, 50.0, 0.5, 70);
  double worst_rel = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix h1 = signal + oracle::gaussian(n, n, 2 * seed + 100, std::sqrt(2.0) * sigma);
    const Matrix h2 = signal + oracle::gaussian(n, n, 2 * seed + 101, std::sqrt(2.0) * sigma);
    worst_rel = std::max(worst_rel, std::abs(estimate_noise(h1, h2).sigma - sigma) / sigma);
  }

  // SNR lambda_d / (sigma sqrt n) = 2 at the weakest direction.
  const Index rn = 400, d = 20;
  const double rs = 0.05;
  const double floor = 2.0 * rs * std::sqrt(static_cast<double>(rn));
  Vector lam(d);
  for (Index i = 0; i < d; ++i) lam(i) = floor * (1.0 + static_cast<double>(d - 1 - i) / 4.0);
  Index lo = d, hi = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix m = random_orthonormal(rn, d, 3 * seed + 200) * lam.asDiagonal() *
                         random_orthonormal(rn, d, 3 * seed + 201).transpose() +
                     oracle::gaussian(rn, rn, 3 * seed + 202, rs);
    const Index r = estimate_spectrum(m, rs).rank();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const bool ranks_ok = 4 * lo >= 3 * d && 4 * hi <= 5 * d;
  return {worst_rel <= 0.05 && ranks_ok,
          fmt("worst sigma error %.2f%%, USVT rank in [%.0f, %.0f] for d = 20", 100.0 * worst_rel,
              static_cast<double>(lo), static_cast<double>(hi))};
}

// 7. Invariance of pip_distance and nsr under right rotations.
Outcome invariance() {
  double worst_pip = 0.0, worst_nsr = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Index rows = 5 + static_cast<Index>((t * 37) % 200);
    const Index cols = 1 + static_cast<Index>((t * 13) % std::min<Index>(rows, 60));
    const Matrix e = oracle::gaussian(rows, cols, t + 500);
    const Matrix u = random_orthonormal(cols, cols, t + 900);
    const Matrix eu = e * u;
    worst_pip = std::max(worst_pip, pip_distance(e, eu));
    worst_nsr = std::max(worst_nsr, nsr(e, eu));
  }
  return {worst_pip <= 1e-9 && worst_nsr <= 1e-9,
          fmt("max pip_distance %.3g, max nsr %.3g", worst_pip, worst_nsr)};
}

// 8. Bias falls and both variance parts grow with k in every sweep.
Outcome monotone() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long long sweeps = 0, breaks = 0;
  for (int t = 0; t < 200; ++t) {
    const Index d = 2 + t % 60;
    std::vector<double> v(static_cast<std::size_t>(d));
    for (auto& x : v) x = 0.01 + 20.0 * unif(rng);
    std::sort(v.begin(), v.end(), std::greater<>());
    const Spectrum s(v, d + t % 150);
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const BoundSweep sweep = expected_bound_sweep(s, 0.05 * unif(rng), alpha, GapPolicy{true});
      ++sweeps;
      for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
        const auto& a = sweep.rows[i - 1];
        const auto& b = sweep.rows[i];
        if (!(b.bias <= a.bias) || !(b.magnitude_variance >= a.magnitude_variance) ||
            !(b.direction_variance >= a.direction_variance)) {
          ++breaks;
        }
      }
    }
  }
  return {breaks == 0, fmt("%.0f sweeps, %.0f non-monotone steps", static_cast<double>(sweeps),
                           static_cast<double>(breaks))};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args, const fs::path& stdout_path) {
  const std::string cmd = std::string(PIPDIM_CLI_PATH) + " " + args + " > " +
                          stdout_path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 10. Every CLI command is byte-reproducible.
Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("pipdim_accept_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir / "run1");
  fs::create_directories(dir / "run2");

  // Zipf-like synthetic corpus.
  {
    std::mt19937_64 rng(10);
    std::vector<double> weights(300);
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
    std::discrete_distribution<int> word(weights.begin(), weights.end());
    std::ofstream out(dir / "corpus.txt");
    for (int i = 0; i < 40000; ++i) out << 'w' << word(rng) << ((i % 20 == 19) ? '\n' : ' ');
  }
  for (Index k : {2, 4, 8}) {
    const Matrix e1 = oracle::gaussian(60, k, static_cast<std::uint64_t>(k));
    const Matrix e2 = e1 + oracle::gaussian(60, k, static_cast<std::uint64_t>(k) + 50, 0.1);
    io::write_matrix(dir / "run1" / (std::to_string(k) + ".mat"), e1);
    io::write_matrix(dir / "run2" / (std::to_string(k) + ".mat"), e2);
  }

  const std::string d = dir.string();
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"cooc --corpus " + d + "/corpus.txt --vocab-size 200 --window 5 --out @/c.mat",
       {"c.mat", "c.mat.vocab"}},
      {"estimate --corpus " + d + "/corpus.txt --vocab-size 200 --window 5 --chunk-size 500 "
       "--seed 3 --out @/est.json",
       {"est.json"}},
      {"select --spectrum " + d + "/rep0/est.json --alpha 0.5 --out @/bound.json", {"bound.json"}},
      {"select --spectrum 10,5,3,2,1,0.5 --ambient 40 --sigma 0.2 --method montecarlo "
       "--samples 6 --seed 11 --out @/mc.json",
       {"mc.json"}},
      {"pipdist --e1 " + d + "/run1/4.mat --e2 " + d + "/run2/4.mat", {}},
      {"stability --dir1 " + d + "/run1 --dir2 " + d + "/run2 --out @/stab.csv", {"stab.csv"}},
  };

  int compared = 0;
  for (const auto& [pattern, files] : commands) {
    std::vector<std::string> outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out_dir = dir / ("rep" + std::to_string(rep));
      fs::create_directories(out_dir);
      std::string args = pattern;
      for (std::size_t pos; (pos = args.find('@')) != std::string::npos;) {
        args.replace(pos, 1, out_dir.string());
      }
      const int code = run(args, out_dir / "stdout.txt");
      if (code != 0) {
        return {false, "command failed with exit code " + std::to_string(code) + ": " + args};
      }
      outputs[rep].push_back(slurp(out_dir / "stdout.txt"));
      for (const auto& f : files) outputs[rep].push_back(slurp(out_dir / f));
    }
    for (std::size_t i = 0; i < outputs[0].size(); ++i) {
      if (outputs[0][i] != outputs[1][i]) {
        return {false, "outputs differ for: " + pattern};
      }
      ++compared;
    }
  }
  fs::remove_all(dir);
  return {true, std::to_string(commands.size()) + " commands, " + std::to_string(compared) +
                    " outputs byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 alpha=0 closed form matches PIP distance", exactness},
      {"AC2 projection distance and principal angle identities", identities},
      {"AC3 telescoping bound dominates realized loss", dominance},
      {"AC4 expected bound vs Monte-Carlo", bound_vs_mc},
      {"AC5 subspace term tighter than sin-theta", tightness},
      {"AC6 noise and rank recovery", estimator_recovery},
      {"AC7 unitary invariance of pip_distance and nsr", invariance},
      {"AC8 monotone bound breakdown", monotone},
      {"AC10 CLI byte determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
