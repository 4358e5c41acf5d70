#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pipdim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Raised when a computation is mathematically undefined for its input
/// (all-zero count matrices, tied singular values across a cut, zero PIP norms).
class NumericalDegeneracy : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Tied singular values at the cut k: the gap terms (lambda_r - lambda_s)^-2 diverge.
class DegenerateGapError : public NumericalDegeneracy {
 public:
  DegenerateGapError(Index k, const std::string& what)
      : NumericalDegeneracy(what), k_(k) {}
  Index k() const noexcept { return k_; }

 private:
  Index k_;
};

/// Worker count for internal parallel loops. Honors PIP_THREADS when set.
unsigned thread_count();

}  // namespace pipdim
