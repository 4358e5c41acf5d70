#pragma once

#include "pipdim/common.hpp"

#include <vector>

namespace pipdim {

/// Descending nonnegative singular values of a (clean or estimated) signal
/// matrix living in an ambient dimension n. Values past the stored length are
/// implicitly zero, so lambda_s = 0 for every s > rank.
class Spectrum {
 public:
  Spectrum() = default;

  /// Validates ordering and sign. `ambient` defaults to values.size() and
  /// must not be smaller than it.
  explicit Spectrum(std::vector<double> values, Index ambient = -1);

  const std::vector<double>& values() const noexcept { return values_; }
  Index rank() const noexcept { return rank_; }
  Index ambient() const noexcept { return ambient_; }

  /// 1-based access with zero padding up to the ambient dimension.
  double operator()(Index i) const noexcept {
    return i >= 1 && i <= static_cast<Index>(values_.size()) ? values_[i - 1] : 0.0;
  }

 private:
  std::vector<double> values_;
  Index rank_ = 0;
  Index ambient_ = 0;
};

}  // namespace pipdim
