#include "pipdim/common.hpp"
#include "pipdim/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string_view>
#include <thread>

namespace pipdim {

unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PIP_THREADS")) {
    std::string_view s(env);
    unsigned cap = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && cap > 0) return cap;
  }
  return hw;
}

Spectrum::Spectrum(std::vector<double> values, Index ambient) : values_(std::move(values)) {
  const auto len = static_cast<Index>(values_.size());
  ambient_ = ambient < 0 ? len : ambient;
  if (ambient_ < len) {
    throw std::invalid_argument("spectrum longer than its ambient dimension");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw std::invalid_argument("spectrum values must be finite and nonnegative");
    }
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw std::invalid_argument("spectrum values must be non-increasing");
    }
  }
  rank_ = std::count_if(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

}  // namespace pipdim
