#include "pipdim/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pipdim {

SelectionReport select_dimension(const PipCurve& curve, std::span<const double> p_levels) {
  if (curve.k_values.empty()) throw std::invalid_argument("select_dimension: empty curve");
  if (curve.k_values.size() != curve.losses.size()) {
    throw std::invalid_argument("select_dimension: k and loss arrays differ in length");
  }
  for (double p : p_levels) {
    if (!(p > 0.0 && p <= 100.0)) throw std::invalid_argument("p levels must lie in (0, 100]");
  }

  SelectionReport rep;
  rep.method = curve.method;
  rep.alpha = curve.alpha;
  rep.sigma = curve.sigma;
  rep.curve = curve;
  rep.warnings = curve.warnings;
  rep.rank_d = curve.k_values.back();

  const auto& L = curve.losses;
  const auto best = std::min_element(L.begin(), L.end());  // first minimum: smallest k
  const auto star = static_cast<std::size_t>(best - L.begin());
  rep.k_star = curve.k_values[star];
  rep.loss_at_k_star = *best;

  if (curve.k_values.front() != 1) {
    rep.warnings.push_back("curve has no k = 1; near-optimality reference uses k = " +
                           std::to_string(curve.k_values.front()));
  }
  const double reference_gap = L.front() - rep.loss_at_k_star;
  if (!(reference_gap > 0.0)) {
    rep.flat = true;
    rep.warnings.push_back("flat curve: L(1) equals the optimum, intervals collapse to k*");
    for (double p : p_levels) rep.intervals[p] = Interval{rep.k_star, rep.k_star, true};
    return rep;
  }

  for (double p : p_levels) {
    const double budget = p / 100.0 * reference_gap;
    std::size_t lo = star;
    std::size_t hi = star;
    std::size_t members = 0;
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (L[i] - rep.loss_at_k_star <= budget) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
        ++members;
      }
    }
    Interval iv{curve.k_values[lo], curve.k_values[hi], members == hi - lo + 1};
    if (!iv.contiguous) {
      rep.warnings.push_back("level set for p = " + std::to_string(p) +
                             " is not contiguous; reporting its hull");
    }
    rep.intervals[p] = iv;
  }
  return rep;
}

double nsr(const Matrix& e1, const Matrix& e2) {
  if (e1.rows() != e2.rows()) throw std::invalid_argument("nsr: row counts differ");
  // ||E E^T||_F = ||E^T E||_F, which avoids forming the n x n matrix.
  const double n1 = (e1.transpose() * e1).norm();
  const double n2 = (e2.transpose() * e2).norm();
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw NumericalDegeneracy("nsr: PIP matrix has zero norm");
  const double dist = pip_distance(e1, e2);
  return dist * dist / (n1 * n2);
}

StabilityMatrix stability_matrix(std::span<const Matrix> run1, std::span<const Matrix> run2) {
  StabilityMatrix out;
  for (const auto& e : run1) out.dims1.push_back(e.cols());
  for (const auto& e : run2) out.dims2.push_back(e.cols());
  out.nsr = Matrix::Constant(static_cast<Index>(run1.size()), static_cast<Index>(run2.size()),
                             std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < run1.size(); ++i) {
    for (std::size_t j = 0; j < run2.size(); ++j) {
      try {
        out.nsr(static_cast<Index>(i), static_cast<Index>(j)) = nsr(run1[i], run2[j]);
      } catch (const std::exception& ex) {
        out.warnings.push_back("cell (" + std::to_string(out.dims1[i]) + ", " +
                               std::to_string(out.dims2[j]) + "): " + ex.what());
      }
    }
  }
  return out;
}

}  // namespace pipdim
