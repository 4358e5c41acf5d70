#pragma once

#include "pipdim/montecarlo.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace pipdim {

struct Interval {
  Index lo = 0;
  Index hi = 0;
  bool contiguous = true;  // false when the level set has holes; [lo, hi] is its hull
};

struct SelectionReport {
  CurveMethod method = CurveMethod::expected_bound;
  double alpha = 0.0;
  double sigma = 0.0;
  Index rank_d = 0;
  Index k_star = 0;
  double loss_at_k_star = 0.0;
  std::map<double, Interval> intervals;  // keyed by p in percent
  PipCurve curve;
  bool flat = false;
  std::vector<std::string> warnings;
};

/// k* = argmin L(k), smallest k on ties. The p% range of near-optimality is
/// every k with L(k) - L(k*) <= p/100 * (L(1) - L(k*)), L(1) being the loss
/// of the 1-dimensional embedding.
SelectionReport select_dimension(const PipCurve& curve, std::span<const double> p_levels);

/// Relative forward error ||PIP(E1) - PIP(E2)||_F^2 / (||PIP(E1)||_F ||PIP(E2)||_F).
/// Throws NumericalDegeneracy if either PIP matrix is zero.
double nsr(const Matrix& e1, const Matrix& e2);

struct StabilityMatrix {
  std::vector<Index> dims1;
  std::vector<Index> dims2;
  Matrix nsr;  // NaN where the cell could not be computed
  std::vector<std::string> warnings;
};

StabilityMatrix stability_matrix(std::span<const Matrix> run1, std::span<const Matrix> run2);

}  // namespace pipdim
