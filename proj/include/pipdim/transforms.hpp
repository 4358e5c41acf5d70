#pragma once

#include "pipdim/corpus.hpp"

#include <map>
#include <string>
#include <string_view>

namespace pipdim {

enum class Transform { pmi, ppmi, sppmi, log_count, tf, tf_idf, raw };

std::string to_string(Transform t);
Transform parse_transform(std::string_view name);

/// A real matrix tagged with the transform that produced it.
struct SignalMatrix {
  Matrix values;
  Transform transform = Transform::raw;
  std::map<std::string, double> params;
  std::string provenance;

  Index rows() const noexcept { return values.rows(); }
  Index cols() const noexcept { return values.cols(); }
};

/// Count-to-signal transforms.
///
/// PMI uses maximum-likelihood probabilities taken from the count matrix
/// (joint from the total, marginals from row/column sums); cells with a zero
/// joint count are 0. PPMI clips PMI at 0 and SPPMI clips PMI - log(l) where
/// l = params["shift"] is the negative-sample count. log_count is log(1 + c).
/// TF-IDF weights with log(N_docs / (1 + df)).
///
/// Throws std::invalid_argument for a missing or invalid shift and for
/// tf/tf_idf on co-occurrence counts, NumericalDegeneracy on all-zero counts.
SignalMatrix transform(const CountMatrix& counts, Transform kind,
                       const std::map<std::string, double>& params = {});

enum class SymmetrizeMode { gram, jordan_wielandt };

/// gram: M^T M. jordan_wielandt: [[0, M], [M^T, 0]].
SignalMatrix symmetrize(const SignalMatrix& m, SymmetrizeMode mode);

}  // namespace pipdim
