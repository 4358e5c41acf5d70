#include "pipdim/transforms.hpp"

#include <cmath>

namespace pipdim {

std::string to_string(Transform t) {
  switch (t) {
    case Transform::pmi: return "pmi";
    case Transform::ppmi: return "ppmi";
    case Transform::sppmi: return "sppmi";
    case Transform::log_count: return "log_count";
    case Transform::tf: return "tf";
    case Transform::tf_idf: return "tf_idf";
    case Transform::raw: return "raw";
  }
  return "raw";
}

Transform parse_transform(std::string_view name) {
  for (auto t : {Transform::pmi, Transform::ppmi, Transform::sppmi, Transform::log_count,
                 Transform::tf, Transform::tf_idf, Transform::raw}) {
    if (name == to_string(t)) return t;
  }
  if (name == "log-count" || name == "logcount") return Transform::log_count;
  if (name == "tf-idf" || name == "tfidf") return Transform::tf_idf;
  throw std::invalid_argument("unknown transform: " + std::string(name));
}

namespace {

// PMI with the zero-count convention, optionally shifted by log(shift) and
// clipped at zero.
Matrix pmi_values(const Matrix& c, double shift_log, bool clip) {
  const double total = c.sum();
  const Vector row = c.rowwise().sum();
  const Vector col = c.colwise().sum().transpose();
  Matrix out(c.rows(), c.cols());
  for (Index j = 0; j < c.cols(); ++j) {
    for (Index i = 0; i < c.rows(); ++i) {
      const double joint = c(i, j);
      if (joint <= 0.0) {
        out(i, j) = 0.0;
        continue;
      }
      double v = std::log(joint * total / (row(i) * col(j))) - shift_log;
      out(i, j) = clip && v < 0.0 ? 0.0 : v;
    }
  }
  return out;
}

}  // namespace

SignalMatrix transform(const CountMatrix& counts, Transform kind,
                       const std::map<std::string, double>& params) {
  const Matrix& c = counts.counts;
  if ((c.array() < 0.0).any()) throw std::invalid_argument("counts must be nonnegative");
  if (c.size() == 0 || (c.array() == 0.0).all()) {
    throw NumericalDegeneracy("all-zero count matrix: probabilities are undefined");
  }
  if ((kind == Transform::tf || kind == Transform::tf_idf) &&
      counts.kind != CountKind::term_document) {
    throw std::invalid_argument(to_string(kind) + " needs term-document counts");
  }

  SignalMatrix out;
  out.transform = kind;
  switch (kind) {
    case Transform::pmi:
      out.values = pmi_values(c, 0.0, false);
      break;
    case Transform::ppmi:
      out.values = pmi_values(c, 0.0, true);
      break;
    case Transform::sppmi: {
      auto it = params.find("shift");
      if (it == params.end()) throw std::invalid_argument("sppmi needs params[\"shift\"] (l >= 1)");
      if (!(it->second >= 1.0)) throw std::invalid_argument("sppmi shift l must be >= 1");
      out.params["shift"] = it->second;
      out.values = pmi_values(c, std::log(it->second), true);
      break;
    }
    case Transform::log_count:
      out.values = c.array().log1p().matrix();
      break;
    case Transform::tf:
      out.values = c;
      break;
    case Transform::tf_idf: {
      const double docs = static_cast<double>(c.rows());
      Vector idf(c.cols());
      for (Index j = 0; j < c.cols(); ++j) {
        const double df = static_cast<double>((c.col(j).array() > 0.0).count());
        idf(j) = std::log(docs / (1.0 + df));
      }
      out.values = c * idf.asDiagonal();
      break;
    }
    case Transform::raw:
      out.values = c;
      break;
  }
  out.provenance = to_string(kind) + " of " + std::to_string(c.rows()) + "x" +
                   std::to_string(c.cols()) + " counts";
  return out;
}

SignalMatrix symmetrize(const SignalMatrix& m, SymmetrizeMode mode) {
  SignalMatrix out;
  out.transform = m.transform;
  out.params = m.params;
  const Matrix& v = m.values;
  if (mode == SymmetrizeMode::gram) {
    out.values = v.transpose() * v;
    // Round-off can leave the product a few ulps from symmetric.
    out.values = (0.5 * (out.values + out.values.transpose())).eval();
    out.provenance = "gram(" + m.provenance + ")";
  } else {
    const Index rows = v.rows();
    const Index cols = v.cols();
    out.values = Matrix::Zero(rows + cols, rows + cols);
    out.values.topRightCorner(rows, cols) = v;
    out.values.bottomLeftCorner(cols, rows) = v.transpose();
    out.provenance = "jordan_wielandt(" + m.provenance + ")";
  }
  return out;
}

}  // namespace pipdim
