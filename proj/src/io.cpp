#include "pipdim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pipdim::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_matrix(out, m);
  if (!out) throw DataError("write failed: " + path.string());
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("matrix file: missing header");
  std::istringstream header(line);
  long long rows = -1;
  long long cols = -1;
  std::string extra;
  if (!(header >> rows >> cols) || rows < 0 || cols < 0 || (header >> extra)) {
    throw DataError("matrix file: header must be 'rows cols'");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw DataError("matrix file: expected " + std::to_string(rows) + " rows, got " +
                      std::to_string(i));
    }
    const char* p = line.c_str();
    for (Index j = 0; j < cols; ++j) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) {
        throw DataError("matrix file: row " + std::to_string(i + 1) + " has fewer than " +
                        std::to_string(cols) + " values");
      }
      m(i, j) = v;
      p = end;
    }
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (*p != '\0') throw DataError("matrix file: row " + std::to_string(i + 1) + " has extra values");
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw DataError("matrix file: more rows than the header declares");
    }
  }
  return m;
}

Matrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_matrix(in);
}

void write_vocab(const std::filesystem::path& path, const Vocab& vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& tok : vocab.tokens) out << tok << '\n';
}

namespace {

std::string p_key(double p) {
  if (p == std::floor(p)) return std::to_string(static_cast<long long>(p));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

}  // namespace

nlohmann::json curve_to_json(const PipCurve& curve) {
  nlohmann::json j;
  j["k"] = curve.k_values;
  j["loss"] = curve.losses;
  j["stddev"] = curve.stddevs;
  j["method"] = to_string(curve.method);
  j["samples"] = curve.samples;
  j["ambient"] = curve.ambient;
  return j;
}

nlohmann::json report_to_json(const SelectionReport& report) {
  nlohmann::json j;
  j["version"] = kReportVersion;
  j["method"] = to_string(report.method);
  j["alpha"] = report.alpha;
  j["sigma"] = report.sigma;
  j["rank_d"] = report.rank_d;
  j["k_star"] = report.k_star;
  j["loss_at_k_star"] = report.loss_at_k_star;
  nlohmann::json intervals = nlohmann::json::object();
  nlohmann::json contiguous = nlohmann::json::object();
  for (const auto& [p, iv] : report.intervals) {
    intervals[p_key(p)] = {iv.lo, iv.hi};
    contiguous[p_key(p)] = iv.contiguous;
  }
  j["intervals"] = intervals;
  j["intervals_contiguous"] = contiguous;
  j["interval_reference"] = "L(1): loss of the 1-dimensional embedding";
  j["flat"] = report.flat;
  j["curve"] = curve_to_json(report.curve);
  j["warnings"] = report.warnings;
  return j;
}

SpectrumRecord spectrum_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("spectrum") || !j["spectrum"].is_array()) {
    throw DataError("spectrum JSON needs a \"spectrum\" array");
  }
  std::vector<double> values;
  for (const auto& v : j["spectrum"]) {
    if (!v.is_number()) throw DataError("spectrum entries must be numbers");
    values.push_back(v.get<double>());
  }
  Index ambient = -1;
  if (j.contains("ambient")) ambient = j["ambient"].get<Index>();
  SpectrumRecord rec;
  try {
    rec.spectrum = Spectrum(std::move(values), ambient);
  } catch (const std::invalid_argument& ex) {
    throw DataError(std::string("invalid spectrum: ") + ex.what());
  }
  if (j.contains("sigma") && j["sigma"].is_number()) rec.sigma = j["sigma"].get<double>();
  return rec;
}

SpectrumRecord read_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("malformed spectrum JSON in " + path.string() + ": " + ex.what());
  }
  return spectrum_from_json(j);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace pipdim::io
