#pragma once

#include "pipdim/estimate.hpp"
#include "pipdim/select.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace pipdim::io {

inline constexpr int kReportVersion = 1;

/// Raised for unreadable or malformed input files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix text format: "rows cols" header, then one line per row of
/// space-separated values written with 17 significant digits.
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix(std::istream& in);
Matrix read_matrix(const std::filesystem::path& path);

void write_vocab(const std::filesystem::path& path, const Vocab& vocab);

std::string format_double(double v);

nlohmann::json curve_to_json(const PipCurve& curve);
nlohmann::json report_to_json(const SelectionReport& report);

/// Spectrum interchange: {"spectrum": [...], "ambient": n, "sigma": s, ...}.
struct SpectrumRecord {
  Spectrum spectrum;
  std::optional<double> sigma;
};

SpectrumRecord spectrum_from_json(const nlohmann::json& j);
SpectrumRecord read_spectrum(const std::filesystem::path& path);

/// Writes JSON with a trailing newline, 2-space indent.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace pipdim::io
