// pipdim: dimensionality selection for matrix-factorization embeddings.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical degeneracy.

#include "pipdim/corpus.hpp"
#include "pipdim/estimate.hpp"
#include "pipdim/io.hpp"
#include "pipdim/montecarlo.hpp"
#include "pipdim/select.hpp"
#include "pipdim/transforms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace pipdim;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kDegenerate = 3 };

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

TokenStream load_corpus(const std::string& path) {
  TokenStream corpus;
  try {
    corpus = read_corpus(path);
  } catch (const std::runtime_error& ex) {
    throw io::DataError(ex.what());
  }
  if (corpus.empty()) throw io::DataError("corpus is empty: " + path);
  return corpus;
}

struct CoocOptions {
  std::string corpus;
  std::size_t vocab_size = 10000;
  int window = 10;
  std::string out;
  std::string vocab_out;
};

int run_cooc(const CoocOptions& o) {
  const TokenStream corpus = load_corpus(o.corpus);
  const Vocab vocab = build_vocab(corpus, o.vocab_size);
  const CountMatrix counts = cooc_count(corpus, vocab, o.window);
  io::write_matrix(o.out, counts.counts);
  io::write_vocab(o.vocab_out.empty() ? o.out + ".vocab" : o.vocab_out, vocab);
  return kOk;
}

struct EstimateOptions {
  std::string corpus;
  std::string transform = "ppmi";
  std::optional<double> shift;
  std::size_t vocab_size = 10000;
  int window = 10;
  std::size_t chunk_size = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

SignalMatrix transformed_counts(std::span<const std::string> tokens, const Vocab& vocab,
                                const EstimateOptions& o, Transform kind) {
  std::map<std::string, double> params;
  if (o.shift) params["shift"] = *o.shift;
  return transform(cooc_count(tokens, vocab, o.window), kind, params);
}

int run_estimate(const EstimateOptions& o) {
  const Transform kind = parse_transform(o.transform);
  if (kind == Transform::tf || kind == Transform::tf_idf) {
    throw std::invalid_argument("estimate works on co-occurrence counts; tf/tf_idf are not available");
  }
  const TokenStream corpus = load_corpus(o.corpus);
  const Vocab vocab = build_vocab(corpus, o.vocab_size);

  NoiseEstimate noise;
  {
    const CorpusSplit split = split_corpus(corpus, o.chunk_size, o.seed);
    const SignalMatrix first = transformed_counts(split.first, vocab, o, kind);
    const SignalMatrix second = transformed_counts(split.second, vocab, o, kind);
    noise = estimate_noise(first, second);
    noise.split_seed = o.seed;
  }
  const SignalMatrix full = transformed_counts(corpus, vocab, o, kind);
  const Spectrum spectrum = estimate_spectrum(full, noise.sigma);

  nlohmann::json j;
  j["version"] = io::kReportVersion;
  j["method"] = "count_twice+usvt";
  j["transform"] = to_string(kind);
  j["sigma"] = noise.sigma;
  std::vector<double> positive(spectrum.values().begin(),
                               spectrum.values().begin() + spectrum.rank());
  j["spectrum"] = positive;
  j["rank_d"] = spectrum.rank();
  j["ambient"] = spectrum.ambient();
  j["config"] = {{"corpus", o.corpus},
                 {"tokens", corpus.size()},
                 {"vocab_size", o.vocab_size},
                 {"vocab_actual", vocab.size()},
                 {"window", o.window},
                 {"chunk_size", o.chunk_size},
                 {"seed", o.seed},
                 {"transform", to_string(kind)},
                 {"shift", o.shift ? nlohmann::json(*o.shift) : nlohmann::json(nullptr)},
                 {"usvt_threshold", "2 * sigma * sqrt(max(m, n))"}};
  j["warnings"] = nlohmann::json::array();
  if (spectrum.rank() == 0) j["warnings"].push_back("USVT removed every singular value");
  io::write_json(o.out, j);
  return kOk;
}

struct SelectOptions {
  std::string spectrum;
  std::optional<double> sigma;
  std::optional<Index> ambient;
  double alpha = 0.5;
  std::string method = "bound";
  Index samples = 10;
  std::uint64_t seed = 0;
  std::string p_levels = "5,10,20,50";
  bool symmetric = false;
  bool gap_clamp = false;
  std::string out;
};

int run_select(const SelectOptions& o) {
  io::SpectrumRecord rec;
  std::string transform_name = "unknown";
  if (fs::is_regular_file(o.spectrum)) {
    rec = io::read_spectrum(o.spectrum);
    std::ifstream in(o.spectrum);
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_object() && j.contains("transform") && j["transform"].is_string()) {
      transform_name = j["transform"].get<std::string>();
    }
  } else {
    std::vector<double> values;
    try {
      values = parse_list(o.spectrum);
    } catch (const std::invalid_argument& ex) {
      throw io::DataError("--spectrum is neither a file nor a comma list: " + std::string(ex.what()));
    }
    try {
      rec.spectrum = Spectrum(std::move(values), o.ambient.value_or(-1));
    } catch (const std::invalid_argument& ex) {
      throw io::DataError(std::string("invalid spectrum: ") + ex.what());
    }
  }
  if (o.ambient && fs::is_regular_file(o.spectrum)) {
    rec.spectrum = Spectrum(rec.spectrum.values(), *o.ambient);
  }
  const std::optional<double> sigma = o.sigma ? o.sigma : rec.sigma;
  if (!sigma) throw std::invalid_argument("no --sigma given and the spectrum file has none");
  if (!(*sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (rec.spectrum.rank() == 0) throw NumericalDegeneracy("spectrum has rank 0");

  const std::vector<double> p = parse_list(o.p_levels);
  const CurveMethod method = parse_curve_method(o.method);
  PipCurve curve;
  GapPolicy policy;
  policy.clamp = o.gap_clamp;
  switch (method) {
    case CurveMethod::expected_bound:
      curve = bound_curve(rec.spectrum, *sigma, o.alpha, policy);
      if (curve.k_values.empty()) throw NumericalDegeneracy("every k has a degenerate gap");
      break;
    case CurveMethod::monte_carlo:
      curve = mc_curve(rec.spectrum, *sigma, o.alpha, o.samples, o.seed, o.symmetric);
      break;
    case CurveMethod::empirical:
      throw std::invalid_argument("select supports --method bound or montecarlo");
  }
  SelectionReport report = select_dimension(curve, p);
  report.rank_d = rec.spectrum.rank();

  nlohmann::json j = io::report_to_json(report);
  j["transform"] = transform_name;
  std::vector<double> positive(rec.spectrum.values().begin(),
                               rec.spectrum.values().begin() + rec.spectrum.rank());
  j["spectrum"] = positive;
  j["ambient"] = rec.spectrum.ambient();
  j["config"] = {{"spectrum", o.spectrum},
                 {"sigma", *sigma},
                 {"alpha", o.alpha},
                 {"method", to_string(method)},
                 {"samples", method == CurveMethod::monte_carlo ? o.samples : 0},
                 {"seed", o.seed},
                 {"p", p},
                 {"symmetric", o.symmetric},
                 {"gap_clamp", o.gap_clamp},
                 {"ambient", rec.spectrum.ambient()}};
  j["notes"] = nlohmann::json::array();
  if (method == CurveMethod::expected_bound) {
    j["notes"].push_back("the expected bound models a symmetric signal with symmetric noise; "
                         "for other matrices it is applied as an approximation");
  }
  io::write_json(o.out, j);
  return kOk;
}

int run_pipdist(const std::string& e1, const std::string& e2) {
  const Matrix a = io::read_matrix(e1);
  const Matrix b = io::read_matrix(e2);
  if (a.rows() != b.rows()) {
    throw io::DataError("row counts differ: " + std::to_string(a.rows()) + " vs " +
                        std::to_string(b.rows()));
  }
  std::cout << io::format_double(pip_distance(a, b)) << '\n';
  return kOk;
}

// <dim>.mat files of one run, ordered by dimensionality.
std::vector<std::pair<Index, fs::path>> list_run(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw io::DataError("not a directory: " + dir.string());
  std::vector<std::pair<Index, fs::path>> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto& path = entry.path();
    const std::string stem = path.stem().string();
    Index dim = 0;
    auto [ptr, ec] = std::from_chars(stem.data(), stem.data() + stem.size(), dim);
    if (path.extension() != ".mat" || ec != std::errc() || ptr != stem.data() + stem.size() ||
        dim < 1) {
      std::cerr << "warning: skipping " << path.string() << " (expected <dim>.mat)\n";
      continue;
    }
    out.emplace_back(dim, path);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int run_stability(const std::string& dir1, const std::string& dir2, const std::string& out_path) {
  const auto files1 = list_run(dir1);
  const auto files2 = list_run(dir2);
  if (files1.empty() || files2.empty()) throw io::DataError("no <dim>.mat files found");
  std::vector<Matrix> run1, run2;
  for (const auto& [dim, path] : files1) run1.push_back(io::read_matrix(path));
  for (const auto& [dim, path] : files2) run2.push_back(io::read_matrix(path));
  const Index rows = run1.front().rows();
  for (const auto* run : {&run1, &run2}) {
    for (const auto& m : *run) {
      if (m.rows() != rows) throw io::DataError("embeddings differ in row count");
    }
  }
  const StabilityMatrix sm = stability_matrix(run1, run2);
  for (const auto& w : sm.warnings) std::cerr << "warning: " << w << '\n';

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw io::DataError("cannot write " + out_path);
  out << "dim";
  for (const auto& [dim, path] : files2) out << ',' << dim;
  out << '\n';
  for (std::size_t i = 0; i < files1.size(); ++i) {
    out << files1[i].first;
    for (std::size_t j = 0; j < files2.size(); ++j) {
      out << ',';
      const double v = sm.nsr(static_cast<Index>(i), static_cast<Index>(j));
      if (!std::isnan(v)) out << io::format_double(v);
    }
    out << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Select embedding dimensionality by minimizing the PIP loss"};
  app.require_subcommand(1);

  CoocOptions cooc;
  auto* cmd_cooc = app.add_subcommand("cooc", "Count windowed co-occurrences of a corpus");
  cmd_cooc->add_option("--corpus", cooc.corpus, "Whitespace-tokenized text file")->required();
  cmd_cooc->add_option("--vocab-size", cooc.vocab_size, "Keep the N most frequent tokens")
      ->check(CLI::PositiveNumber);
  cmd_cooc->add_option("--window", cooc.window, "Context window radius")->check(CLI::PositiveNumber);
  cmd_cooc->add_option("--out", cooc.out, "Count matrix output")->required();
  cmd_cooc->add_option("--vocab-out", cooc.vocab_out, "Vocabulary sidecar (default <out>.vocab)");

  EstimateOptions est;
  auto* cmd_est = app.add_subcommand("estimate", "Estimate noise level and signal spectrum");
  cmd_est->add_option("--corpus", est.corpus, "Whitespace-tokenized text file")->required();
  cmd_est->add_option("--transform", est.transform, "pmi | ppmi | sppmi | log_count");
  cmd_est->add_option("--shift", est.shift, "Negative-sample count l for sppmi");
  cmd_est->add_option("--vocab-size", est.vocab_size)->check(CLI::PositiveNumber);
  cmd_est->add_option("--window", est.window)->check(CLI::PositiveNumber);
  cmd_est->add_option("--chunk-size", est.chunk_size, "Tokens per split chunk")
      ->check(CLI::PositiveNumber);
  cmd_est->add_option("--seed", est.seed, "Corpus split seed");
  cmd_est->add_option("--out", est.out, "JSON output")->required();

  SelectOptions sel;
  auto* cmd_sel = app.add_subcommand("select", "Choose k from a spectrum and noise level");
  cmd_sel->add_option("--spectrum", sel.spectrum, "Spectrum JSON file or comma-separated values")
      ->required();
  cmd_sel->add_option("--sigma", sel.sigma, "Noise standard deviation (default: from file)");
  cmd_sel->add_option("--ambient", sel.ambient, "Ambient dimension n (default: from file)");
  cmd_sel->add_option("--alpha", sel.alpha)->check(CLI::Range(0.0, 1.0));
  cmd_sel->add_option("--method", sel.method, "bound | montecarlo");
  cmd_sel->add_option("--samples", sel.samples, "Monte-Carlo instances")->check(CLI::PositiveNumber);
  cmd_sel->add_option("--seed", sel.seed, "Monte-Carlo base seed");
  cmd_sel->add_option("--p", sel.p_levels, "Near-optimality levels in percent");
  cmd_sel->add_flag("--symmetric", sel.symmetric, "Symmetric signal and noise");
  cmd_sel->add_flag("--gap-clamp", sel.gap_clamp, "Floor tied spectral gaps instead of dropping k");
  cmd_sel->add_option("--out", sel.out, "Report JSON output")->required();

  std::string e1, e2;
  auto* cmd_pip = app.add_subcommand("pipdist", "PIP distance between two embedding files");
  cmd_pip->add_option("--e1", e1)->required();
  cmd_pip->add_option("--e2", e2)->required();

  std::string dir1, dir2, stab_out;
  auto* cmd_stab = app.add_subcommand(
      "stability", "NSR grid between two runs: ||P1 - P2||^2 / (||P1|| ||P2||), P = E E^T");
  cmd_stab->add_option("--dir1", dir1)->required();
  cmd_stab->add_option("--dir2", dir2)->required();
  cmd_stab->add_option("--out", stab_out, "CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cmd_cooc) return run_cooc(cooc);
    if (*cmd_est) return run_estimate(est);
    if (*cmd_sel) return run_select(sel);
    if (*cmd_pip) return run_pipdist(e1, e2);
    if (*cmd_stab) return run_stability(dir1, dir2, stab_out);
  } catch (const NumericalDegeneracy& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kDegenerate;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kData;
  }
  return kUsage;
}
