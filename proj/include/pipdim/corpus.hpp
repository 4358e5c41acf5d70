#pragma once

#include "pipdim/common.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pipdim {

using TokenStream = std::vector<std::string>;

/// Tokens ordered by descending corpus frequency, ties by first occurrence.
struct Vocab {
  std::vector<std::string> tokens;
  std::vector<std::int64_t> frequencies;
  std::unordered_map<std::string, Index> index;

  Index size() const noexcept { return static_cast<Index>(tokens.size()); }
  std::optional<Index> id(std::string_view token) const;
};

enum class CountKind { cooccurrence, term_document };

struct CountMatrix {
  Matrix counts;
  CountKind kind = CountKind::cooccurrence;

  Index rows() const noexcept { return counts.rows(); }
  Index cols() const noexcept { return counts.cols(); }
};

/// Splits on ASCII whitespace. No case folding or normalization.
TokenStream tokenize(std::string_view text);
TokenStream read_corpus(const std::filesystem::path& path);

Vocab build_vocab(std::span<const std::string> corpus, std::size_t max_size);

/// Symmetric window co-occurrence counts. Out-of-vocabulary tokens are
/// dropped before windowing, so they never occupy a window slot.
CountMatrix cooc_count(std::span<const std::string> corpus, const Vocab& vocab, int window);

/// Rows are documents, columns are vocabulary terms.
CountMatrix term_doc_count(std::span<const TokenStream> documents, const Vocab& vocab);

struct CorpusSplit {
  TokenStream first;
  TokenStream second;
  std::vector<std::size_t> first_chunks;   // chunk ordinals, ascending
  std::vector<std::size_t> second_chunks;
};

/// Cuts the corpus into consecutive chunks and deals them to two halves with
/// a seeded fair coin; once a half holds ceil(chunks/2) the rest go to the
/// other, so half sizes differ by at most chunk_size tokens.
CorpusSplit split_corpus(std::span<const std::string> corpus, std::size_t chunk_size,
                         std::uint64_t seed);

}  // namespace pipdim
