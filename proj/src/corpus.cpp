#include "pipdim/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace pipdim {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Corpus positions mapped to vocabulary ids, out-of-vocabulary tokens removed.
std::vector<Index> to_ids(std::span<const std::string> corpus, const Vocab& vocab) {
  std::vector<Index> ids;
  ids.reserve(corpus.size());
  for (const auto& tok : corpus) {
    if (auto it = vocab.index.find(tok); it != vocab.index.end()) ids.push_back(it->second);
  }
  return ids;
}

}  // namespace

std::optional<Index> Vocab::id(std::string_view token) const {
  if (auto it = index.find(std::string(token)); it != index.end()) return it->second;
  return std::nullopt;
}

TokenStream tokenize(std::string_view text) {
  TokenStream out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

TokenStream read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return tokenize(buf.str());
}

Vocab build_vocab(std::span<const std::string> corpus, std::size_t max_size) {
  struct Entry {
    std::int64_t count = 0;
    std::size_t first = 0;
  };
  std::unordered_map<std::string, Entry> seen;
  std::vector<const std::string*> order;
  for (std::size_t pos = 0; pos < corpus.size(); ++pos) {
    auto [it, inserted] = seen.try_emplace(corpus[pos], Entry{0, order.size()});
    if (inserted) order.push_back(&it->first);
    ++it->second.count;
  }
  std::vector<std::pair<const std::string*, Entry>> ranked;
  ranked.reserve(order.size());
  for (const auto* tok : order) ranked.emplace_back(tok, seen.at(*tok));
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.count != b.second.count) return a.second.count > b.second.count;
    return a.second.first < b.second.first;
  });
  if (ranked.size() > max_size) ranked.resize(max_size);

  Vocab v;
  v.tokens.reserve(ranked.size());
  v.frequencies.reserve(ranked.size());
  for (const auto& [tok, e] : ranked) {
    v.index.emplace(*tok, static_cast<Index>(v.tokens.size()));
    v.tokens.push_back(*tok);
    v.frequencies.push_back(e.count);
  }
  return v;
}

CountMatrix cooc_count(std::span<const std::string> corpus, const Vocab& vocab, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  const Index n = vocab.size();
  CountMatrix out{Matrix::Zero(n, n), CountKind::cooccurrence};
  const auto ids = to_ids(corpus, vocab);
  const auto len = ids.size();
  const auto w = static_cast<std::size_t>(window);
  // Each unordered position pair within the window adds one count in both
  // directions, which keeps the matrix exactly symmetric.
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t end = std::min(len, i + w + 1);
    for (std::size_t j = i + 1; j < end; ++j) {
      out.counts(ids[i], ids[j]) += 1.0;
      out.counts(ids[j], ids[i]) += 1.0;
    }
  }
  return out;
}

CountMatrix term_doc_count(std::span<const TokenStream> documents, const Vocab& vocab) {
  if (documents.empty()) throw std::invalid_argument("term_doc_count needs at least one document");
  CountMatrix out{Matrix::Zero(static_cast<Index>(documents.size()), vocab.size()),
                  CountKind::term_document};
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (Index id : to_ids(documents[d], vocab)) out.counts(static_cast<Index>(d), id) += 1.0;
  }
  return out;
}

CorpusSplit split_corpus(std::span<const std::string> corpus, std::size_t chunk_size,
                         std::uint64_t seed) {
  if (chunk_size == 0) throw std::invalid_argument("chunk_size must be >= 1");
  const std::size_t chunks = (corpus.size() + chunk_size - 1) / chunk_size;
  const std::size_t full = corpus.size() / chunk_size;
  const std::size_t cap = (full + 1) / 2;

  // Full chunks are balanced by count; a trailing partial chunk goes to the
  // lighter half so token counts differ by at most chunk_size.
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  CorpusSplit split;
  for (std::size_t c = 0; c < chunks; ++c) {
    bool to_first = coin(rng);
    const std::size_t a = split.first_chunks.size();
    const std::size_t b = split.second_chunks.size();
    if (c < full) {
      if (a == cap) to_first = false;
      if (b == cap) to_first = true;
    } else if (a != b) {
      to_first = a < b;
    }
    (to_first ? split.first_chunks : split.second_chunks).push_back(c);
  }
  auto gather = [&](const std::vector<std::size_t>& ids, TokenStream& dst) {
    for (std::size_t c : ids) {
      const std::size_t begin = c * chunk_size;
      const std::size_t end = std::min(corpus.size(), begin + chunk_size);
      dst.insert(dst.end(), corpus.begin() + static_cast<std::ptrdiff_t>(begin),
                 corpus.begin() + static_cast<std::ptrdiff_t>(end));
    }
  };
  gather(split.first_chunks, split.first);
  gather(split.second_chunks, split.second);
  return split;
}

}  // namespace pipdim
