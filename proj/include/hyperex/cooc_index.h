#ifndef HYPEREX_COOC_INDEX_H_
#define HYPEREX_COOC_INDEX_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperex/term_catalog.h"

namespace hyperex {

struct Occurrence {
  TermId term = 0;
  uint32_t start = 0;
  uint32_t length = 0;

  bool operator==(const Occurrence&) const = default;
};

// Aho-Corasick automaton over normalized token sequences. Tokens are
// interned to integers, so matching a sentence costs one hash lookup per
// token plus the number of reported matches. The placeholder "_" is an
// ordinary token: any stopword aligns with any stopword.
class TermMatcher {
 public:
  struct Options {
    // When false, an occurrence lying strictly inside a longer one in the
    // same sentence is dropped.
    bool nested = true;
  };

  using Pattern = std::pair<TermId, std::vector<std::string>>;

  // Compiles every matchable term of the catalog.
  explicit TermMatcher(const TermCatalog& catalog)
      : TermMatcher(catalog, Options()) {}
  TermMatcher(const TermCatalog& catalog, Options options);
  TermMatcher(const std::vector<Pattern>& patterns, Options options);

  // All (term, start) matches, sorted by start then term id.
  std::vector<Occurrence> Find(std::span<const std::string_view> tokens) const;
  std::vector<Occurrence> Find(std::span<const std::string> tokens) const;

  size_t pattern_count() const { return pattern_count_; }

 private:
  static constexpr uint32_t kNoToken = UINT32_MAX;

  struct Node {
    // Sorted by token id.
    std::vector<std::pair<uint32_t, uint32_t>> next;
    uint32_t fail = 0;
    // Nearest proper suffix state that has outputs; 0 when none.
    uint32_t dict = 0;
    uint32_t depth = 0;
    std::vector<TermId> outputs;
  };

  struct StringHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>()(s);
    }
  };

  void Add(TermId id, const std::vector<std::string>& tokens);
  void Compile();
  uint32_t Child(uint32_t node, uint32_t token) const;
  uint32_t TokenId(std::string_view token) const;

  Options options_;
  std::unordered_map<std::string, uint32_t, StringHash, std::equal_to<>> vocab_;
  std::vector<Node> nodes_;
  size_t pattern_count_ = 0;
};

struct TermCounts {
  uint64_t doc_freq = 0;
  uint64_t term_freq = 0;
  uint64_t sent_freq = 0;

  bool operator==(const TermCounts&) const = default;
};

// Document frequency, term frequency, sentence frequency and pairwise
// sentence co-occurrence for every catalog term. Counts only ever grow, and
// two instances over disjoint documents combine by pointwise addition.
class CorpusStats {
 public:
  CorpusStats() = default;
  // Registers every catalog term with zero counts.
  explicit CorpusStats(const TermCatalog& catalog);
  CorpusStats(std::string catalog_fingerprint, std::span<const TermId> ids);

  // Adds one document given the occurrences found in each of its sentences.
  void AddDocument(const std::vector<std::vector<Occurrence>>& sentences);

  // Pointwise sum. Throws InvariantError on a catalog mismatch.
  void Merge(const CorpusStats& other);

  const std::string& catalog_fingerprint() const { return fingerprint_; }
  uint64_t total_docs() const { return total_docs_; }
  uint64_t total_sentences() const { return total_sentences_; }

  bool Has(TermId id) const { return terms_.count(id) > 0; }
  TermCounts Counts(TermId id) const;
  uint64_t DocFreq(TermId id) const { return Counts(id).doc_freq; }
  // Symmetric; zero for i == j or unseen pairs.
  uint64_t SentCooc(TermId i, TermId j) const;

  const std::unordered_map<TermId, TermCounts>& terms() const { return terms_; }
  // Keyed by PairKey(i, j), i < j; only nonzero counts are stored.
  const std::unordered_map<uint64_t, uint64_t>& pairs() const { return pairs_; }

  static uint64_t PairKey(TermId i, TermId j) {
    if (i > j) std::swap(i, j);
    return (static_cast<uint64_t>(i) << 32) | j;
  }
  static std::pair<TermId, TermId> SplitKey(uint64_t key) {
    return {static_cast<TermId>(key >> 32), static_cast<TermId>(key)};
  }

  // Direct mutation, for loading and for tests that inject known counts.
  void SetTotals(uint64_t docs, uint64_t sentences);
  void SetCounts(TermId id, const TermCounts& counts);
  void SetSentCooc(TermId i, TermId j, uint64_t count);

  bool operator==(const CorpusStats&) const = default;

 private:
  std::string fingerprint_;
  uint64_t total_docs_ = 0;
  uint64_t total_sentences_ = 0;
  std::unordered_map<TermId, TermCounts> terms_;
  std::unordered_map<uint64_t, uint64_t> pairs_;
};

CorpusStats Merge(const CorpusStats& a, const CorpusStats& b);

// Versioned TSV with a trailing checksum line:
//   #version 1 / #catalog-fingerprint / #total_docs / #total_sentences
//   T id doc_freq term_freq sent_freq      (ascending id)
//   P id_i id_j count                      (i < j, ascending)
//   #checksum <fnv1a64 of everything above>
void WriteStats(const CorpusStats& stats, std::ostream& out);
CorpusStats ReadStats(std::istream& in, const std::string& source);
void SaveStats(const CorpusStats& stats, const std::string& path);
CorpusStats LoadStats(const std::string& path);

inline constexpr int kStatsVersion = 1;

}  // namespace hyperex

#endif  // HYPEREX_COOC_INDEX_H_
