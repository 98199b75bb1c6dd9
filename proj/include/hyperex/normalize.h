#ifndef HYPEREX_NORMALIZE_H_
#define HYPEREX_NORMALIZE_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hyperex {

// Stands in for every stopword in normalized text.
inline constexpr std::string_view kPlaceholder = "_";

// Porter's 1980 suffix-stripping stemmer, following the reference ANSI C
// implementation (including its "logi" and "bli" rules). Input is expected
// to be lowercase; words of two characters or fewer are returned unchanged.
std::string PorterStem(std::string_view word);

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::vector<std::string> words);

  // The SMART system stopword list (570 distinct words).
  static StopwordSet Smart();

  // One word per line; '#' starts a comment; words are lowercased.
  // Throws InputError if the file cannot be read.
  static StopwordSet FromFile(const std::string& path);

  bool Contains(const std::string& token) const {
    return words_.find(token) != words_.end();
  }
  bool Contains(std::string_view token) const {
    return Contains(std::string(token));
  }
  bool Contains(const char* token) const {
    return Contains(std::string(token));
  }
  size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  // Stable digest of the word set.
  std::string Fingerprint() const;

 private:
  std::unordered_set<std::string> words_;
};

// A token made only of ASCII punctuation, other than the placeholder itself.
bool IsPunctuationToken(std::string_view token);

// Replaces each stopword by the placeholder. Length is preserved.
std::vector<std::string> MaskStopwords(std::span<const std::string> tokens,
                                       const StopwordSet& stops);

// Drops punctuation tokens, masks stopwords, then stems everything that is
// not the placeholder.
std::vector<std::string> NormalizeTokens(std::span<const std::string> tokens,
                                         const StopwordSet& stops);

// Identifies a normalization pipeline (stemmer version plus stopword set).
// Sentence files and catalogs must agree on it.
std::string NormalizationFingerprint(const StopwordSet& stops);

// NormalizeTokens with a memo of stems. Not thread-safe; use one per worker.
class Normalizer {
 public:
  explicit Normalizer(const StopwordSet& stops) : stops_(stops) {}

  std::vector<std::string> Normalize(std::span<const std::string> tokens);

 private:
  const std::string& Stem(const std::string& token);

  const StopwordSet& stops_;
  std::unordered_map<std::string, std::string> cache_;
};

}  // namespace hyperex

#endif  // HYPEREX_NORMALIZE_H_
