#ifndef HYPEREX_TESTING_FIXTURES_H_
#define HYPEREX_TESTING_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace hyperex::testing {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

void WriteFile(const std::string& path, const std::string& content);
std::string ReadFile(const std::string& path);

// Wraps (title, body) pairs in MediaWiki export markup.
std::string MakeDump(const std::vector<std::pair<std::string, std::string>>& pages);

// Terms used by the synthetic corpus: single words and two/three-word
// phrases over the synthetic vocabulary, plus a few subterm pairs.
std::vector<std::string> SyntheticTerms();

// Writes a deterministic wiki-style dump of roughly `target_bytes` whose
// sentences mix vocabulary words, stopwords and catalog terms with a skewed
// frequency profile. Returns the number of pages written.
int64_t WriteSyntheticDump(std::ostream& out, int64_t target_bytes,
                           uint64_t seed);

}  // namespace hyperex::testing

#endif  // HYPEREX_TESTING_FIXTURES_H_
