#include "testing/fixtures.h"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace hyperex::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("hyperex-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string MakeDump(const std::vector<std::pair<std::string, std::string>>& pages) {
  std::string out = "<mediawiki xml:lang=\"en\">\n";
  for (const auto& [title, body] : pages) {
    out += "  <page>\n    <title>" + title + "</title>\n    <ns>0</ns>\n";
    out += "    <revision>\n      <text xml:space=\"preserve\">" + body +
           "</text>\n    </revision>\n  </page>\n";
  }
  out += "</mediawiki>\n";
  return out;
}

namespace {

// Content words chosen so stemming matters (plural/verb endings).
const std::vector<std::string>& Vocabulary() {
  static const std::vector<std::string> kWords = [] {
    const char* roots[] = {
        "chemical", "compound",  "acid",     "salt",      "metal",
        "engine",   "satellite", "vehicle",  "machine",   "tool",
        "sauce",    "bread",     "cheese",   "fruit",     "wine",
        "science",  "theology",  "history",  "religion",  "music",
        "physics",  "biology",   "geology",  "chemistry", "medicine",
        "helmet",   "radar",     "rocket",   "missile",   "system",
        "reaction", "solution",  "crystal",  "protein",   "enzyme",
        "culture",  "language",  "painting", "garden",    "river"};
    const char* endings[] = {"", "s", "al", "ing", "ed", "ation", "ic", "ness"};
    std::vector<std::string> words;
    for (const char* r : roots) {
      for (const char* e : endings) words.push_back(std::string(r) + e);
    }
    // Filler that never forms a term.
    for (int i = 0; i < 400; ++i) {
      std::string w;
      int n = i;
      do {
        w += "bdfgklmnprstvz"[n % 14];
        w += "aeiou"[(n / 14) % 5];
        n /= 70;
      } while (n > 0);
      words.push_back(w + "ton");
    }
    return words;
  }();
  return kWords;
}

const std::vector<std::string>& Stopwords() {
  static const std::vector<std::string> kWords = {
      "the", "of", "and", "a", "in", "is", "to", "was", "for", "as",
      "with", "by", "that", "on", "from", "its", "which", "were"};
  return kWords;
}

}  // namespace

std::vector<std::string> SyntheticTerms() {
  return {"chemical",           "compound",          "acid",
          "salt",               "metal",             "chemical compound",
          "acid salt",          "metal salt",        "engine",
          "satellite",          "communications satellite",
          "vehicle",            "machine",           "tool",
          "machine tool",       "sauce",             "bread",
          "cheese",             "fruit",             "wine",
          "fruit wine",         "science",           "theology",
          "history",            "religion",          "music",
          "history of religion", "physics",          "biology",
          "geology",            "chemistry",         "medicine",
          "helmet",             "helmet of steel",   "radar",
          "rocket",             "missile",           "missile system",
          "reaction",           "solution",          "crystal",
          "protein",            "enzyme",            "culture",
          "language",           "painting",          "garden",
          "river",              "biblical studies",  "licorice",
          "rice",               "caterpillar d9",    "caterpillar"};
}

int64_t WriteSyntheticDump(std::ostream& out, int64_t target_bytes,
                           uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& vocab = Vocabulary();
  const auto& stops = Stopwords();
  const std::vector<std::string> terms = SyntheticTerms();
  // Zipf-like rank weights make a few terms very frequent.
  std::vector<double> weights;
  for (size_t i = 0; i < terms.size(); ++i) weights.push_back(1.0 / (1.0 + i));
  std::discrete_distribution<size_t> pick_term(weights.begin(), weights.end());
  std::uniform_int_distribution<size_t> pick_word(0, vocab.size() - 1);
  std::uniform_int_distribution<size_t> pick_stop(0, stops.size() - 1);
  std::uniform_int_distribution<int> percent(0, 99);
  std::uniform_int_distribution<int> sentence_len(6, 22);
  std::uniform_int_distribution<int> doc_len(3, 30);

  out << "<mediawiki xml:lang=\"en\">\n";
  int64_t written = 26;
  int64_t pages = 0;
  std::string body;
  while (written < target_bytes) {
    body.clear();
    const int sentences = doc_len(rng);
    for (int s = 0; s < sentences; ++s) {
      const int len = sentence_len(rng);
      for (int w = 0; w < len; ++w) {
        std::string word;
        const int r = percent(rng);
        if (r < 12) {
          word = terms[pick_term(rng)];
        } else if (r < 40) {
          word = stops[pick_stop(rng)];
        } else {
          word = vocab[pick_word(rng)];
        }
        if (w == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
        body += word;
        body += (w + 1 == len) ? ". " : (percent(rng) < 8 ? ", " : " ");
      }
      if (percent(rng) < 15) body += "\n\n";
    }
    ++pages;
    std::string page = "  <page>\n    <title>Article " + std::to_string(pages) +
                       "</title>\n    <revision>\n      <text xml:space=\"preserve\">" +
                       body + "</text>\n    </revision>\n  </page>\n";
    out << page;
    written += static_cast<int64_t>(page.size());
  }
  out << "</mediawiki>\n";
  return pages;
}

}  // namespace hyperex::testing
