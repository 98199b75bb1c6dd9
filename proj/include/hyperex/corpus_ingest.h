#ifndef HYPEREX_CORPUS_INGEST_H_
#define HYPEREX_CORPUS_INGEST_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace hyperex {

enum class Encoding { kUtf8, kLatin1 };

// Accepts "utf-8", "utf8", "latin-1", "latin1", "iso-8859-1"
// (case-insensitive). Throws InputError otherwise.
Encoding ParseEncoding(std::string_view name);

// Converts raw dump bytes to valid UTF-8. In UTF-8 mode every malformed
// sequence becomes U+FFFD; in Latin-1 mode each byte maps to its code point.
// `replacements`, when non-null, is incremented once per substitution.
std::string DecodeToUtf8(std::string_view bytes, Encoding encoding,
                         int64_t* replacements = nullptr);

// Resolves the five predefined XML entities and numeric character
// references. Unknown entities are left as-is.
std::string XmlUnescape(std::string_view text);

struct RawDocument {
  std::string title;
  std::string body;
};

struct TokenizedDocument {
  std::string title;
  std::vector<std::vector<std::string>> sentences;
};

// Streams documents out of a wiki-style XML dump. Only the contents of
// <title> and <text> elements are looked at; everything else is skipped.
// Memory use is bounded by the largest single document plus one read chunk.
class DumpReader {
 public:
  struct Options {
    Encoding encoding = Encoding::kUtf8;
    bool unescape_xml = true;
    size_t chunk_size = 1 << 16;
  };

  explicit DumpReader(std::istream& in) : DumpReader(in, Options()) {}
  DumpReader(std::istream& in, Options options);

  // Fills `doc` with the next <text> region. Returns false at end of stream.
  bool Next(RawDocument* doc);

  int64_t documents() const { return documents_; }
  // Number of <text> regions cut off by end of stream.
  int64_t unterminated() const { return unterminated_; }
  // Number of malformed byte sequences replaced during decoding.
  int64_t replacements() const { return replacements_; }
  // High-water mark of the internal read buffer, in bytes.
  size_t peak_buffer_bytes() const { return peak_buffer_; }

 private:
  bool Fill();
  bool EnsureAvailable(size_t n);
  bool ConsumeUntil(std::string_view pattern, std::string* out);
  std::string Decode(std::string_view raw);

  std::istream& in_;
  Options options_;
  std::string buf_;
  size_t pos_ = 0;
  bool eof_ = false;
  std::string title_;
  bool have_title_ = false;
  int64_t documents_ = 0;
  int64_t unterminated_ = 0;
  int64_t replacements_ = 0;
  size_t peak_buffer_ = 0;
};

// Reads every document in the stream. Convenience wrapper for small inputs.
std::vector<RawDocument> ExtractDocuments(std::istream& in,
                                          DumpReader::Options options = {});

// Rule-based sentence splitter. A sentence ends at '.', '!' or '?' followed
// by whitespace and then an uppercase ASCII letter or end of text, and at
// blank lines. Sentences are trimmed; empty ones are dropped.
std::vector<std::string> SegmentSentences(std::string_view body);

// Lowercases, splits on whitespace and peels leading/trailing ASCII
// punctuation off each chunk as single-character tokens. Internal
// punctuation ("self-governed", "2.5", "d9") is kept.
std::vector<std::string> Tokenize(std::string_view sentence);

TokenizedDocument TokenizeDocument(const RawDocument& doc);

}  // namespace hyperex

#endif  // HYPEREX_CORPUS_INGEST_H_
