#include "hyperex/corpus_ingest.h"

#include <algorithm>
#include <cstdlib>

#include "hyperex/errors.h"
#include "hyperex/text_util.h"

namespace hyperex {

namespace {

void AppendUtf8(uint32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

constexpr uint32_t kReplacementChar = 0xFFFD;

// Length of the valid UTF-8 sequence starting at s[i], or 0 if malformed.
size_t ValidSequenceLength(std::string_view s, size_t i) {
  const auto byte = [&](size_t k) {
    return static_cast<unsigned char>(s[k]);
  };
  const unsigned char c = byte(i);
  if (c < 0x80) return 1;
  size_t len;
  uint32_t cp;
  if (c >= 0xC2 && c <= 0xDF) {
    len = 2;
    cp = c & 0x1F;
  } else if (c >= 0xE0 && c <= 0xEF) {
    len = 3;
    cp = c & 0x0F;
  } else if (c >= 0xF0 && c <= 0xF4) {
    len = 4;
    cp = c & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  // Overlong forms, surrogates and out-of-range code points.
  if ((len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
      (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
    return 0;
  }
  return len;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

Encoding ParseEncoding(std::string_view name) {
  const std::string lower = AsciiLower(name);
  if (lower == "utf-8" || lower == "utf8") return Encoding::kUtf8;
  if (lower == "latin-1" || lower == "latin1" || lower == "iso-8859-1") {
    return Encoding::kLatin1;
  }
  throw InputError("unsupported encoding: " + std::string(name));
}

std::string DecodeToUtf8(std::string_view bytes, Encoding encoding,
                         int64_t* replacements) {
  std::string out;
  out.reserve(bytes.size());
  if (encoding == Encoding::kLatin1) {
    for (char c : bytes) AppendUtf8(static_cast<unsigned char>(c), &out);
    return out;
  }
  size_t i = 0;
  while (i < bytes.size()) {
    const size_t len = ValidSequenceLength(bytes, i);
    if (len == 0) {
      AppendUtf8(kReplacementChar, &out);
      if (replacements != nullptr) ++*replacements;
      ++i;
    } else {
      out.append(bytes.substr(i, len));
      i += len;
    }
  }
  return out;
}

std::string XmlUnescape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const size_t semi = text.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(text[i++]);
      continue;
    }
    const std::string_view entity = text.substr(i + 1, semi - i - 1);
    bool ok = true;
    if (entity == "lt") {
      out.push_back('<');
    } else if (entity == "gt") {
      out.push_back('>');
    } else if (entity == "amp") {
      out.push_back('&');
    } else if (entity == "quot") {
      out.push_back('"');
    } else if (entity == "apos") {
      out.push_back('\'');
    } else if (entity.size() >= 2 && entity[0] == '#') {
      const bool hex = entity[1] == 'x' || entity[1] == 'X';
      const std::string digits(entity.substr(hex ? 2 : 1));
      char* end = nullptr;
      const unsigned long cp =
          digits.empty() ? 0 : std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
      if (digits.empty() || *end != '\0' || cp == 0 || cp > 0x10FFFF ||
          (cp >= 0xD800 && cp <= 0xDFFF)) {
        ok = false;
      } else {
        AppendUtf8(static_cast<uint32_t>(cp), &out);
      }
    } else {
      ok = false;
    }
    if (ok) {
      i = semi + 1;
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

DumpReader::DumpReader(std::istream& in, Options options)
    : in_(in), options_(options) {}

bool DumpReader::Fill() {
  if (eof_) return false;
  // Drop consumed bytes before growing the buffer.
  if (pos_ > 0) {
    buf_.erase(0, pos_);
    pos_ = 0;
  }
  const size_t old = buf_.size();
  buf_.resize(old + options_.chunk_size);
  in_.read(buf_.data() + old, static_cast<std::streamsize>(options_.chunk_size));
  const size_t got = static_cast<size_t>(in_.gcount());
  buf_.resize(old + got);
  peak_buffer_ = std::max(peak_buffer_, buf_.capacity());
  if (got == 0) {
    eof_ = true;
    return false;
  }
  return true;
}

bool DumpReader::EnsureAvailable(size_t n) {
  while (buf_.size() - pos_ < n) {
    if (!Fill()) return false;
  }
  return true;
}

// Advances past the next occurrence of `pattern`, appending the skipped bytes
// to `out` when non-null. At end of stream the remainder is appended and
// false is returned.
bool DumpReader::ConsumeUntil(std::string_view pattern, std::string* out) {
  for (;;) {
    const size_t found = buf_.find(pattern, pos_);
    if (found != std::string::npos) {
      if (out != nullptr) out->append(buf_, pos_, found - pos_);
      pos_ = found + pattern.size();
      return true;
    }
    // Keep a tail that could still be the start of the pattern.
    const size_t keep = pattern.size() - 1;
    if (buf_.size() - pos_ > keep) {
      const size_t safe = buf_.size() - keep;
      if (out != nullptr) out->append(buf_, pos_, safe - pos_);
      pos_ = safe;
    }
    if (!Fill()) {
      if (out != nullptr) out->append(buf_, pos_, std::string::npos);
      pos_ = buf_.size();
      return false;
    }
  }
}

std::string DumpReader::Decode(std::string_view raw) {
  std::string text = DecodeToUtf8(raw, options_.encoding, &replacements_);
  if (options_.unescape_xml) text = XmlUnescape(text);
  return text;
}

bool DumpReader::Next(RawDocument* doc) {
  for (;;) {
    if (!ConsumeUntil("<", nullptr)) return false;
    EnsureAvailable(6);
    const std::string_view ahead = std::string_view(buf_).substr(pos_, 6);
    if (StartsWith(ahead, "title>")) {
      pos_ += 6;
      std::string raw;
      if (!ConsumeUntil("</title>", &raw)) return false;
      std::string title(Trim(Decode(raw)));
      for (char& c : title) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
      }
      title_ = std::move(title);
      have_title_ = !title_.empty();
      continue;
    }
    if (!StartsWith(ahead, "text") || ahead.size() < 5) continue;
    const char after = ahead[4];
    if (!(after == '>' || after == '/' || IsAsciiSpace(after))) continue;
    pos_ += 4;
    std::string attrs;
    if (!ConsumeUntil(">", &attrs)) {
      ++unterminated_;
      return false;
    }
    ++documents_;
    doc->title = have_title_ ? title_ : "doc-" + std::to_string(documents_);
    doc->body.clear();
    if (!attrs.empty() && attrs.back() == '/') return true;
    std::string raw;
    if (!ConsumeUntil("</text>", &raw)) ++unterminated_;
    doc->body = Decode(raw);
    return true;
  }
}

std::vector<RawDocument> ExtractDocuments(std::istream& in,
                                          DumpReader::Options options) {
  DumpReader reader(in, options);
  std::vector<RawDocument> docs;
  RawDocument doc;
  while (reader.Next(&doc)) docs.push_back(std::move(doc));
  return docs;
}

std::vector<std::string> SegmentSentences(std::string_view body) {
  std::vector<std::string> sentences;
  const auto emit = [&](size_t begin, size_t end) {
    const std::string_view s = Trim(body.substr(begin, end - begin));
    if (!s.empty()) sentences.emplace_back(s);
  };
  const size_t n = body.size();
  size_t start = 0;
  size_t i = 0;
  while (i < n) {
    const char c = body[i];
    if (c == '\n') {
      size_t j = i + 1;
      while (j < n && (body[j] == ' ' || body[j] == '\t' || body[j] == '\r')) {
        ++j;
      }
      if (j < n && body[j] == '\n') {
        emit(start, i);
        start = j + 1;
        i = j + 1;
        continue;
      }
    } else if (c == '.' || c == '!' || c == '?') {
      if (i + 1 == n) break;
      if (IsAsciiSpace(body[i + 1])) {
        size_t j = i + 1;
        while (j < n && IsAsciiSpace(body[j])) ++j;
        if (j == n || IsAsciiUpper(body[j])) {
          emit(start, i + 1);
          start = i + 1;
        }
      }
    }
    ++i;
  }
  if (start < n) emit(start, n);
  return sentences;
}

std::vector<std::string> Tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  for (std::string_view chunk : SplitWhitespace(sentence)) {
    size_t begin = 0;
    size_t end = chunk.size();
    while (begin < end && IsAsciiPunct(chunk[begin])) {
      tokens.emplace_back(1, chunk[begin]);
      ++begin;
    }
    size_t core_end = end;
    while (core_end > begin && IsAsciiPunct(chunk[core_end - 1])) --core_end;
    if (core_end > begin) {
      tokens.push_back(AsciiLower(chunk.substr(begin, core_end - begin)));
    }
    for (size_t k = core_end; k < end; ++k) tokens.emplace_back(1, chunk[k]);
  }
  return tokens;
}

TokenizedDocument TokenizeDocument(const RawDocument& doc) {
  TokenizedDocument out;
  out.title = doc.title;
  for (const std::string& sentence : SegmentSentences(doc.body)) {
    std::vector<std::string> tokens = Tokenize(sentence);
    if (!tokens.empty()) out.sentences.push_back(std::move(tokens));
  }
  return out;
}

}  // namespace hyperex
