#ifndef HYPEREX_TEXT_UTIL_H_
#define HYPEREX_TEXT_UTIL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hyperex {

inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }

// ASCII punctuation: !"#$%&'()*+,-./:;<=>?@[\]^_`{|}~
inline bool IsAsciiPunct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

// Lowercases ASCII letters only; other bytes (including UTF-8 sequences)
// pass through unchanged.
std::string AsciiLower(std::string_view s);

std::string_view Trim(std::string_view s);

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string_view> Split(std::string_view s, char sep);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string_view> SplitWhitespace(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Number of UTF-8 code points. Continuation bytes are not counted, so a
// malformed sequence still yields a sensible length.
size_t Utf8Length(std::string_view s);

// FNV-1a, 64 bit.
uint64_t Fnv1a64(std::string_view data,
                 uint64_t seed = 0xcbf29ce484222325ULL);

std::string Hex64(uint64_t value);

// Parses a non-negative decimal integer that spans the whole string.
bool ParseUint(std::string_view s, uint64_t* out);

}  // namespace hyperex

#endif  // HYPEREX_TEXT_UTIL_H_
