#ifndef HYPEREX_TAXONOMY_H_
#define HYPEREX_TAXONOMY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperex/term_catalog.h"

namespace hyperex {

enum class Technique : uint8_t { kSuffix = 0, kPrefix = 1, kCooc = 2 };

inline constexpr Technique kAllTechniques[] = {
    Technique::kSuffix, Technique::kPrefix, Technique::kCooc};

std::string_view TechniqueName(Technique t);
std::optional<Technique> ParseTechnique(std::string_view name);

// The set of techniques that produced a pair.
class Provenance {
 public:
  Provenance() = default;
  explicit Provenance(Technique t) { Add(t); }

  void Add(Technique t) { bits_ |= Bit(t); }
  void Add(Provenance other) { bits_ |= other.bits_; }
  bool Has(Technique t) const { return (bits_ & Bit(t)) != 0; }
  bool empty() const { return bits_ == 0; }

  // "suffix", "suffix,cooc", ... in technique order; "-" when empty.
  std::string ToString() const;
  // Inverse of ToString. Returns nullopt on an unknown name.
  static std::optional<Provenance> Parse(std::string_view text);

  bool operator==(const Provenance&) const = default;

 private:
  static uint8_t Bit(Technique t) {
    return static_cast<uint8_t>(1u << static_cast<unsigned>(t));
  }
  uint8_t bits_ = 0;
};

struct HypernymPair {
  TermId hypo = 0;
  TermId hyper = 0;
  Provenance provenance;
  // Doc frequency of the hypernym for co-occurrence pairs.
  std::optional<uint64_t> score;

  bool operator==(const HypernymPair&) const = default;
};

// Pairs sorted by (hypo, hyper) id with no duplicates and no self-loops.
// Cycles are allowed.
struct Taxonomy {
  std::vector<HypernymPair> pairs;
  TermId root_id = 0;
};

}  // namespace hyperex

#endif  // HYPEREX_TAXONOMY_H_
