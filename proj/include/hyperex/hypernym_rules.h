#ifndef HYPEREX_HYPERNYM_RULES_H_
#define HYPEREX_HYPERNYM_RULES_H_

#include <string_view>
#include <vector>

#include "hyperex/taxonomy.h"
#include "hyperex/term_catalog.h"

namespace hyperex {

enum class SuffixMode {
  // Any strict character suffix ("licorice" < "rice").
  kChar,
  // The suffix must start right after a space.
  kTokenBoundary,
};

SuffixMode ParseSuffixMode(std::string_view name);

struct SubtermConfig {
  SuffixMode suffix_mode = SuffixMode::kChar;
  // Length in characters of the token that must follow the hypernym in the
  // prefix rule ("helmet of ...", "caterpillar d9").
  int connector_len = 2;
};

// hyper's surface is a strict suffix of hypo's (case-insensitive).
bool SuffixHypernym(const Term& hypo, const Term& hyper,
                    const SubtermConfig& cfg);

// hypo's tokens start with all of hyper's tokens, and the next token of hypo
// is exactly connector_len characters long.
bool PrefixHypernym(const Term& hypo, const Term& hyper,
                    const SubtermConfig& cfg);

// Every ordered pair accepted by the suffix or prefix rule, sorted by
// (hypo id, hyper id). A pair matching both rules is reported as suffix.
// Runs in O(|T| * term length) using hash lookups instead of the full
// pairwise loop.
std::vector<HypernymPair> SubtermPairs(const TermCatalog& catalog,
                                       const SubtermConfig& cfg);

}  // namespace hyperex

#endif  // HYPEREX_HYPERNYM_RULES_H_
