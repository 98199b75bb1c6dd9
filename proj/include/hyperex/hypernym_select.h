#ifndef HYPEREX_HYPERNYM_SELECT_H_
#define HYPEREX_HYPERNYM_SELECT_H_

#include <iosfwd>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperex/cooc_index.h"
#include "hyperex/hypernym_rules.h"
#include "hyperex/taxonomy.h"
#include "hyperex/term_catalog.h"

namespace hyperex {

enum class CoocScope {
  // Co-occurrence selection runs for every term.
  kAll,
  // Only for terms that got no suffix/prefix hypernym.
  kUncovered,
};

enum class RankBy {
  // Largest document frequency first.
  kDocFreq,
  // Largest sentence co-occurrence count first (doc frequency breaks ties).
  kCooc,
};

CoocScope ParseCoocScope(std::string_view name);
RankBy ParseRankBy(std::string_view name);

struct SelectConfig {
  int k = 3;
  CoocScope cooc_scope = CoocScope::kAll;
  bool attach_orphans = true;
  RankBy rank_by = RankBy::kDocFreq;
  SubtermConfig subterm;
};

// Adjacency view of the co-occurrence pairs, built once per stats object.
class CandidateIndex {
 public:
  explicit CandidateIndex(const CorpusStats& stats);

  // Terms that share a sentence with `t` and appear in strictly more
  // documents. Sorted by id.
  std::vector<TermId> Candidates(TermId t) const;

  // The best `k` candidates. Ties are broken by lowercased surface, then id.
  std::vector<TermId> TopK(TermId t, int k, const TermCatalog& catalog,
                           RankBy rank_by = RankBy::kDocFreq) const;

 private:
  const CorpusStats& stats_;
  std::unordered_map<TermId, std::vector<std::pair<TermId, uint64_t>>> partners_;
};

std::vector<TermId> CandHypernyms(TermId t, const CorpusStats& stats);
std::vector<TermId> TopKHypernyms(TermId t, const CorpusStats& stats,
                                  const TermCatalog& catalog, int k = 3,
                                  RankBy rank_by = RankBy::kDocFreq);

// Subterm pairs plus the top-k co-occurrence hypernyms of each term, merged
// per (hypo, hyper) with their provenances. The root never gets a hypernym.
Taxonomy BuildTaxonomy(const TermCatalog& catalog, const CorpusStats& stats,
                       const SelectConfig& cfg);

// One `hypo<TAB>hyper` line per pair, sorted by (hypo surface, hyper surface).
// With provenance, adds the technique list and the score ("-" if unset).
void WriteTaxo(const Taxonomy& taxonomy, const TermCatalog& catalog,
               bool with_provenance, std::ostream& out);

}  // namespace hyperex

#endif  // HYPEREX_HYPERNYM_SELECT_H_
