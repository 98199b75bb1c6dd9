#include "hyperex/hypernym_select.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "hyperex/errors.h"
#include "hyperex/text_util.h"

namespace hyperex {

CoocScope ParseCoocScope(std::string_view name) {
  if (name == "all") return CoocScope::kAll;
  if (name == "uncovered") return CoocScope::kUncovered;
  throw InputError("unknown cooc scope: " + std::string(name));
}

RankBy ParseRankBy(std::string_view name) {
  if (name == "df" || name == "docfreq") return RankBy::kDocFreq;
  if (name == "cooc") return RankBy::kCooc;
  throw InputError("unknown ranking: " + std::string(name));
}

CandidateIndex::CandidateIndex(const CorpusStats& stats) : stats_(stats) {
  for (const auto& [key, count] : stats.pairs()) {
    if (count == 0) continue;
    const auto [i, j] = CorpusStats::SplitKey(key);
    partners_[i].emplace_back(j, count);
    partners_[j].emplace_back(i, count);
  }
}

std::vector<TermId> CandidateIndex::Candidates(TermId t) const {
  std::vector<TermId> out;
  auto it = partners_.find(t);
  if (it == partners_.end()) return out;
  const uint64_t df = stats_.DocFreq(t);
  for (const auto& [other, count] : it->second) {
    if (other != t && stats_.DocFreq(other) > df) out.push_back(other);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TermId> CandidateIndex::TopK(TermId t, int k,
                                         const TermCatalog& catalog,
                                         RankBy rank_by) const {
  if (k < 1) throw InputError("k must be >= 1");
  struct Ranked {
    TermId id;
    uint64_t df;
    uint64_t cooc;
    std::string surface;
  };
  std::vector<Ranked> ranked;
  for (TermId c : Candidates(t)) {
    const Term* term = catalog.Find(c);
    ranked.push_back({c, stats_.DocFreq(c), stats_.SentCooc(t, c),
                      term ? AsciiLower(term->surface) : std::to_string(c)});
  }
  std::sort(ranked.begin(), ranked.end(), [&](const Ranked& a, const Ranked& b) {
    if (rank_by == RankBy::kCooc && a.cooc != b.cooc) return a.cooc > b.cooc;
    if (a.df != b.df) return a.df > b.df;
    if (a.surface != b.surface) return a.surface < b.surface;
    return a.id < b.id;
  });
  std::vector<TermId> out;
  for (size_t i = 0; i < ranked.size() && i < static_cast<size_t>(k); ++i) {
    out.push_back(ranked[i].id);
  }
  return out;
}

std::vector<TermId> CandHypernyms(TermId t, const CorpusStats& stats) {
  return CandidateIndex(stats).Candidates(t);
}

std::vector<TermId> TopKHypernyms(TermId t, const CorpusStats& stats,
                                  const TermCatalog& catalog, int k,
                                  RankBy rank_by) {
  return CandidateIndex(stats).TopK(t, k, catalog, rank_by);
}

Taxonomy BuildTaxonomy(const TermCatalog& catalog, const CorpusStats& stats,
                       const SelectConfig& cfg) {
  if (cfg.k < 1) throw InputError("k must be >= 1");
  const TermId root = catalog.root_id();
  std::map<std::pair<TermId, TermId>, HypernymPair> merged;

  std::set<TermId> covered;
  for (const HypernymPair& p : SubtermPairs(catalog, cfg.subterm)) {
    if (p.hypo == root) continue;
    merged.emplace(std::make_pair(p.hypo, p.hyper), p);
    covered.insert(p.hypo);
  }

  const CandidateIndex index(stats);
  for (const Term& term : catalog.terms()) {
    if (term.id == root) continue;
    if (cfg.cooc_scope == CoocScope::kUncovered && covered.count(term.id)) {
      continue;
    }
    for (TermId hyper : index.TopK(term.id, cfg.k, catalog, cfg.rank_by)) {
      auto [it, inserted] = merged.try_emplace(
          std::make_pair(term.id, hyper),
          HypernymPair{term.id, hyper, Provenance(), std::nullopt});
      it->second.provenance.Add(Technique::kCooc);
      it->second.score = stats.DocFreq(hyper);
    }
  }

  if (cfg.attach_orphans) {
    std::set<TermId> has_parent;
    for (const auto& [key, pair] : merged) has_parent.insert(key.first);
    for (const Term& term : catalog.terms()) {
      if (term.id == root || has_parent.count(term.id)) continue;
      merged.emplace(std::make_pair(term.id, root),
                     HypernymPair{term.id, root, Provenance(Technique::kCooc), 0});
    }
  }

  Taxonomy taxonomy;
  taxonomy.root_id = root;
  taxonomy.pairs.reserve(merged.size());
  for (auto& [key, pair] : merged) {
    if (pair.hypo == pair.hyper) {
      throw InvariantError("self-loop on term " + std::to_string(pair.hypo));
    }
    taxonomy.pairs.push_back(pair);
  }
  return taxonomy;
}

void WriteTaxo(const Taxonomy& taxonomy, const TermCatalog& catalog,
               bool with_provenance, std::ostream& out) {
  struct Line {
    const std::string* hypo;
    const std::string* hyper;
    const HypernymPair* pair;
  };
  std::vector<Line> lines;
  lines.reserve(taxonomy.pairs.size());
  for (const HypernymPair& p : taxonomy.pairs) {
    const Term* hypo = catalog.Find(p.hypo);
    const Term* hyper = catalog.Find(p.hyper);
    if (hypo == nullptr || hyper == nullptr) {
      throw InvariantError("taxonomy refers to a term outside the catalog");
    }
    lines.push_back({&hypo->surface, &hyper->surface, &p});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (*a.hypo != *b.hypo) return *a.hypo < *b.hypo;
    return *a.hyper < *b.hyper;
  });
  for (const Line& line : lines) {
    out << *line.hypo << '\t' << *line.hyper;
    if (with_provenance) {
      out << '\t' << line.pair->provenance.ToString() << '\t';
      if (line.pair->score) {
        out << *line.pair->score;
      } else {
        out << '-';
      }
    }
    out << '\n';
  }
}

}  // namespace hyperex
