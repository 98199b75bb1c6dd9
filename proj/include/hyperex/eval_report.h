#ifndef HYPEREX_EVAL_REPORT_H_
#define HYPEREX_EVAL_REPORT_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperex/taxonomy.h"
#include "hyperex/term_catalog.h"

namespace hyperex {

struct GoldStandard {
  // (hyponym, hypernym), lowercased.
  std::set<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> warnings;
};

// `hyponym<TAB>hypernym` lines. Blank lines are ignored; malformed lines and
// self-loops are skipped with a warning. Throws InputError when nothing
// usable remains or the file cannot be read.
GoldStandard LoadGold(const std::string& path);
GoldStandard ParseGold(std::istream& in, const std::string& source);

// One line of a .taxo file, identified by surface rather than id.
struct TaxoEntry {
  std::string hypo;
  std::string hyper;
  Provenance provenance;
  std::optional<uint64_t> score;
};

// Reads 2-column or 4-column (with provenance) .taxo lines.
std::vector<TaxoEntry> ReadTaxo(std::istream& in, const std::string& source);
std::vector<TaxoEntry> LoadTaxo(const std::string& path);
std::vector<TaxoEntry> ToEntries(const Taxonomy& taxonomy,
                                 const TermCatalog& catalog);

struct Recall {
  uint64_t found = 0;
  uint64_t total = 0;

  // 100 * found / total, rounded half up. Zero when total is zero.
  uint64_t Percent() const {
    return total == 0 ? 0 : (200 * found + total) / (2 * total);
  }
  double Exact() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(found) /
                                  static_cast<double>(total);
  }
};

struct EvalReport {
  // Indexed by Technique.
  std::array<uint64_t, 3> produced{};
  std::array<uint64_t, 3> found{};
  uint64_t total_produced = 0;
  uint64_t union_found = 0;
  uint64_t gold_size = 0;
  // Strongly connected components of the produced graph, as surfaces.
  std::vector<std::vector<std::string>> cycles;

  Recall TechniqueRecall(Technique t) const {
    return {found[static_cast<size_t>(t)], gold_size};
  }
  Recall UnionRecall() const { return {union_found, gold_size}; }
};

// Matches produced pairs against the gold set by lowercased surfaces.
EvalReport Score(std::span<const TaxoEntry> taxo, const GoldStandard& gold);

// Every strongly connected component with two or more nodes, plus any
// single node with a self-edge. Each component is sorted ascending and the
// list is ordered by first node.
std::vector<std::vector<uint32_t>> DetectCycles(
    size_t num_nodes, std::span<const std::pair<uint32_t, uint32_t>> edges);
std::vector<std::vector<TermId>> DetectCycles(const Taxonomy& taxonomy);

// Table-style summary for people.
void WriteReportText(const EvalReport& report, const std::string& domain,
                     std::ostream& out);
// Machine-readable: one `metric<TAB>technique<TAB>value` row per number,
// recall rows carry the exact rational and the rounded percentage.
void WriteReportTsv(const EvalReport& report, std::ostream& out);

}  // namespace hyperex

#endif  // HYPEREX_EVAL_REPORT_H_
