#include "hyperex/eval_report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

#include "hyperex/errors.h"
#include "hyperex/text_util.h"

namespace hyperex {

GoldStandard LoadGold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read gold file: " + path);
  return ParseGold(in, path);
}

GoldStandard ParseGold(std::istream& in, const std::string& source) {
  GoldStandard gold;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string_view> f = Split(line, '\t');
    const std::string where = source + ":" + std::to_string(line_no);
    if (f.size() != 2 || Trim(f[0]).empty() || Trim(f[1]).empty()) {
      gold.warnings.push_back(where + ": malformed gold line skipped");
      continue;
    }
    std::string hypo = AsciiLower(Trim(f[0]));
    std::string hyper = AsciiLower(Trim(f[1]));
    if (hypo == hyper) {
      gold.warnings.push_back(where + ": self-loop skipped");
      continue;
    }
    gold.pairs.emplace(std::move(hypo), std::move(hyper));
  }
  if (gold.pairs.empty()) throw InputError(source + ": gold standard is empty");
  return gold;
}

std::vector<TaxoEntry> ReadTaxo(std::istream& in, const std::string& source) {
  std::vector<TaxoEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string_view> f = Split(line, '\t');
    const std::string where = source + ":" + std::to_string(line_no);
    if (f.size() != 2 && f.size() != 4) {
      throw InputError(where + ": expected 2 or 4 tab-separated fields");
    }
    TaxoEntry e;
    e.hypo = std::string(Trim(f[0]));
    e.hyper = std::string(Trim(f[1]));
    if (f.size() == 4) {
      const std::optional<Provenance> p = Provenance::Parse(f[2]);
      if (!p) throw InputError(where + ": unknown provenance '" + std::string(f[2]) + "'");
      e.provenance = *p;
      uint64_t score = 0;
      if (f[3] != "-") {
        if (!ParseUint(f[3], &score)) throw InputError(where + ": bad score");
        e.score = score;
      }
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<TaxoEntry> LoadTaxo(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read taxonomy file: " + path);
  return ReadTaxo(in, path);
}

std::vector<TaxoEntry> ToEntries(const Taxonomy& taxonomy,
                                 const TermCatalog& catalog) {
  std::vector<TaxoEntry> entries;
  entries.reserve(taxonomy.pairs.size());
  for (const HypernymPair& p : taxonomy.pairs) {
    const Term* hypo = catalog.Find(p.hypo);
    const Term* hyper = catalog.Find(p.hyper);
    if (hypo == nullptr || hyper == nullptr) {
      throw InvariantError("taxonomy refers to a term outside the catalog");
    }
    entries.push_back({hypo->surface, hyper->surface, p.provenance, p.score});
  }
  return entries;
}

EvalReport Score(std::span<const TaxoEntry> taxo, const GoldStandard& gold) {
  std::map<std::pair<std::string, std::string>, Provenance> produced;
  for (const TaxoEntry& e : taxo) {
    std::string hypo = AsciiLower(e.hypo);
    std::string hyper = AsciiLower(e.hyper);
    if (hypo == hyper) continue;
    produced[{std::move(hypo), std::move(hyper)}].Add(e.provenance);
  }

  EvalReport report;
  report.gold_size = gold.pairs.size();
  report.total_produced = produced.size();
  for (const auto& [pair, provenance] : produced) {
    const bool hit = gold.pairs.count(pair) > 0;
    if (hit) ++report.union_found;
    for (Technique t : kAllTechniques) {
      if (!provenance.Has(t)) continue;
      ++report.produced[static_cast<size_t>(t)];
      if (hit) ++report.found[static_cast<size_t>(t)];
    }
  }

  // Node ids follow sorted surface order, so components come out in a
  // stable order.
  std::map<std::string, uint32_t> node_of;
  for (const auto& [pair, provenance] : produced) {
    node_of.emplace(pair.first, 0);
    node_of.emplace(pair.second, 0);
  }
  std::vector<const std::string*> surface_of;
  for (auto& [surface, id] : node_of) {
    id = static_cast<uint32_t>(surface_of.size());
    surface_of.push_back(&surface);
  }
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(produced.size());
  for (const auto& [pair, provenance] : produced) {
    edges.emplace_back(node_of[pair.first], node_of[pair.second]);
  }
  for (const auto& component : DetectCycles(surface_of.size(), edges)) {
    std::vector<std::string> names;
    for (uint32_t n : component) names.push_back(*surface_of[n]);
    report.cycles.push_back(std::move(names));
  }
  return report;
}

std::vector<std::vector<uint32_t>> DetectCycles(
    size_t num_nodes, std::span<const std::pair<uint32_t, uint32_t>> edges) {
  std::vector<std::vector<uint32_t>> adj(num_nodes);
  std::vector<bool> self_loop(num_nodes, false);
  for (const auto& [from, to] : edges) {
    if (from >= num_nodes || to >= num_nodes) {
      throw InvariantError("edge endpoint out of range");
    }
    adj[from].push_back(to);
    if (from == to) self_loop[from] = true;
  }

  // Iterative Tarjan.
  constexpr uint32_t kUnvisited = UINT32_MAX;
  std::vector<uint32_t> index(num_nodes, kUnvisited);
  std::vector<uint32_t> low(num_nodes, 0);
  std::vector<bool> on_stack(num_nodes, false);
  std::vector<uint32_t> stack;
  std::vector<std::pair<uint32_t, size_t>> call;  // (node, next edge)
  std::vector<std::vector<uint32_t>> components;
  uint32_t counter = 0;

  for (uint32_t start = 0; start < num_nodes; ++start) {
    if (index[start] != kUnvisited) continue;
    call.emplace_back(start, 0);
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < adj[v].size()) {
        const uint32_t w = adj[v][next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const uint32_t done = v;
      call.pop_back();
      if (!call.empty()) {
        const uint32_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] != index[done]) continue;
      std::vector<uint32_t> component;
      uint32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != done);
      if (component.size() >= 2 || self_loop[done]) {
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  std::sort(components.begin(), components.end());
  return components;
}

std::vector<std::vector<TermId>> DetectCycles(const Taxonomy& taxonomy) {
  std::map<TermId, uint32_t> node_of;
  for (const HypernymPair& p : taxonomy.pairs) {
    node_of.emplace(p.hypo, 0);
    node_of.emplace(p.hyper, 0);
  }
  std::vector<TermId> id_of;
  for (auto& [id, node] : node_of) {
    node = static_cast<uint32_t>(id_of.size());
    id_of.push_back(id);
  }
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (const HypernymPair& p : taxonomy.pairs) {
    edges.emplace_back(node_of[p.hypo], node_of[p.hyper]);
  }
  std::vector<std::vector<TermId>> out;
  for (const auto& component : DetectCycles(id_of.size(), edges)) {
    std::vector<TermId> ids;
    for (uint32_t n : component) ids.push_back(id_of[n]);
    out.push_back(std::move(ids));
  }
  return out;
}

namespace {

std::string Percent(const Recall& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%llu%% (%.2f%%)",
                static_cast<unsigned long long>(r.Percent()), r.Exact());
  return buf;
}

std::string Pad(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

void WriteReportText(const EvalReport& report, const std::string& domain,
                     std::ostream& out) {
  out << "domain: " << domain << "\n\n";
  out << Pad("technique", 11) << Pad("produced", 10) << Pad("gold hits", 11)
      << "recall\n";
  for (Technique t : kAllTechniques) {
    const size_t i = static_cast<size_t>(t);
    out << Pad(std::string(TechniqueName(t)), 11)
        << Pad(std::to_string(report.produced[i]), 10)
        << Pad(std::to_string(report.found[i]), 11)
        << Percent(report.TechniqueRecall(t)) << "\n";
  }
  out << Pad("union", 11) << Pad(std::to_string(report.total_produced), 10)
      << Pad(std::to_string(report.union_found), 11)
      << Percent(report.UnionRecall()) << "\n\n";
  out << "gold to find: " << report.gold_size << "\n";
  out << "cycles: " << report.cycles.size() << "\n";
  for (const auto& cycle : report.cycles) {
    out << "  {";
    for (size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) out << ", ";
      out << cycle[i];
    }
    out << "}\n";
  }
}

void WriteReportTsv(const EvalReport& report, std::ostream& out) {
  out << "gold_size\t-\t" << report.gold_size << "\n";
  for (Technique t : kAllTechniques) {
    out << "produced\t" << TechniqueName(t) << "\t"
        << report.produced[static_cast<size_t>(t)] << "\n";
  }
  out << "produced\ttotal\t" << report.total_produced << "\n";
  for (Technique t : kAllTechniques) {
    out << "found\t" << TechniqueName(t) << "\t"
        << report.found[static_cast<size_t>(t)] << "\n";
  }
  out << "found\tunion\t" << report.union_found << "\n";
  const auto recall_row = [&](std::string_view name, const Recall& r) {
    char exact[32];
    std::snprintf(exact, sizeof(exact), "%.6f", r.Exact());
    out << "recall\t" << name << "\t" << r.found << "/" << r.total << "\t"
        << exact << "\t" << r.Percent() << "\n";
  };
  for (Technique t : kAllTechniques) {
    recall_row(TechniqueName(t), report.TechniqueRecall(t));
  }
  recall_row("union", report.UnionRecall());
  out << "cycles\t-\t" << report.cycles.size() << "\n";
  for (size_t i = 0; i < report.cycles.size(); ++i) {
    out << "cycle\t" << i << "\t";
    for (size_t j = 0; j < report.cycles[i].size(); ++j) {
      if (j > 0) out << '|';
      out << report.cycles[i][j];
    }
    out << "\n";
  }
}

}  // namespace hyperex
