#include "hyperex/term_catalog.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "hyperex/corpus_ingest.h"
#include "hyperex/errors.h"
#include "hyperex/text_util.h"

namespace hyperex {

NormalizedTerm NormalizeTerm(std::string_view surface,
                             const StopwordSet& stops) {
  NormalizedTerm out;
  out.surface_tokens = Tokenize(surface);
  out.norm_tokens = NormalizeTokens(out.surface_tokens, stops);
  out.matchable = std::any_of(
      out.norm_tokens.begin(), out.norm_tokens.end(),
      [](const std::string& t) { return t != kPlaceholder; });
  return out;
}

TermCatalog TermCatalog::Load(const std::string& path,
                              const std::string& domain,
                              const std::string& root,
                              const StopwordSet& stops) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read terms file: " + path);
  return Parse(in, path, domain, root, stops);
}

TermCatalog TermCatalog::Parse(std::istream& in, const std::string& source,
                               const std::string& domain,
                               const std::string& root,
                               const StopwordSet& stops) {
  std::vector<Entry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (Trim(view).empty()) continue;
    Entry entry;
    entry.line = line_no;
    // Look for the separator before trimming so "12<TAB>" stays an error.
    const size_t tab = view.find('\t');
    if (tab != std::string_view::npos) {
      uint64_t id = 0;
      if (!ParseUint(Trim(view.substr(0, tab)), &id) || id > UINT32_MAX) {
        throw InputError(source + ":" + std::to_string(line_no) +
                         ": bad term id");
      }
      entry.id = static_cast<TermId>(id);
      view = Trim(view.substr(tab + 1));
      if (view.empty()) {
        throw InputError(source + ":" + std::to_string(line_no) +
                         ": empty term");
      }
    }
    entry.surface = std::string(Trim(view));
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw InputError(source + ": no terms");
  return Build(std::move(entries), domain, root, stops);
}

TermCatalog TermCatalog::FromSurfaces(const std::vector<std::string>& surfaces,
                                      const std::string& domain,
                                      const std::string& root,
                                      const StopwordSet& stops) {
  std::vector<Entry> entries;
  int line = 0;
  for (const std::string& s : surfaces) entries.push_back({std::nullopt, s, ++line});
  return Build(std::move(entries), domain, root, stops);
}

TermCatalog TermCatalog::Build(std::vector<Entry> entries,
                               const std::string& domain,
                               const std::string& root,
                               const StopwordSet& stops) {
  TermCatalog catalog;
  catalog.domain_ = domain;
  catalog.normalization_ = NormalizationFingerprint(stops);

  // Collapse duplicate surfaces, keeping the first occurrence.
  std::unordered_map<std::string, int> first_line;
  std::vector<Entry> kept;
  for (Entry& e : entries) {
    const std::string key = AsciiLower(e.surface);
    auto [it, inserted] = first_line.emplace(key, e.line);
    if (!inserted) {
      catalog.warnings_.push_back("line " + std::to_string(e.line) +
                                  " duplicates line " +
                                  std::to_string(it->second) + ": '" +
                                  e.surface + "' (dropped)");
      continue;
    }
    kept.push_back(std::move(e));
  }

  std::set<TermId> used;
  int64_t max_id = -1;
  for (const Entry& e : kept) {
    if (!e.id) continue;
    if (!used.insert(*e.id).second) {
      throw InputError("line " + std::to_string(e.line) + ": duplicate term id " +
                       std::to_string(*e.id));
    }
    max_id = std::max<int64_t>(max_id, *e.id);
  }
  TermId next_id = static_cast<TermId>(max_id + 1);

  const auto add = [&](TermId id, const std::string& surface) {
    Term term;
    term.id = id;
    term.surface = surface;
    NormalizedTerm norm = NormalizeTerm(surface, stops);
    term.surface_tokens = std::move(norm.surface_tokens);
    term.norm_tokens = std::move(norm.norm_tokens);
    term.matchable = norm.matchable;
    catalog.by_id_[id] = catalog.terms_.size();
    catalog.by_surface_[AsciiLower(surface)] = catalog.terms_.size();
    catalog.terms_.push_back(std::move(term));
  };
  for (const Entry& e : kept) add(e.id ? *e.id : next_id++, e.surface);

  const std::string root_key = AsciiLower(Trim(root));
  if (root_key.empty()) throw InputError("root term is empty");
  if (auto it = catalog.by_surface_.find(root_key);
      it != catalog.by_surface_.end()) {
    catalog.root_id_ = catalog.terms_[it->second].id;
  } else {
    catalog.root_id_ = next_id++;
    add(catalog.root_id_, std::string(Trim(root)));
    catalog.root_inserted_ = true;
  }

  std::vector<const Term*> ordered;
  for (const Term& t : catalog.terms_) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](const Term* a, const Term* b) { return a->id < b->id; });
  uint64_t h = Fnv1a64(catalog.normalization_);
  for (const Term* t : ordered) {
    h = Fnv1a64(std::to_string(t->id) + "\t" + Join(t->norm_tokens, " ") + "\n",
                h);
  }
  catalog.fingerprint_ = Hex64(h);
  return catalog;
}

const Term* TermCatalog::Find(TermId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &terms_[it->second];
}

const Term* TermCatalog::FindSurface(std::string_view surface) const {
  auto it = by_surface_.find(AsciiLower(surface));
  return it == by_surface_.end() ? nullptr : &terms_[it->second];
}

}  // namespace hyperex
