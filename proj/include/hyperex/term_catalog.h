#ifndef HYPEREX_TERM_CATALOG_H_
#define HYPEREX_TERM_CATALOG_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperex/normalize.h"

namespace hyperex {

using TermId = uint32_t;

struct Term {
  TermId id = 0;
  std::string surface;
  std::vector<std::string> surface_tokens;
  std::vector<std::string> norm_tokens;
  // False when the normalized form holds nothing but placeholders. Such
  // terms are never matched in text but still take part in the subterm
  // heuristics.
  bool matchable = true;
};

struct NormalizedTerm {
  std::vector<std::string> surface_tokens;
  std::vector<std::string> norm_tokens;
  bool matchable = true;
};

// Runs the corpus pipeline (tokenize, mask, stem) over a term surface.
NormalizedTerm NormalizeTerm(std::string_view surface,
                             const StopwordSet& stops);

// An immutable list of domain terms with a designated root.
class TermCatalog {
 public:
  struct Entry {
    std::optional<TermId> id;
    std::string surface;
    int line = 0;
  };

  // Reads `id<TAB>term` or bare `term` lines. Throws InputError when the
  // file cannot be read or holds no terms.
  static TermCatalog Load(const std::string& path, const std::string& domain,
                          const std::string& root, const StopwordSet& stops);
  static TermCatalog Parse(std::istream& in, const std::string& source,
                           const std::string& domain, const std::string& root,
                           const StopwordSet& stops);
  // Builds a catalog from bare surfaces (ids assigned in order).
  static TermCatalog FromSurfaces(const std::vector<std::string>& surfaces,
                                  const std::string& domain,
                                  const std::string& root,
                                  const StopwordSet& stops);
  static TermCatalog Build(std::vector<Entry> entries, const std::string& domain,
                           const std::string& root, const StopwordSet& stops);

  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  const std::string& domain() const { return domain_; }
  TermId root_id() const { return root_id_; }
  const Term& root() const { return *Find(root_id_); }
  // True when the root was not in the input and had to be appended.
  bool root_inserted() const { return root_inserted_; }

  const Term* Find(TermId id) const;
  // Lookup by case-insensitive surface.
  const Term* FindSurface(std::string_view surface) const;

  // Identifies the normalized contents; stats files carry it.
  const std::string& fingerprint() const { return fingerprint_; }
  const std::string& normalization() const { return normalization_; }

  // Duplicate collapses and other non-fatal findings, one line each.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<Term> terms_;
  std::unordered_map<TermId, size_t> by_id_;
  std::unordered_map<std::string, size_t> by_surface_;
  std::string domain_;
  TermId root_id_ = 0;
  bool root_inserted_ = false;
  std::string fingerprint_;
  std::string normalization_;
  std::vector<std::string> warnings_;
};

}  // namespace hyperex

#endif  // HYPEREX_TERM_CATALOG_H_
