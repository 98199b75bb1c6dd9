#include "hyperex/taxonomy.h"

#include "hyperex/text_util.h"

namespace hyperex {

std::string_view TechniqueName(Technique t) {
  switch (t) {
    case Technique::kSuffix:
      return "suffix";
    case Technique::kPrefix:
      return "prefix";
    case Technique::kCooc:
      return "cooc";
  }
  return "?";
}

std::optional<Technique> ParseTechnique(std::string_view name) {
  for (Technique t : kAllTechniques) {
    if (TechniqueName(t) == name) return t;
  }
  return std::nullopt;
}

std::string Provenance::ToString() const {
  std::string out;
  for (Technique t : kAllTechniques) {
    if (!Has(t)) continue;
    if (!out.empty()) out.push_back(',');
    out.append(TechniqueName(t));
  }
  return out.empty() ? "-" : out;
}

std::optional<Provenance> Provenance::Parse(std::string_view text) {
  Provenance p;
  if (text == "-") return p;
  for (std::string_view part : Split(text, ',')) {
    const std::optional<Technique> t = ParseTechnique(Trim(part));
    if (!t) return std::nullopt;
    p.Add(*t);
  }
  return p;
}

}  // namespace hyperex
