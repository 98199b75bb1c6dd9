#include "hyperex/hypernym_rules.h"

#include <map>
#include <unordered_map>

#include "hyperex/errors.h"
#include "hyperex/text_util.h"

namespace hyperex {

namespace {

constexpr char kTokenSep = '\x1f';

std::string TokenKey(const std::vector<std::string>& tokens, size_t count) {
  std::string key;
  for (size_t i = 0; i < count; ++i) {
    if (i > 0) key.push_back(kTokenSep);
    key.append(tokens[i]);
  }
  return key;
}

}  // namespace

SuffixMode ParseSuffixMode(std::string_view name) {
  if (name == "char") return SuffixMode::kChar;
  if (name == "token-boundary" || name == "token") {
    return SuffixMode::kTokenBoundary;
  }
  throw InputError("unknown suffix mode: " + std::string(name));
}

bool SuffixHypernym(const Term& hypo, const Term& hyper,
                    const SubtermConfig& cfg) {
  if (hypo.id == hyper.id) return false;
  const std::string a = AsciiLower(hypo.surface);
  const std::string b = AsciiLower(hyper.surface);
  if (b.empty() || b.size() >= a.size()) return false;
  const size_t start = a.size() - b.size();
  if (a.compare(start, b.size(), b) != 0) return false;
  if (cfg.suffix_mode == SuffixMode::kTokenBoundary && a[start - 1] != ' ') {
    return false;
  }
  return true;
}

bool PrefixHypernym(const Term& hypo, const Term& hyper,
                    const SubtermConfig& cfg) {
  if (hypo.id == hyper.id) return false;
  const auto& a = hypo.surface_tokens;
  const auto& b = hyper.surface_tokens;
  if (b.empty() || a.size() <= b.size()) return false;
  for (size_t i = 0; i < b.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return Utf8Length(a[b.size()]) == static_cast<size_t>(cfg.connector_len);
}

std::vector<HypernymPair> SubtermPairs(const TermCatalog& catalog,
                                       const SubtermConfig& cfg) {
  if (cfg.connector_len < 1) throw InputError("connector length must be >= 1");
  std::unordered_map<std::string, TermId> by_surface;
  std::unordered_map<std::string, std::vector<TermId>> by_tokens;
  for (const Term& t : catalog.terms()) {
    by_surface.emplace(AsciiLower(t.surface), t.id);
    by_tokens[TokenKey(t.surface_tokens, t.surface_tokens.size())].push_back(t.id);
  }

  std::map<std::pair<TermId, TermId>, Provenance> found;
  for (const Term& hypo : catalog.terms()) {
    const std::string lower = AsciiLower(hypo.surface);
    for (size_t start = 1; start < lower.size(); ++start) {
      if (cfg.suffix_mode == SuffixMode::kTokenBoundary &&
          lower[start - 1] != ' ') {
        continue;
      }
      auto it = by_surface.find(lower.substr(start));
      if (it != by_surface.end() && it->second != hypo.id) {
        found[{hypo.id, it->second}] = Provenance(Technique::kSuffix);
      }
    }
    const auto& tokens = hypo.surface_tokens;
    for (size_t p = 1; p < tokens.size(); ++p) {
      if (Utf8Length(tokens[p]) != static_cast<size_t>(cfg.connector_len)) {
        continue;
      }
      auto it = by_tokens.find(TokenKey(tokens, p));
      if (it == by_tokens.end()) continue;
      for (TermId hyper : it->second) {
        if (hyper == hypo.id) continue;
        // Suffix takes precedence when both rules fire.
        found.try_emplace({hypo.id, hyper}, Technique::kPrefix);
      }
    }
  }

  std::vector<HypernymPair> pairs;
  pairs.reserve(found.size());
  for (const auto& [key, provenance] : found) {
    pairs.push_back({key.first, key.second, provenance, std::nullopt});
  }
  return pairs;
}

}  // namespace hyperex
