#include "hyperex/cooc_index.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "hyperex/errors.h"
#include "hyperex/text_util.h"

namespace hyperex {

// ---------------------------------------------------------------------------
// TermMatcher

TermMatcher::TermMatcher(const TermCatalog& catalog, Options options)
    : options_(options) {
  nodes_.emplace_back();
  for (const Term& term : catalog.terms()) {
    if (term.matchable) Add(term.id, term.norm_tokens);
  }
  Compile();
}

TermMatcher::TermMatcher(const std::vector<Pattern>& patterns, Options options)
    : options_(options) {
  nodes_.emplace_back();
  for (const auto& [id, tokens] : patterns) {
    const bool matchable =
        std::any_of(tokens.begin(), tokens.end(),
                    [](const std::string& t) { return t != kPlaceholder; });
    if (matchable) Add(id, tokens);
  }
  Compile();
}

uint32_t TermMatcher::Child(uint32_t node, uint32_t token) const {
  const auto& next = nodes_[node].next;
  auto it = std::lower_bound(
      next.begin(), next.end(), token,
      [](const std::pair<uint32_t, uint32_t>& e, uint32_t t) { return e.first < t; });
  return (it != next.end() && it->first == token) ? it->second : 0;
}

uint32_t TermMatcher::TokenId(std::string_view token) const {
  auto it = vocab_.find(token);
  return it == vocab_.end() ? kNoToken : it->second;
}

void TermMatcher::Add(TermId id, const std::vector<std::string>& tokens) {
  uint32_t node = 0;
  for (const std::string& token : tokens) {
    auto [vit, inserted] =
        vocab_.emplace(token, static_cast<uint32_t>(vocab_.size()));
    const uint32_t tok = vit->second;
    uint32_t child = Child(node, tok);
    if (child == 0) {
      child = static_cast<uint32_t>(nodes_.size());
      nodes_.emplace_back();
      nodes_.back().depth = nodes_[node].depth + 1;
      auto& next = nodes_[node].next;
      next.insert(std::lower_bound(next.begin(), next.end(),
                                   std::make_pair(tok, 0u)),
                  {tok, child});
    }
    node = child;
  }
  auto& outputs = nodes_[node].outputs;
  if (std::find(outputs.begin(), outputs.end(), id) == outputs.end()) {
    outputs.push_back(id);
    ++pattern_count_;
  }
}

void TermMatcher::Compile() {
  std::deque<uint32_t> queue;
  for (const auto& [tok, child] : nodes_[0].next) {
    nodes_[child].fail = 0;
    nodes_[child].dict = 0;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    const uint32_t node = queue.front();
    queue.pop_front();
    for (const auto& [tok, child] : nodes_[node].next) {
      uint32_t f = nodes_[node].fail;
      while (f != 0 && Child(f, tok) == 0) f = nodes_[f].fail;
      uint32_t target = Child(f, tok);
      if (target == child) target = 0;
      nodes_[child].fail = target;
      nodes_[child].dict =
          nodes_[target].outputs.empty() ? nodes_[target].dict : target;
      queue.push_back(child);
    }
  }
}

std::vector<Occurrence> TermMatcher::Find(
    std::span<const std::string_view> tokens) const {
  std::vector<Occurrence> found;
  uint32_t state = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const uint32_t tok = TokenId(tokens[i]);
    if (tok == kNoToken) {
      state = 0;
      continue;
    }
    while (state != 0 && Child(state, tok) == 0) state = nodes_[state].fail;
    state = Child(state, tok);
    for (uint32_t n = nodes_[state].outputs.empty() ? nodes_[state].dict : state;
         n != 0; n = nodes_[n].dict) {
      const uint32_t depth = nodes_[n].depth;
      const uint32_t start = static_cast<uint32_t>(i + 1 - depth);
      for (TermId id : nodes_[n].outputs) found.push_back({id, start, depth});
    }
  }
  if (!options_.nested && found.size() > 1) {
    std::vector<Occurrence> outer;
    for (const Occurrence& o : found) {
      const bool inside = std::any_of(
          found.begin(), found.end(), [&](const Occurrence& p) {
            return p.start <= o.start &&
                   o.start + o.length <= p.start + p.length &&
                   p.length > o.length;
          });
      if (!inside) outer.push_back(o);
    }
    found = std::move(outer);
  }
  std::sort(found.begin(), found.end(),
            [](const Occurrence& a, const Occurrence& b) {
              return a.start != b.start ? a.start < b.start : a.term < b.term;
            });
  return found;
}

std::vector<Occurrence> TermMatcher::Find(
    std::span<const std::string> tokens) const {
  std::vector<std::string_view> views(tokens.begin(), tokens.end());
  return Find(std::span<const std::string_view>(views));
}

// ---------------------------------------------------------------------------
// CorpusStats

CorpusStats::CorpusStats(const TermCatalog& catalog)
    : fingerprint_(catalog.fingerprint()) {
  for (const Term& t : catalog.terms()) terms_[t.id];
}

CorpusStats::CorpusStats(std::string catalog_fingerprint,
                         std::span<const TermId> ids)
    : fingerprint_(std::move(catalog_fingerprint)) {
  for (TermId id : ids) terms_[id];
}

void CorpusStats::AddDocument(
    const std::vector<std::vector<Occurrence>>& sentences) {
  ++total_docs_;
  std::vector<TermId> in_doc;
  std::vector<TermId> present;
  for (const std::vector<Occurrence>& occurrences : sentences) {
    ++total_sentences_;
    present.clear();
    for (const Occurrence& o : occurrences) {
      ++terms_[o.term].term_freq;
      present.push_back(o.term);
    }
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    for (size_t a = 0; a < present.size(); ++a) {
      ++terms_[present[a]].sent_freq;
      for (size_t b = a + 1; b < present.size(); ++b) {
        ++pairs_[PairKey(present[a], present[b])];
      }
    }
    in_doc.insert(in_doc.end(), present.begin(), present.end());
  }
  std::sort(in_doc.begin(), in_doc.end());
  in_doc.erase(std::unique(in_doc.begin(), in_doc.end()), in_doc.end());
  for (TermId id : in_doc) ++terms_[id].doc_freq;
}

void CorpusStats::Merge(const CorpusStats& other) {
  if (fingerprint_ != other.fingerprint_) {
    throw InvariantError("cannot merge stats built against different catalogs (" +
                         fingerprint_ + " vs " + other.fingerprint_ + ")");
  }
  total_docs_ += other.total_docs_;
  total_sentences_ += other.total_sentences_;
  for (const auto& [id, c] : other.terms_) {
    TermCounts& mine = terms_[id];
    mine.doc_freq += c.doc_freq;
    mine.term_freq += c.term_freq;
    mine.sent_freq += c.sent_freq;
  }
  for (const auto& [key, count] : other.pairs_) pairs_[key] += count;
}

TermCounts CorpusStats::Counts(TermId id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? TermCounts() : it->second;
}

uint64_t CorpusStats::SentCooc(TermId i, TermId j) const {
  if (i == j) return 0;
  auto it = pairs_.find(PairKey(i, j));
  return it == pairs_.end() ? 0 : it->second;
}

void CorpusStats::SetTotals(uint64_t docs, uint64_t sentences) {
  total_docs_ = docs;
  total_sentences_ = sentences;
}

void CorpusStats::SetCounts(TermId id, const TermCounts& counts) {
  terms_[id] = counts;
}

void CorpusStats::SetSentCooc(TermId i, TermId j, uint64_t count) {
  if (i == j) throw InvariantError("self co-occurrence is not tracked");
  if (count == 0) {
    pairs_.erase(PairKey(i, j));
  } else {
    pairs_[PairKey(i, j)] = count;
  }
}

CorpusStats Merge(const CorpusStats& a, const CorpusStats& b) {
  CorpusStats out = a;
  out.Merge(b);
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

void WriteStats(const CorpusStats& stats, std::ostream& out) {
  std::ostringstream body;
  body << "#version\t" << kStatsVersion << "\n"
       << "#catalog-fingerprint\t" << stats.catalog_fingerprint() << "\n"
       << "#total_docs\t" << stats.total_docs() << "\n"
       << "#total_sentences\t" << stats.total_sentences() << "\n";
  std::vector<TermId> ids;
  ids.reserve(stats.terms().size());
  for (const auto& [id, c] : stats.terms()) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  for (TermId id : ids) {
    const TermCounts c = stats.Counts(id);
    body << "T\t" << id << "\t" << c.doc_freq << "\t" << c.term_freq << "\t"
         << c.sent_freq << "\n";
  }
  std::vector<std::pair<uint64_t, uint64_t>> pairs(stats.pairs().begin(),
                                                   stats.pairs().end());
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [key, count] : pairs) {
    const auto [i, j] = CorpusStats::SplitKey(key);
    body << "P\t" << i << "\t" << j << "\t" << count << "\n";
  }
  const std::string text = body.str();
  out << text << "#checksum\t" << Hex64(Fnv1a64(text)) << "\n";
}

CorpusStats ReadStats(std::istream& in, const std::string& source) {
  const auto fail = [&](int line, const std::string& what) -> InputError {
    return InputError(source + ":" + std::to_string(line) + ": " + what);
  };
  const auto number = [&](std::string_view field, int line) {
    uint64_t v = 0;
    if (!ParseUint(field, &v)) throw fail(line, "bad number '" + std::string(field) + "'");
    return v;
  };

  uint64_t hash = Fnv1a64("");
  std::string line;
  int line_no = 0;
  std::string fingerprint;
  uint64_t docs = 0;
  uint64_t sentences = 0;
  bool have_version = false;
  bool checksum_ok = false;
  std::vector<std::pair<TermId, TermCounts>> term_rows;
  std::vector<std::tuple<TermId, TermId, uint64_t>> pair_rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (checksum_ok) throw fail(line_no, "data after checksum");
    const std::vector<std::string_view> f = Split(line, '\t');
    if (f[0] == "#checksum") {
      if (f.size() != 2 || f[1] != Hex64(hash)) {
        throw fail(line_no, "checksum mismatch");
      }
      checksum_ok = true;
      continue;
    }
    hash = Fnv1a64(line, hash);
    hash = Fnv1a64("\n", hash);
    if (line_no == 1) {
      if (f.size() != 2 || f[0] != "#version") throw fail(1, "missing #version");
      if (f[1] != std::to_string(kStatsVersion)) {
        throw fail(1, "unsupported stats version " + std::string(f[1]));
      }
      have_version = true;
      continue;
    }
    if (f[0] == "#catalog-fingerprint" && f.size() == 2) {
      fingerprint = std::string(f[1]);
    } else if (f[0] == "#total_docs" && f.size() == 2) {
      docs = number(f[1], line_no);
    } else if (f[0] == "#total_sentences" && f.size() == 2) {
      sentences = number(f[1], line_no);
    } else if (f[0] == "T" && f.size() == 5) {
      const uint64_t id = number(f[1], line_no);
      if (id > UINT32_MAX) throw fail(line_no, "term id out of range");
      term_rows.push_back({static_cast<TermId>(id),
                           {number(f[2], line_no), number(f[3], line_no),
                            number(f[4], line_no)}});
    } else if (f[0] == "P" && f.size() == 4) {
      const uint64_t i = number(f[1], line_no);
      const uint64_t j = number(f[2], line_no);
      if (i >= j || j > UINT32_MAX) throw fail(line_no, "pair ids must satisfy i < j");
      pair_rows.emplace_back(static_cast<TermId>(i), static_cast<TermId>(j),
                             number(f[3], line_no));
    } else {
      throw fail(line_no, "unrecognized record");
    }
  }
  if (!have_version) throw InputError(source + ": empty or not a stats file");
  if (!checksum_ok) throw InputError(source + ": truncated (no checksum line)");

  CorpusStats stats(fingerprint, {});
  stats.SetTotals(docs, sentences);
  for (const auto& [id, counts] : term_rows) stats.SetCounts(id, counts);
  for (const auto& [i, j, count] : pair_rows) stats.SetSentCooc(i, j, count);
  return stats;
}

void SaveStats(const CorpusStats& stats, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write stats file: " + path);
  WriteStats(stats, out);
  if (!out) throw InputError("error writing stats file: " + path);
}

CorpusStats LoadStats(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read stats file: " + path);
  return ReadStats(in, path);
}

}  // namespace hyperex
