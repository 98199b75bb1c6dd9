// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// value, the tolerance and the runtime. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperex/cooc_index.h"
#include "hyperex/eval_report.h"
#include "hyperex/hypernym_rules.h"
#include "hyperex/hypernym_select.h"
#include "hyperex/normalize.h"
#include "hyperex/pipeline.h"
#include "testing/fixtures.h"
#include "testing/oracles.h"

namespace hyperex {
namespace {

namespace fs = std::filesystem;

constexpr double kSubtermSeconds = 1.0;
constexpr double kSelectSeconds = 1.0;
constexpr double kStatsOracleSeconds = 60.0;
constexpr double kEvalSeconds = 5.0;
constexpr double kRecallTolerancePoints = 1.0;
constexpr double kCycleSeconds = 10.0;
constexpr double kStemSeconds = 5.0;
constexpr double kMinStatsMbPerSecond = 10.0;
constexpr int64_t kSyntheticDumpBytes = 50'000'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit;  // seconds; 0 for none
  std::function<Outcome()> run;
};

Term MakeTerm(TermId id, const std::string& surface) {
  const NormalizedTerm n = NormalizeTerm(surface, StopwordSet::Smart());
  return {id, surface, n.surface_tokens, n.norm_tokens, n.matchable};
}

Outcome SubtermCases() {
  struct Case {
    const char* hypo;
    const char* hyper;
    bool expected;
  };
  const Case cases[] = {
      {"communications satellite", "satellite", true},
      {"licorice", "rice", true},
      {"helmet of coşofeneşti", "helmet", true},
      {"caterpillar d9", "caterpillar", true},
      {"fortimicin b", "fortimicin", false},
      {"ginsenoside c-y", "ginsenoside", false},
  };
  const SubtermConfig cfg;
  int correct = 0;
  std::string wrong;
  for (const Case& c : cases) {
    const Term hypo = MakeTerm(1, c.hypo);
    const Term hyper = MakeTerm(2, c.hyper);
    const bool got = SuffixHypernym(hypo, hyper, cfg) || PrefixHypernym(hypo, hyper, cfg);
    // The pair-level function must agree with the single-pair rules.
    const TermCatalog catalog = TermCatalog::FromSurfaces(
        {c.hypo, c.hyper}, c.hyper, c.hyper, StopwordSet::Smart());
    const bool listed = !SubtermPairs(catalog, cfg).empty();
    if (got == c.expected && listed == c.expected) {
      ++correct;
    } else {
      wrong += std::string(" ") + c.hypo;
    }
  }
  return {correct == 6, std::to_string(correct) + "/6 cases exact" + wrong};
}

Outcome BiblicalFixture() {
  const TermCatalog catalog = TermCatalog::FromSurfaces(
      {"biblical studies", "theology", "history", "religion", "music"},
      "science", "science", StopwordSet::Smart());
  std::vector<TermId> ids;
  for (const Term& t : catalog.terms()) ids.push_back(t.id);
  CorpusStats stats(catalog.fingerprint(), ids);
  const uint64_t df[] = {887, 21977, 383927, 64044, 412791};
  for (TermId id = 0; id < 5; ++id) stats.SetCounts(id, {df[id], df[id], df[id]});
  const uint64_t cooc[] = {215, 111, 50, 43};
  for (TermId id = 1; id < 5; ++id) stats.SetSentCooc(0, id, cooc[id - 1]);

  const auto cand = CandHypernyms(0, stats);
  const auto top = TopKHypernyms(0, stats, catalog, 3);
  std::string got;
  for (TermId id : top) {
    got += (got.empty() ? "" : ",") + catalog.Find(id)->norm_tokens[0];
  }
  const bool ok = cand == std::vector<TermId>{1, 2, 3, 4} &&
                  top == std::vector<TermId>{4, 2, 3};
  return {ok, std::to_string(cand.size()) + " candidates; top3=[" + got + "]"};
}

Outcome StatsOracle() {
  std::mt19937_64 rng(20150604);
  int agree = 0;
  int merges = 0;
  for (int round = 0; round < 100; ++round) {
    const auto corpus = testing::RandomMiniCorpus(rng, 200, 50, 30);
    std::vector<TermId> ids;
    for (const auto& p : corpus.patterns) ids.push_back(p.first);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const TermMatcher matcher(corpus.patterns, {});
    const CorpusStats fast = testing::CountWithMatcher(corpus.docs, matcher, ids, "fp");
    const CorpusStats slow = testing::BruteForceStats(corpus.docs, corpus.patterns, "fp");
    if (fast == slow) ++agree;

    // Random four-way shard split of the same corpus.
    std::vector<size_t> cuts = {0, corpus.docs.size()};
    for (int c = 0; c < 3; ++c) {
      cuts.push_back(std::uniform_int_distribution<size_t>(0, corpus.docs.size())(rng));
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<CorpusStats> s;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      const std::vector<testing::Document> part(corpus.docs.begin() + cuts[i],
                                                corpus.docs.begin() + cuts[i + 1]);
      s.push_back(testing::CountWithMatcher(part, matcher, ids, "fp"));
    }
    const CorpusStats zero("fp", ids);
    const bool laws = Merge(Merge(Merge(s[0], s[1]), s[2]), s[3]) == fast &&
                      Merge(s[0], Merge(s[1], Merge(s[2], s[3]))) == fast &&
                      Merge(Merge(s[3], s[2]), Merge(s[1], s[0])) == fast &&
                      Merge(fast, zero) == fast && Merge(zero, fast) == fast;
    if (laws) ++merges;
  }
  return {agree == 100 && merges == 100,
          std::to_string(agree) + "/100 corpora match oracle, " +
              std::to_string(merges) + "/100 shard splits satisfy merge laws"};
}

// Gold pairs 0..gold-1; suffix hits [0, s), prefix hits [s, s+p), cooc hits
// [union-c, union), which together cover exactly [0, union).
Outcome EvalRow(int s, int p, int c, int u, int gold, int expected_percent) {
  GoldStandard g;
  std::vector<TaxoEntry> taxo;
  const auto name = [](int i) { return "term" + std::to_string(i); };
  for (int i = 0; i < gold; ++i) g.pairs.emplace(name(i), "parent" + std::to_string(i % 11));
  const auto add = [&](int i, Technique t) {
    TaxoEntry e{name(i), "parent" + std::to_string(i % 11), Provenance(t), std::nullopt};
    taxo.push_back(e);
  };
  for (int i = 0; i < s; ++i) add(i, Technique::kSuffix);
  for (int i = s; i < s + p; ++i) add(i, Technique::kPrefix);
  for (int i = u - c; i < u; ++i) add(i, Technique::kCooc);
  // Wrong guesses that must not count.
  for (int i = 0; i < gold / 3; ++i) {
    taxo.push_back({name(i), "elsewhere", Provenance(Technique::kCooc), 5});
  }
  const EvalReport r = Score(taxo, g);
  const int got = static_cast<int>(r.UnionRecall().Percent());
  const bool counts = r.union_found == static_cast<uint64_t>(u) &&
                      r.gold_size == static_cast<uint64_t>(gold) &&
                      r.found[0] == static_cast<uint64_t>(s) &&
                      r.found[1] == static_cast<uint64_t>(p) &&
                      r.found[2] == static_cast<uint64_t>(c);
  const bool ok = counts && std::abs(got - expected_percent) <= kRecallTolerancePoints;
  return {ok, std::to_string(u) + "/" + std::to_string(gold) + " -> " +
                  std::to_string(got) + "% (table " + std::to_string(expected_percent) + "%)"};
}

Outcome EvalArithmetic() {
  struct Row {
    const char* domain;
    int s, p, c, u, gold, percent;
  };
  const Row rows[] = {
      {"WN_chemical", 377, 5, 574, 644, 1387, 46},
      {"WN_equipment", 119, 0, 168, 184, 485, 38},
      {"WN_food", 371, 2, 681, 726, 1533, 47},
      {"WN_science", 119, 0, 230, 240, 441, 54},
      {"chemical", 2019, 9, 715, 2407, 24817, 10},
      {"equipment", 184, 1, 286, 305, 615, 50},
      {"food", 279, 1, 807, 822, 1587, 52},
      {"science", 121, 7, 193, 209, 465, 45},
  };
  int passed = 0;
  std::string detail;
  for (const Row& row : rows) {
    const Outcome o = EvalRow(row.s, row.p, row.c, row.u, row.gold, row.percent);
    if (o.pass) ++passed;
    detail += std::string("; ") + row.domain + " " + o.detail + (o.pass ? "" : " FAIL");
  }
  return {passed == 8, std::to_string(passed) + "/8 rows" + detail};
}

Outcome CycleDetection() {
  std::mt19937_64 rng(42);
  int agree = 0;
  int planted_found = 0;
  for (int round = 0; round < 200; ++round) {
    const uint32_t n = 2 + static_cast<uint32_t>(rng() % 49);
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    // Start from a random DAG over a random node order.
    std::vector<uint32_t> order(n);
    for (uint32_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (uint32_t a = 0; a < n; ++a) {
      for (uint32_t b = a + 1; b < n; ++b) {
        if (rng() % 8 == 0) edges.emplace_back(order[a], order[b]);
      }
    }
    uint32_t u = 0, v = 0;
    if (round % 2 == 0) {
      // Planted 2-cycle.
      u = static_cast<uint32_t>(rng() % n);
      do v = static_cast<uint32_t>(rng() % n); while (v == u);
      edges.emplace_back(u, v);
      edges.emplace_back(v, u);
    } else {
      // Planted back edge over a forward edge when one exists.
      if (edges.empty()) edges.emplace_back(order[0], order[1]);
      const auto fwd = edges[rng() % edges.size()];
      u = fwd.first;
      v = fwd.second;
      edges.emplace_back(v, u);
    }
    const auto got = DetectCycles(n, edges);
    if (got == testing::ReachabilityCycles(n, edges)) ++agree;
    for (const auto& comp : got) {
      if (std::binary_search(comp.begin(), comp.end(), u) &&
          std::binary_search(comp.begin(), comp.end(), v)) {
        ++planted_found;
        break;
      }
    }
  }
  return {agree == 200 && planted_found == 200,
          std::to_string(agree) + "/200 graphs match oracle, " +
              std::to_string(planted_found) + "/200 planted cycles found"};
}

Outcome Normalization() {
  const std::pair<const char*, const char*> stems[] = {
      {"anarchism", "anarch"},     {"societies", "societi"},
      {"philosophy", "philosophi"}, {"theology", "theologi"},
      {"history", "histori"},       {"metaphysics", "metaphys"}};
  int examples = 0;
  for (const auto& [word, stem] : stems) examples += PorterStem(word) == stem;
  const auto phrase = NormalizeTokens(
      std::vector<std::string>{"biological", "and", "physical"}, StopwordSet::Smart());
  examples += phrase == std::vector<std::string>{"biolog", "_", "physic"};

  std::ifstream voc(std::string(HYPEREX_TEST_DATA) + "/porter_voc.txt");
  std::ifstream out(std::string(HYPEREX_TEST_DATA) + "/porter_output.txt");
  int total = 0;
  int match = 0;
  std::string w, s;
  while (std::getline(voc, w) && std::getline(out, s)) {
    if (w.empty()) continue;
    ++total;
    match += PorterStem(w) == s;
  }
  const bool ok = examples == 7 && total > 23000 && match == total;
  return {ok, std::to_string(examples) + "/7 examples, " + std::to_string(match) +
                  "/" + std::to_string(total) + " vocabulary words"};
}

std::vector<std::pair<std::string, std::string>> ReadOutputs(const std::string& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 6 && name.substr(name.size() - 6) == ".stamp") continue;
    files.emplace_back(name, testing::ReadFile(entry.path().string()));
  }
  std::sort(files.begin(), files.end());
  return files;
}

Outcome DeterminismAndThroughput() {
  testing::TempDir dir;
  const std::string dump = dir.File("dump.xml");
  {
    std::ofstream out(dump, std::ios::binary);
    testing::WriteSyntheticDump(out, kSyntheticDumpBytes, 1234);
  }
  std::string terms;
  for (const std::string& t : testing::SyntheticTerms()) terms += t + "\n";
  testing::WriteFile(dir.File("terms.txt"), terms);
  std::string gold;
  gold += "communications satellite\tsatellite\nmachine tool\tmachine\n";
  gold += "fruit wine\twine\nchemical compound\tcompound\n";
  testing::WriteFile(dir.File("gold.tsv"), gold);

  const auto run = [&](const std::string& workdir, int workers) {
    PipelineOptions options;
    options.dump_path = dump;
    options.workdir = dir.File(workdir);
    options.gold_path = dir.File("gold.tsv");
    options.catalog = {dir.File("terms.txt"), "chemical", ""};
    options.workers = workers;
    std::ostringstream log;
    RunPipeline(options, log);
    return ReadOutputs(options.workdir);
  };
  const auto first = run("run1", 1);
  const auto second = run("run2", 1);
  const auto parallel = run("run4", 4);
  const bool same_runs = first == second;
  const bool same_workers = first == parallel;

  // Timed single-worker stats pass over the ingested sentence file.
  StatsOptions stats;
  stats.sentences_path = dir.File("run1/sentences.tsv");
  stats.out_path = dir.File("timed.stats");
  stats.catalog = {dir.File("terms.txt"), "chemical", ""};
  stats.workers = 1;
  const auto start = std::chrono::steady_clock::now();
  const StatsSummary summary = RunStats(stats);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double mb = static_cast<double>(summary.bytes) / 1e6;
  const double rate = mb / std::max(seconds, 1e-9);
  const double dump_rate = static_cast<double>(fs::file_size(dump)) / 1e6 /
                           std::max(seconds, 1e-9);

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%zu outputs; reruns identical=%s; workers 1 vs 4 identical=%s; "
                "stats pass %.1f MB/s over %.1f MB of sentences "
                "(%.1f MB/s of dump), floor %.0f MB/s",
                first.size(), same_runs ? "yes" : "no", same_workers ? "yes" : "no",
                rate, mb, dump_rate, kMinStatsMbPerSecond);
  return {same_runs && same_workers && first.size() >= 5 && rate >= kMinStatsMbPerSecond,
          buf};
}

}  // namespace
}  // namespace hyperex

int main() {
  using hyperex::Criterion;
  const std::vector<Criterion> criteria = {
      {"1 subterm heuristic cases", hyperex::kSubtermSeconds, hyperex::SubtermCases},
      {"2 co-occurrence selection fixture", hyperex::kSelectSeconds,
       hyperex::BiblicalFixture},
      {"3 stats oracle and merge laws", hyperex::kStatsOracleSeconds,
       hyperex::StatsOracle},
      {"4 union recall vs reference percentages", hyperex::kEvalSeconds,
       hyperex::EvalArithmetic},
      {"5 cycle detection vs reachability", hyperex::kCycleSeconds,
       hyperex::CycleDetection},
      {"6 normalization and stemmer vocabulary", hyperex::kStemSeconds,
       hyperex::Normalization},
      {"7 determinism and stats throughput", 0, hyperex::DeterminismAndThroughput},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    hyperex::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit <= 0 || seconds < c.time_limit;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s  %-40s %.3fs%s  %s\n", pass ? "PASS" : "FAIL", c.name.c_str(),
                seconds,
                c.time_limit > 0 ? (" (limit " + std::to_string(static_cast<int>(c.time_limit)) + "s)").c_str()
                                 : "",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
