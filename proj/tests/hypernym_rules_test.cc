#include "hyperex/hypernym_rules.h"

#include <random>

#include "gtest/gtest.h"
#include "hyperex/errors.h"
#include "testing/oracles.h"

namespace hyperex {
namespace {

Term MakeTerm(TermId id, const std::string& surface) {
  const NormalizedTerm norm = NormalizeTerm(surface, StopwordSet::Smart());
  return {id, surface, norm.surface_tokens, norm.norm_tokens, norm.matchable};
}

bool Suffix(const std::string& a, const std::string& b,
            SuffixMode mode = SuffixMode::kChar) {
  return SuffixHypernym(MakeTerm(1, a), MakeTerm(2, b), {mode, 2});
}

bool Prefix(const std::string& a, const std::string& b, int connector_len = 2) {
  return PrefixHypernym(MakeTerm(1, a), MakeTerm(2, b),
                        {SuffixMode::kChar, connector_len});
}

TEST(SuffixHypernymTest, Examples) {
  EXPECT_TRUE(Suffix("communications satellite", "satellite"));
  EXPECT_TRUE(Suffix("Communications Satellite", "satellite"));
  EXPECT_TRUE(Suffix("licorice", "rice"));
  EXPECT_FALSE(Suffix("licorice", "rice", SuffixMode::kTokenBoundary));
  EXPECT_TRUE(Suffix("communications satellite", "satellite",
                     SuffixMode::kTokenBoundary));
  EXPECT_FALSE(Suffix("satellite", "satellite"));
  EXPECT_FALSE(Suffix("satellite", "communications satellite"));
  // Same term by id.
  EXPECT_FALSE(SuffixHypernym(MakeTerm(1, "rice"), MakeTerm(1, "rice"), {}));
}

TEST(PrefixHypernymTest, Examples) {
  EXPECT_TRUE(Prefix("helmet of coşofeneşti", "helmet"));
  EXPECT_TRUE(Prefix("caterpillar d9", "caterpillar"));
  EXPECT_FALSE(Prefix("fortimicin b", "fortimicin"));
  EXPECT_FALSE(Prefix("ginsenoside c-y", "ginsenoside"));
  EXPECT_TRUE(Prefix("ginsenoside mc", "ginsenoside"));
  EXPECT_TRUE(Prefix("fortimicin b", "fortimicin", 1));
  EXPECT_TRUE(Prefix("ginsenoside c-y", "ginsenoside", 3));
  // Whole tokens only.
  EXPECT_FALSE(Prefix("helmets of steel", "helmet"));
  EXPECT_FALSE(Prefix("helmet", "helmet"));
  EXPECT_TRUE(Prefix("history of art of china", "history of art"));
}

TEST(PrefixHypernymTest, ConnectorLengthCountsCodePoints) {
  EXPECT_TRUE(Prefix("zeolite ţa", "zeolite"));
  EXPECT_FALSE(Prefix("zeolite ţa", "zeolite", 3));
}

TEST(SubtermPairsTest, CatalogExamples) {
  const auto stops = StopwordSet::Smart();
  const auto satellite = TermCatalog::FromSurfaces(
      {"satellite", "communications satellite"}, "satellite", "satellite", stops);
  const auto pairs = SubtermPairs(satellite, {});
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].hypo, 1u);
  EXPECT_EQ(pairs[0].hyper, 0u);
  EXPECT_EQ(pairs[0].provenance, Provenance(Technique::kSuffix));
  EXPECT_FALSE(pairs[0].score.has_value());

  const auto ginseng = TermCatalog::FromSurfaces(
      {"ginsenoside", "ginsenoside mc"}, "ginsenoside", "ginsenoside", stops);
  const auto prefix = SubtermPairs(ginseng, {});
  ASSERT_EQ(prefix.size(), 1u);
  EXPECT_EQ(prefix[0].provenance, Provenance(Technique::kPrefix));

  const auto single = TermCatalog::FromSurfaces({"rice"}, "rice", "rice", stops);
  EXPECT_TRUE(SubtermPairs(single, {}).empty());
}

TEST(SubtermPairsTest, SuffixWinsWhenBothFire) {
  // "ab ab" ends with "ab" and starts with the token "ab" followed by a
  // two-letter token.
  const auto catalog = TermCatalog::FromSurfaces({"ab", "ab ab"}, "ab", "ab",
                                                 StopwordSet(std::vector<std::string>{}));
  const auto pairs = SubtermPairs(catalog, {});
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].provenance, Provenance(Technique::kSuffix));
}

TEST(SubtermPairsTest, RejectsBadConnectorLength) {
  const auto catalog = TermCatalog::FromSurfaces({"a"}, "a", "a", StopwordSet(std::vector<std::string>{}));
  EXPECT_THROW(SubtermPairs(catalog, {SuffixMode::kChar, 0}), InputError);
}

TEST(SuffixModeTest, Parse) {
  EXPECT_EQ(ParseSuffixMode("char"), SuffixMode::kChar);
  EXPECT_EQ(ParseSuffixMode("token-boundary"), SuffixMode::kTokenBoundary);
  EXPECT_THROW(ParseSuffixMode("word"), InputError);
}

// Random catalogs over a tiny alphabet so suffix and prefix relations are
// common.
TermCatalog RandomCatalog(std::mt19937_64& rng, size_t max_terms) {
  const std::vector<std::string> pieces = {"a", "b", "ab", "ba", "of", "rice",
                                           "lico", "d9", "xy", "abc", "c-y"};
  std::uniform_int_distribution<size_t> piece(0, pieces.size() - 1);
  std::uniform_int_distribution<int> tokens(1, 3);
  std::uniform_int_distribution<int> parts(1, 2);
  std::vector<std::string> surfaces;
  const size_t n = std::uniform_int_distribution<size_t>(1, max_terms)(rng);
  for (size_t i = 0; i < n; ++i) {
    std::string s;
    const int count = tokens(rng);
    for (int t = 0; t < count; ++t) {
      if (t > 0) s += ' ';
      const int p = parts(rng);
      for (int k = 0; k < p; ++k) s += pieces[piece(rng)];
    }
    surfaces.push_back(s);
  }
  return TermCatalog::FromSurfaces(surfaces, "root", "root", StopwordSet(std::vector<std::string>{}));
}

TEST(SubtermPairsTest, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 40; ++round) {
    const TermCatalog catalog = RandomCatalog(rng, 200);
    for (const bool token_boundary : {false, true}) {
      for (const int connector : {1, 2, 3}) {
        const SubtermConfig cfg{
            token_boundary ? SuffixMode::kTokenBoundary : SuffixMode::kChar,
            connector};
        std::vector<std::pair<std::pair<TermId, TermId>, Technique>> fast;
        for (const HypernymPair& p : SubtermPairs(catalog, cfg)) {
          const Technique t = p.provenance.Has(Technique::kSuffix)
                                  ? Technique::kSuffix
                                  : Technique::kPrefix;
          fast.push_back({{p.hypo, p.hyper}, t});
        }
        ASSERT_EQ(fast, testing::BruteForceSubterms(catalog, token_boundary,
                                                   connector));
      }
    }
  }
}

TEST(SubtermPairsTest, Properties) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 30; ++round) {
    const TermCatalog catalog = RandomCatalog(rng, 80);
    const SubtermConfig cfg;
    for (const Term& a : catalog.terms()) {
      for (const Term& b : catalog.terms()) {
        EXPECT_FALSE(SuffixHypernym(a, b, cfg) && SuffixHypernym(b, a, cfg));
        if (PrefixHypernym(a, b, cfg)) {
          EXPECT_GE(a.surface_tokens.size(), b.surface_tokens.size() + 1);
        }
      }
    }
    const auto pairs = SubtermPairs(catalog, cfg);
    for (size_t i = 0; i < pairs.size(); ++i) {
      EXPECT_NE(pairs[i].hypo, pairs[i].hyper);
      if (i > 0) {
        EXPECT_LT(std::make_pair(pairs[i - 1].hypo, pairs[i - 1].hyper),
                  std::make_pair(pairs[i].hypo, pairs[i].hyper));
      }
    }
  }
}

}  // namespace
}  // namespace hyperex
