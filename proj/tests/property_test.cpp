#include <gtest/gtest.h>

#include "nl2pbt/corpus.hpp"
#include "properties.hpp"

using namespace nl2pbt;

namespace {

constexpr std::size_t kCases = 1000;

std::string data(const std::string& rel) { return std::string(NL2PBT_SOURCE_DIR) + "/" + rel; }

Lexicon lexicon(const char* file) { return load_lexicon_file(data(std::string("lexicon/") + file)); }

Lexicon shipped() { return merge(lexicon("core.lex"), lexicon("sttp.lex")); }

std::vector<std::string> corpus_sentences() {
  std::vector<std::string> out;
  for (const auto& c : load_corpus_file(data("corpus/sttp.corpus"))) out.push_back(c.sentence);
  return out;
}

void expect_holds(const props::Outcome& o, std::size_t min_checked) {
  EXPECT_TRUE(o.ok()) << o.counterexample;
  EXPECT_GE(o.checked, min_checked) << "skipped " << o.skipped;
}

}  // namespace

TEST(LogicProperties, AlphaEquivalenceIsAnEquivalence) {
  expect_holds(props::alpha_equivalence_laws(11, kCases), kCases);
}

TEST(LogicProperties, NormalizeIsIdempotentAndMatchesOracle) {
  expect_holds(props::normalize_idempotent(12, kCases), kCases * 9 / 10);
}

TEST(LogicProperties, SubstitutionLemma) {
  expect_holds(props::substitution_lemma(13, kCases), kCases * 9 / 10);
}

TEST(LogicProperties, PrintParseRoundTrip) {
  expect_holds(props::print_parse_round_trip(14, kCases), kCases);
}

TEST(LogicProperties, RenamedVariantIsAlphaEqualButNotIdentical) {
  oracle::TermGen gen(15);
  std::size_t renamed = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    Term t = gen.term(props::kMaxDepth);
    Term u = props::alpha_variant(t, 0);
    EXPECT_TRUE(alpha_equal(t, u));
    renamed += print_term(t) != print_term(u);
  }
  EXPECT_GT(renamed, 0u);
}

TEST(ParserProperties, Deterministic) {
  expect_holds(props::parser_determinism(shipped(), corpus_sentences()), 7);
}

TEST(ParserProperties, MergingNeverLosesDerivations) {
  auto sentences = corpus_sentences();
  expect_holds(props::merge_monotonicity(shipped(), lexicon("extras.lex"), sentences), 7);
  expect_holds(props::merge_monotonicity(shipped(), lexicon("fused.lex"), sentences), 7);
}

TEST(ParserProperties, ScrambledSentencesDoNotParse) {
  auto all = corpus_sentences();
  std::vector<std::string> five(all.begin(), all.begin() + 5);
  auto scrambled = props::scramble(five, 2024);
  ASSERT_EQ(scrambled.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NE(tokenize(scrambled[i]), tokenize(five[i]));
  expect_holds(props::scrambled_have_no_parse(shipped(), scrambled), 5);
}
