#include <gtest/gtest.h>

#include "gecmf/core.hpp"
#include "gecmf/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace gecmf {
namespace {

TEST(TokenSeq, RejectsEmptyAndWhitespaceTokens) {
  EXPECT_THROW(TokenSeq({"a", ""}), ValidationError);
  EXPECT_THROW(TokenSeq({"a b"}), ValidationError);
  EXPECT_THROW(TokenSeq({"tab\there"}), ValidationError);
  EXPECT_NO_THROW(TokenSeq({"'s", ","}));
}

TEST(TokenSeq, FromTextSplitsOnRunsOfWhitespace) {
  EXPECT_EQ(TokenSeq::from_text("  a\tb  c \n"), (TokenSeq{"a", "b", "c"}));
  EXPECT_TRUE(TokenSeq::from_text("   ").empty());
}

TEST(Edit, KindFollowsShape) {
  EXPECT_EQ(Edit::make(1, 2, {"x"}).kind(), EditKind::substitution);
  EXPECT_EQ(Edit::make(1, 1, {"x"}).kind(), EditKind::insertion);
  EXPECT_EQ(Edit::make(1, 3, {}).kind(), EditKind::deletion);
  EXPECT_THROW(Edit::make(2, 2, {}), ValidationError);
  EXPECT_THROW(Edit::make(3, 2, {"x"}), ValidationError);
}

TEST(EditSet, SortsAndAcceptsTouchingEdits) {
  EditSet set({Edit{2, 3, {"y"}}, Edit{0, 2, {"x"}}, Edit{2, 2, {"i"}}});
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(set[0].start, 0u);
  EXPECT_EQ(set[1], (Edit{2, 2, {"i"}}));
  EXPECT_EQ(set[2], (Edit{2, 3, {"y"}}));
}

TEST(EditSet, RejectsOverlapsAndDoubleInsertions) {
  EXPECT_THROW(EditSet({Edit{0, 2, {"x"}}, Edit{1, 3, {"y"}}}), ValidationError);
  EXPECT_THROW(EditSet({Edit{0, 3, {"x"}}, Edit{1, 1, {"y"}}}), ValidationError);
  EXPECT_THROW(EditSet({Edit{1, 1, {"x"}}, Edit{1, 1, {"y"}}}), ValidationError);
}

TEST(ApplyEdits, EmptySetIsIdentity) {
  TokenSeq s{"a", "b"};
  EXPECT_EQ(apply_edits(s, EditSet{}), s);
}

TEST(ApplyEdits, SpellingCorrectionFromTheAimSentence) {
  auto src = TokenSeq::from_text("The aim of this report is to recomend you to visit");
  auto out = apply_edits(src, EditSet({Edit{7, 8, {"recommend"}}}));
  EXPECT_EQ(out.join(), "The aim of this report is to recommend you to visit");
}

TEST(ApplyEdits, SubstitutionThenDeletion) {
  TokenSeq src{"a", "b", "c"};
  EditSet edits({Edit{0, 1, {"x"}}, Edit{2, 3, {}}});
  EXPECT_EQ(apply_edits(src, edits), (TokenSeq{"x", "b"}));
  EXPECT_EQ(oracle::splice(src.tokens(), edits.edits()),
            (std::vector<std::string>{"x", "b"}));
}

TEST(ApplyEdits, OutOfRangeNamesTheEdit) {
  TokenSeq src{"a", "b"};
  try {
    apply_edits(src, EditSet({Edit{0, 1, {"x"}}, Edit{1, 3, {"y"}}}));
    FAIL() << "expected StructuralError";
  } catch (const StructuralError& e) {
    EXPECT_EQ(e.edit_index(), 1u);
  }
}

TEST(ApplyEdits, MatchesSpliceOracleAndLengthFormula) {
  gen::Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    TokenSeq src = gen::tokens(rng, 6);
    EditSet edits = gen::edits(rng, src.size());
    TokenSeq out = apply_edits(src, edits);
    EXPECT_EQ(out.tokens(), oracle::splice(src.tokens(), edits.edits()));
    std::ptrdiff_t expected = static_cast<std::ptrdiff_t>(src.size());
    for (const Edit& e : edits) expected += e.length_delta();
    EXPECT_EQ(static_cast<std::ptrdiff_t>(out.size()), expected);
    EXPECT_EQ(apply_edits(src, EditSet{}), src);
  }
}

}  // namespace
}  // namespace gecmf
