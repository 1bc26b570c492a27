#include <gtest/gtest.h>

#include "gecmf/alignment.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace gecmf {
namespace {

std::vector<AlignOp> kinds(const std::vector<AlignmentOp>& ops) {
  std::vector<AlignOp> out;
  for (const auto& op : ops) out.push_back(op.op);
  return out;
}

TEST(Align, Identity) {
  TokenSeq s{"a", "b", "c"};
  EXPECT_EQ(kinds(align(s, s)),
            (std::vector<AlignOp>{AlignOp::match, AlignOp::match, AlignOp::match}));
  EXPECT_TRUE(extract_edits(s, s).empty());
}

TEST(Align, SingleSubstitution) {
  TokenSeq s{"a", "b", "c"}, t{"a", "x", "c"};
  auto ops = align(s, t);
  EXPECT_EQ(ops, (std::vector<AlignmentOp>{AlignmentOp::match(0, 0), AlignmentOp::substitute(1, 1),
                                           AlignmentOp::match(2, 2)}));
  EXPECT_EQ(ops_to_edits(ops, s, t), EditSet({Edit{1, 2, {"x"}}}));
}

TEST(Align, WordOrderBecomesDeleteAndInsert) {
  TokenSeq s{"bus", "number", "8"}, t{"number", "8", "bus"};
  EXPECT_EQ(align(s, t),
            (std::vector<AlignmentOp>{AlignmentOp::del(0), AlignmentOp::match(1, 0),
                                      AlignmentOp::match(2, 1), AlignmentOp::insert(2)}));
}

TEST(Align, CaseOnlySubstitutionIsCheaper) {
  EXPECT_EQ(substitution_cost("The", "the"), align_cost::kSubstituteCaseOnly);
  EXPECT_EQ(substitution_cost("the", "the"), align_cost::kMatch);
  EXPECT_EQ(substitution_cost("a", "the"), align_cost::kSubstitute);
}

TEST(OpsToEdits, SubstituteThenInsertMergeIntoOneEdit) {
  TokenSeq s{"a", "b"}, t{"a", "x", "y"};
  std::vector<AlignmentOp> ops{AlignmentOp::match(0, 0), AlignmentOp::substitute(1, 1),
                               AlignmentOp::insert(2)};
  auto edits = ops_to_edits(ops, s, t);
  EXPECT_EQ(edits, EditSet({Edit{1, 2, {"x", "y"}}}));
  EXPECT_EQ(apply_edits(s, edits), t);
}

TEST(Align, EmptySides) {
  TokenSeq empty, t{"a", "b"};
  EXPECT_EQ(extract_edits(empty, t), EditSet({Edit{0, 0, {"a", "b"}}}));
  EXPECT_EQ(extract_edits(t, empty), EditSet({Edit{0, 2, {}}}));
  EXPECT_TRUE(align(empty, empty).empty());
}

TEST(Align, OpsCoverBothSequencesInOrder) {
  gen::Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    TokenSeq s = gen::tokens(rng, 7, 4), t = gen::tokens(rng, 7, 4);
    std::size_t next_src = 0, next_tgt = 0;
    for (const auto& op : align(s, t)) {
      EXPECT_EQ(op.src_index.has_value(), op.op != AlignOp::insert);
      EXPECT_EQ(op.tgt_index.has_value(), op.op != AlignOp::del);
      if (op.src_index) EXPECT_EQ(*op.src_index, next_src++);
      if (op.tgt_index) EXPECT_EQ(*op.tgt_index, next_tgt++);
    }
    EXPECT_EQ(next_src, s.size());
    EXPECT_EQ(next_tgt, t.size());
    EXPECT_EQ(align(s, t), align(s, t));
  }
}

TEST(Align, RandomPairsAreOptimalAndRoundTrip) {
  gen::Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    TokenSeq s = gen::tokens(rng, 9, 4), t = gen::tokens(rng, 9, 4);
    auto ops = align(s, t);
    EXPECT_EQ(script_cost(ops, s, t), oracle::distance(s.tokens(), t.tokens()));
    EXPECT_EQ(apply_edits(s, ops_to_edits(ops, s, t)), t);
  }
}

TEST(Align, BruteForceAgreesWithMemoisedOracle) {
  auto seqs = oracle::all_sequences({"a", "B", "b"}, 3);
  for (const auto& s : seqs) {
    for (const auto& t : seqs) {
      ASSERT_EQ(oracle::brute_force_distance(s, t), oracle::distance(s, t));
    }
  }
}

TEST(Align, CaseVariantsPreferSubstitution) {
  TokenSeq s{"The", "cat"}, t{"the", "cat"};
  EXPECT_EQ(kinds(align(s, t)), (std::vector<AlignOp>{AlignOp::substitute, AlignOp::match}));
  EXPECT_EQ(script_cost(align(s, t), s, t), 9);
}

}  // namespace
}  // namespace gecmf
