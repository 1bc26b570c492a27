#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gecmf/error.hpp"
#include "gecmf/expansion.hpp"
#include "gecmf/fillmask.hpp"
#include "gecmf/masking.hpp"
#include "gecmf/mock_models.hpp"
#include "support/generators.hpp"

namespace gecmf {
namespace {

TokenSeq merge(std::vector<std::string> pieces) { return merge_pieces(pieces); }

MaskedInstance masked(std::string_view text, std::string_view gold) {
  MaskedInstance m;
  m.instance_id = "t";
  m.tokens = TokenSeq::from_text(text);
  for (std::size_t i = 0; i < m.tokens.size(); ++i) {
    if (m.tokens[i] == kMaskToken) m.mask_positions.push_back(i);
  }
  m.gold_replacement = TokenSeq::from_text(gold);
  return m;
}

PredictionSet one_each(std::vector<std::string> pieces) {
  PredictionSet ps;
  ps.k = 1;
  for (auto& p : pieces) ps.per_mask.push_back({Candidate{std::move(p), -0.1}});
  return ps;
}

TEST(MergePieces, Examples) {
  EXPECT_EQ(merge({"ad", "##e", "##quate"}), (TokenSeq{"adequate"}));
  EXPECT_EQ(merge({"allow"}), (TokenSeq{"allow"}));
  EXPECT_EQ(merge({"play", "##ing", "well"}), (TokenSeq{"playing", "well"}));
  EXPECT_TRUE(merge({}).empty());
}

TEST(MergePieces, LeadingContinuationIsRejected) {
  EXPECT_THROW(merge({"##ing"}), MergeError);
  EXPECT_THROW(merge({"a", ""}), MergeError);
}

TEST(MergePieces, ConservesCharactersAndNeverEmitsEmptyTokens) {
  gen::Rng rng(23);
  const std::vector<std::string> alphabet{"ab", "c", "##d", "##ef", "g", "##", "###"};
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::string> pieces{"w" + std::to_string(trial % 7)};
    for (std::size_t n = gen::uniform(rng, 0, 8); n > 0; --n) {
      pieces.push_back(alphabet[gen::uniform(rng, 0, alphabet.size() - 1)]);
    }
    std::size_t chars = 0;
    for (const auto& p : pieces) chars += p.size() - (is_continuation(p) ? 2 : 0);
    TokenSeq out = merge_pieces(pieces);
    std::size_t got = 0;
    for (const auto& t : out) {
      EXPECT_FALSE(t.empty());
      got += t.size();
    }
    EXPECT_EQ(got, chars);
  }
}

TEST(AssembleHypothesis, InsertionFilledWithStop) {
  auto m = masked("there is a number 8 bus [MASK] in front of the hotel", ",");
  EXPECT_EQ(assemble_hypothesis(m, one_each({"stop"})).join(),
            "there is a number 8 bus stop in front of the hotel");
}

TEST(AssembleHypothesis, ThreeMasksMergeIntoOneWord) {
  auto m = masked("the rooms were [MASK] [MASK] [MASK] .", "adequate");
  auto hyp = assemble_hypothesis(m, one_each({"ad", "##e", "##quate"}));
  EXPECT_EQ(hyp, (TokenSeq{"the", "rooms", "were", "adequate", "."}));
}

TEST(AssembleHypothesis, RankBeyondDepthNamesTheMask) {
  auto m = masked("a [MASK] [MASK]", "x y");
  PredictionSet ps;
  ps.k = 2;
  ps.per_mask = {{{"x", -0.1}, {"z", -0.2}}, {{"y", -0.1}}};
  try {
    assemble_hypothesis(m, ps, 2);
    FAIL();
  } catch (const RankError& e) {
    EXPECT_EQ(e.mask_index(), 1u);
  }
}

TEST(AssembleHypothesis, OnlyRankRCandidatesMatter) {
  auto m = masked("a [MASK] b", "x");
  PredictionSet p1, p2;
  p1.k = p2.k = 2;
  p1.per_mask = {{{"q", -0.1}, {"x", -0.2}}};
  p2.per_mask = {{{"r", -0.1}, {"x", -0.3}}};
  EXPECT_EQ(assemble_hypothesis(m, p1, 2), assemble_hypothesis(m, p2, 2));
}

TEST(RankCandidates, SortsTiesAndTruncates) {
  std::vector<Candidate> c{{"b", -1.0}, {"a", -1.0}, {"c", -0.5}, {"d", -2.0}};
  rank_candidates(c, 3);
  EXPECT_EQ(c, (std::vector<Candidate>{{"c", -0.5}, {"a", -1.0}, {"b", -1.0}}));
  std::vector<Candidate> bad{{"x", std::numeric_limits<double>::infinity()}};
  EXPECT_THROW(rank_candidates(bad, 1), ValidationError);
}

TEST(GoldMock, RankOneGivesReference) {
  GoldMock model;
  auto inst = SingleEditInstance{"t", TokenSeq::from_text("to recomend you"),
                                 Edit{1, 2, {"recommend"}}, "s"};
  auto m = mask_instance(inst, MaskStrategy::single);
  auto ps = fill(model, m, 5);
  ASSERT_EQ(ps.per_mask.size(), 1u);
  EXPECT_EQ(ps.per_mask[0][0].piece, "recommend");
  EXPECT_EQ(assemble_hypothesis(m, ps), inst.reference());
}

TEST(GoldMock, RankThreeIsVisibleAtKFiveOnly) {
  GoldMock model(3);
  auto m = masked("a [MASK] c", "b");
  auto deep = fill(model, m, 5);
  ASSERT_EQ(deep.per_mask[0].size(), 5u);
  EXPECT_EQ(deep.per_mask[0][2].piece, "b");
  auto shallow = fill(model, m, 1);
  ASSERT_EQ(shallow.per_mask[0].size(), 1u);
  EXPECT_NE(shallow.per_mask[0][0].piece, "b");
}

TEST(GoldMock, TargetLengthUsesPieces) {
  GoldMock model;
  auto inst = SingleEditInstance{"t", TokenSeq::from_text("rooms were good"),
                                 Edit{2, 3, {"adequate"}}, "s"};
  auto m = mask_instance(inst, MaskStrategy::target_length, model.segmenter());
  auto ps = fill(model, m, 2);
  EXPECT_EQ(ps.per_mask[1][0].piece, "##e");
  EXPECT_EQ(assemble_hypothesis(m, ps), inst.reference());
  EXPECT_EQ(model.count_pieces(TokenSeq{"adequate", "rooms"}), 4u);
}

TEST(GoldMock, EndToEndReferenceOnRandomInstances) {
  GoldMock model;
  gen::Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    auto s = gen::sentence(rng);
    for (const auto& inst : expand_each_edit(s)) {
      if (inst.is_deletion()) continue;
      for (auto strategy : {MaskStrategy::single, MaskStrategy::target_length}) {
        // one mask holds one token
        if (strategy == MaskStrategy::single && inst.residual.replacement.size() > 1) continue;
        auto m = mask_instance(inst, strategy, model.segmenter());
        EXPECT_EQ(assemble_hypothesis(m, fill(model, m, 3)), inst.reference());
      }
    }
  }
}

TEST(LexiconMock, RanksByFrequencyAndIgnoresContext) {
  LexiconMock model({{"the", 50}, {"a", 30}, {"of", 30}, {"zebra", 1}});
  auto ps = fill(model, masked("x [MASK] [MASK] y", "q r"), 3);
  ASSERT_EQ(ps.per_mask.size(), 2u);
  EXPECT_EQ(ps.per_mask[0], ps.per_mask[1]);
  EXPECT_EQ(ps.per_mask[0][0].piece, "the");
  EXPECT_EQ(ps.per_mask[0][1].piece, "a");
  EXPECT_EQ(ps.per_mask[0][2].piece, "of");
  EXPECT_NEAR(ps.per_mask[0][0].log_prob, std::log(50.0 / 111.0), 1e-12);
  EXPECT_THROW(LexiconMock({{"x", 0}}), ConfigError);
}

TEST(Fill, RejectsZeroKAndMasklessInput) {
  GoldMock model;
  EXPECT_THROW(fill(model, masked("a [MASK]", "b"), 0), ConfigError);
  EXPECT_THROW(fill(model, masked("a b", "b"), 1), ValidationError);
}

TEST(WordpieceSegmenter, GreedyLongestMatch) {
  auto seg = WordpieceSegmenter::builtin();
  EXPECT_EQ(seg.segment_word("adequate"), (std::vector<std::string>{"ad", "##e", "##quate"}));
  EXPECT_EQ(seg.segment_word("playing"), (std::vector<std::string>{"play", "##ing"}));
  EXPECT_EQ(seg.segment_word("zebra"), (std::vector<std::string>{"zebra"}));
  for (const char* w : {"recommend", "unusual", "interest", "beginning", "hotel"}) {
    EXPECT_EQ(merge_pieces(seg.segment_word(w)), (TokenSeq{w}));
  }
}

}  // namespace
}  // namespace gecmf
