#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gecmf/fillmask.hpp"

namespace gecmf {

/// Greedy longest-match-first WordPiece segmentation over a fixed vocabulary.
/// Words that cannot be segmented are kept whole rather than mapped to an
/// unknown piece, so merge_pieces(segment(w)) == w always holds.
class WordpieceSegmenter {
 public:
  WordpieceSegmenter() = default;
  explicit WordpieceSegmenter(std::unordered_set<std::string> vocab,
                              std::size_t max_chars_per_word = 100);

  /// A small built-in vocabulary (a handful of split words such as
  /// "adequate" -> ad ##e ##quate); every other word stays whole.
  static WordpieceSegmenter builtin();
  /// One piece per line.
  static WordpieceSegmenter from_file(const std::string& path);

  std::vector<std::string> segment_word(const std::string& word) const;
  std::vector<std::string> segment(const TokenSeq& tokens) const;

 private:
  std::unordered_set<std::string> vocab_;
  std::size_t max_chars_ = 100;
};

/// Oracle model: puts the gold unit of each mask at a configured rank.
///
/// Mask i receives gold unit i (pieces for target-length masking, whole
/// tokens otherwise). Surplus masks repeat the last unit and surplus units
/// are dropped. Other ranks are filled with "[unusedN]" filler pieces.
class GoldMock : public FillModel {
 public:
  explicit GoldMock(std::size_t gold_rank = 1,
                    WordpieceSegmenter segmenter = WordpieceSegmenter::builtin());

  PredictionSet fill(const MaskedInstance& masked, std::size_t k) const override;
  std::vector<std::string> segment(const TokenSeq& tokens) const override;
  std::string model_id() const override;

 private:
  std::size_t gold_rank_;
  WordpieceSegmenter segmenter_;
};

/// Frequency-table model: every mask gets the k most frequent lexicon
/// entries, scored by log relative frequency. Predictions ignore context.
class LexiconMock : public FillModel {
 public:
  explicit LexiconMock(std::vector<std::pair<std::string, double>> counts,
                       WordpieceSegmenter segmenter = WordpieceSegmenter::builtin());

  /// A built-in table of frequent English function words and punctuation.
  static LexiconMock builtin(WordpieceSegmenter segmenter = WordpieceSegmenter::builtin());
  /// Tab-separated "piece<TAB>count" lines.
  static LexiconMock from_file(const std::string& path,
                               WordpieceSegmenter segmenter = WordpieceSegmenter::builtin());

  PredictionSet fill(const MaskedInstance& masked, std::size_t k) const override;
  std::vector<std::string> segment(const TokenSeq& tokens) const override;
  std::string model_id() const override;

  const std::vector<Candidate>& ranked() const { return ranked_; }

 private:
  std::vector<Candidate> ranked_;
  WordpieceSegmenter segmenter_;
};

}  // namespace gecmf
