#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecmf/core.hpp"
#include "gecmf/masking.hpp"

namespace gecmf {

/// Continuation marker for subword pieces ("##quate").
inline constexpr std::string_view kContinuation = "##";

bool is_continuation(std::string_view piece);

struct Candidate {
  std::string piece;
  double log_prob = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Ranked candidates for each mask, in mask order.
struct PredictionSet {
  std::vector<std::vector<Candidate>> per_mask;
  std::size_t k = 0;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

/// Sorts by log_prob descending, ties by piece ascending, and keeps the top k.
/// Throws ValidationError on an empty piece or non-finite log_prob.
void rank_candidates(std::vector<Candidate>& candidates, std::size_t k);

/// Source of ranked predictions for masked sentences. Implementations must be
/// safe to call from several threads.
class FillModel {
 public:
  virtual ~FillModel() = default;

  /// One ranked list (at most k long) per mask position of `masked`.
  virtual PredictionSet fill(const MaskedInstance& masked, std::size_t k) const = 0;
  /// Subword segmentation in the model's vocabulary.
  virtual std::vector<std::string> segment(const TokenSeq& tokens) const = 0;
  virtual std::string model_id() const = 0;

  std::size_t count_pieces(const TokenSeq& tokens) const { return segment(tokens).size(); }
  /// Segmentation bound to this model, for mask_instance.
  PieceSegmenter segmenter() const {
    return [this](const TokenSeq& t) { return segment(t); };
  }
};

/// Checks k >= 1 and that there is a mask, then calls the model and verifies
/// the returned shape.
PredictionSet fill(const FillModel& model, const MaskedInstance& masked, std::size_t k);

/// Glues "##" pieces onto the preceding token. Throws MergeError when the
/// first piece is a continuation or a piece is empty or contains whitespace.
TokenSeq merge_pieces(std::span<const std::string> pieces);

/// Fills every mask with its rank-th candidate (1-based), merges the pieces
/// and splices the result back into the unmasked context.
TokenSeq assemble_hypothesis(const MaskedInstance& masked, const PredictionSet& predictions,
                             std::size_t rank = 1);

}  // namespace gecmf
