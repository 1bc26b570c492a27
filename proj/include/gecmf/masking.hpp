#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gecmf/core.hpp"
#include "gecmf/expansion.hpp"

namespace gecmf {

inline constexpr std::string_view kMaskToken = "[MASK]";

enum class MaskStrategy {
  origin_span,    // one mask per token of the original span, at least one
  target_length,  // one mask per subword piece of the correction
  single,         // exactly one mask
};

std::string_view to_string(MaskStrategy strategy);
/// Accepts "origin", "target", "single" and the enum spellings.
MaskStrategy parse_strategy(std::string_view name);

/// Subword segmentation of a token sequence, as the fill model would see it.
using PieceSegmenter = std::function<std::vector<std::string>(const TokenSeq&)>;

struct MaskedInstance {
  std::string instance_id;
  TokenSeq tokens;
  std::vector<std::size_t> mask_positions;
  TokenSeq gold_replacement;
  /// Gold subword pieces; filled for target_length only.
  std::optional<std::vector<std::string>> gold_pieces;

  /// Per-mask gold units for mask-level scoring: the pieces when known,
  /// otherwise the whole replacement tokens.
  std::vector<std::string> gold_units() const;

  friend bool operator==(const MaskedInstance&, const MaskedInstance&) = default;
};

/// Replaces the residual span with mask sentinels (or splices them into the
/// gap for insertions). Throws DeletionResidualError for deletions and
/// ConfigError when target_length has no segmenter.
MaskedInstance mask_instance(const SingleEditInstance& instance, MaskStrategy strategy,
                             const PieceSegmenter& segmenter = {});

/// Resolves a deletion residual without a model.
TokenSeq apply_deletion(const SingleEditInstance& instance);

}  // namespace gecmf
