#include "gecmf/masking.hpp"

#include <algorithm>

#include "gecmf/error.hpp"

namespace gecmf {

std::string_view to_string(MaskStrategy strategy) {
  switch (strategy) {
    case MaskStrategy::origin_span: return "origin";
    case MaskStrategy::target_length: return "target";
    case MaskStrategy::single: return "single";
  }
  return "?";
}

MaskStrategy parse_strategy(std::string_view name) {
  if (name == "origin" || name == "origin_span") return MaskStrategy::origin_span;
  if (name == "target" || name == "target_length") return MaskStrategy::target_length;
  if (name == "single") return MaskStrategy::single;
  throw ConfigError("unknown masking strategy '" + std::string(name) + "'");
}

std::vector<std::string> MaskedInstance::gold_units() const {
  if (gold_pieces) return *gold_pieces;
  return gold_replacement.tokens();
}

MaskedInstance mask_instance(const SingleEditInstance& instance, MaskStrategy strategy,
                             const PieceSegmenter& segmenter) {
  const Edit& r = instance.residual;
  if (r.kind() == EditKind::deletion) {
    throw DeletionResidualError("instance " + instance.instance_id +
                                " has a deletion residual; use apply_deletion");
  }
  if (r.end > instance.source.size()) {
    throw StructuralError(0, "residual exceeds sentence length");
  }
  if (std::find(instance.source.begin(), instance.source.end(), kMaskToken) !=
      instance.source.end()) {
    throw ValidationError("instance " + instance.instance_id +
                          " already contains the mask sentinel");
  }

  MaskedInstance out;
  out.instance_id = instance.instance_id;
  out.gold_replacement = r.replacement;

  std::size_t count = 0;
  switch (strategy) {
    case MaskStrategy::origin_span:
      count = std::max<std::size_t>(1, r.span_length());
      break;
    case MaskStrategy::single:
      count = 1;
      break;
    case MaskStrategy::target_length: {
      if (!segmenter) {
        throw ConfigError("target-length masking needs a piece segmenter");
      }
      auto pieces = segmenter(r.replacement);
      if (pieces.empty()) {
        throw ConfigError("segmenter returned no pieces for '" + r.replacement.join() + "'");
      }
      count = pieces.size();
      out.gold_pieces = std::move(pieces);
      break;
    }
  }

  std::vector<std::string> tokens;
  tokens.reserve(instance.source.size() + count);
  const auto& src = instance.source.tokens();
  tokens.insert(tokens.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(r.start));
  for (std::size_t i = 0; i < count; ++i) {
    out.mask_positions.push_back(tokens.size());
    tokens.emplace_back(kMaskToken);
  }
  tokens.insert(tokens.end(), src.begin() + static_cast<std::ptrdiff_t>(r.end), src.end());
  out.tokens = TokenSeq(std::move(tokens));
  return out;
}

TokenSeq apply_deletion(const SingleEditInstance& instance) {
  if (instance.residual.kind() != EditKind::deletion) {
    throw ResidualKindError("instance " + instance.instance_id +
                            " residual is a " +
                            std::string(to_string(instance.residual.kind())) +
                            ", not a deletion");
  }
  return apply_edits(instance.source, EditSet({instance.residual}));
}

}  // namespace gecmf
