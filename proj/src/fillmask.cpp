#include "gecmf/fillmask.hpp"

#include <algorithm>
#include <cmath>

#include "gecmf/error.hpp"

namespace gecmf {

bool is_continuation(std::string_view piece) {
  return piece.size() >= kContinuation.size() &&
         piece.substr(0, kContinuation.size()) == kContinuation;
}

void rank_candidates(std::vector<Candidate>& candidates, std::size_t k) {
  for (const Candidate& c : candidates) {
    if (c.piece.empty()) throw ValidationError("candidate with empty piece");
    if (!std::isfinite(c.log_prob)) {
      throw ValidationError("candidate '" + c.piece + "' has a non-finite log_prob");
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
    return a.piece < b.piece;
  });
  if (candidates.size() > k) candidates.resize(k);
}

PredictionSet fill(const FillModel& model, const MaskedInstance& masked, std::size_t k) {
  if (k == 0) throw ConfigError("top-k must be at least 1");
  if (masked.mask_positions.empty()) {
    throw ValidationError("instance " + masked.instance_id + " has no mask");
  }
  PredictionSet out = model.fill(masked, k);
  if (out.per_mask.size() != masked.mask_positions.size()) {
    throw ProtocolError("model returned " + std::to_string(out.per_mask.size()) +
                        " mask entries for " + std::to_string(masked.mask_positions.size()) +
                        " masks");
  }
  for (auto& list : out.per_mask) rank_candidates(list, k);
  out.k = k;
  return out;
}

TokenSeq merge_pieces(std::span<const std::string> pieces) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string& p = pieces[i];
    if (p.empty()) throw MergeError("piece " + std::to_string(i) + " is empty");
    if (!is_valid_token(p)) {
      throw MergeError("piece " + std::to_string(i) + " contains whitespace");
    }
    if (is_continuation(p)) {
      if (tokens.empty()) {
        throw MergeError("first piece '" + p + "' is a continuation");
      }
      tokens.back() += p.substr(kContinuation.size());
    } else {
      tokens.push_back(p);
    }
  }
  return TokenSeq(std::move(tokens));
}

TokenSeq assemble_hypothesis(const MaskedInstance& masked, const PredictionSet& predictions,
                             std::size_t rank) {
  if (rank == 0) throw ConfigError("rank is 1-based");
  if (masked.mask_positions.empty()) {
    throw ValidationError("instance " + masked.instance_id + " has no mask");
  }
  if (predictions.per_mask.size() != masked.mask_positions.size()) {
    throw ProtocolError("prediction count does not match mask count");
  }
  std::vector<std::string> pieces;
  pieces.reserve(predictions.per_mask.size());
  for (std::size_t i = 0; i < predictions.per_mask.size(); ++i) {
    const auto& list = predictions.per_mask[i];
    if (list.size() < rank) {
      throw RankError(i, "rank " + std::to_string(rank) + " requested, only " +
                             std::to_string(list.size()) + " candidates");
    }
    pieces.push_back(list[rank - 1].piece);
  }
  TokenSeq filled = merge_pieces(pieces);

  const auto& tokens = masked.tokens.tokens();
  const std::size_t first = masked.mask_positions.front();
  const std::size_t last = masked.mask_positions.back() + 1;
  std::vector<std::string> out(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(first));
  out.insert(out.end(), filled.begin(), filled.end());
  out.insert(out.end(), tokens.begin() + static_cast<std::ptrdiff_t>(last), tokens.end());
  return TokenSeq(std::move(out));
}

}  // namespace gecmf
