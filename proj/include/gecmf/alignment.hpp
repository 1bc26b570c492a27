#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gecmf/core.hpp"

namespace gecmf {

enum class AlignOp { match, substitute, del, insert };

/// One step of an edit script. match/substitute carry both indices, del only
/// the source index and insert only the target index.
struct AlignmentOp {
  AlignOp op;
  std::optional<std::size_t> src_index;
  std::optional<std::size_t> tgt_index;

  static AlignmentOp match(std::size_t s, std::size_t t) { return {AlignOp::match, s, t}; }
  static AlignmentOp substitute(std::size_t s, std::size_t t) {
    return {AlignOp::substitute, s, t};
  }
  static AlignmentOp del(std::size_t s) { return {AlignOp::del, s, std::nullopt}; }
  static AlignmentOp insert(std::size_t t) { return {AlignOp::insert, std::nullopt, t}; }

  friend bool operator==(const AlignmentOp&, const AlignmentOp&) = default;
};

// Costs are kept in tenths so that the case-insensitive discount stays exact.
namespace align_cost {
inline constexpr int kMatch = 0;
inline constexpr int kSubstitute = 10;
inline constexpr int kSubstituteCaseOnly = 9;
inline constexpr int kInsert = 10;
inline constexpr int kDelete = 10;
}  // namespace align_cost

/// Cost of substituting `a` by `b` (0 when identical).
int substitution_cost(const std::string& a, const std::string& b);

/// Minimum-cost token alignment. Ties in the backtrace prefer
/// match > substitute > delete > insert.
std::vector<AlignmentOp> align(const TokenSeq& source, const TokenSeq& target);

/// Total cost of a script, in tenths.
int script_cost(const std::vector<AlignmentOp>& ops, const TokenSeq& source,
                const TokenSeq& target);

/// Merges maximal runs of adjacent non-match ops into single edits.
EditSet ops_to_edits(const std::vector<AlignmentOp>& ops, const TokenSeq& source,
                     const TokenSeq& target);

/// align + ops_to_edits.
inline EditSet extract_edits(const TokenSeq& source, const TokenSeq& target) {
  return ops_to_edits(align(source, target), source, target);
}

}  // namespace gecmf
