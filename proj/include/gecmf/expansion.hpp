#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gecmf/core.hpp"

namespace gecmf {

enum class Scheme { each_edit, last_edit };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

/// A sentence with every gold correction applied except `residual`, whose
/// indices refer to `source`.
struct SingleEditInstance {
  std::string instance_id;
  TokenSeq source;
  Edit residual;
  std::string origin_sentence_id;

  bool is_deletion() const { return residual.kind() == EditKind::deletion; }
  /// The fully corrected sentence.
  TokenSeq reference() const { return apply_edits(source, EditSet({residual})); }

  friend bool operator==(const SingleEditInstance&, const SingleEditInstance&) = default;
};

/// One instance per gold edit; instance i applies every edit but the i-th.
std::vector<SingleEditInstance> expand_each_edit(const AnnotatedSentence& sentence,
                                                 std::string_view sentence_id = "s0");

/// The instance whose residual is the right-most gold edit, if any.
std::optional<SingleEditInstance> expand_last_edit(const AnnotatedSentence& sentence,
                                                   std::string_view sentence_id = "s0");

/// Expands a corpus. Only annotator 0 is used and sentences without edits are
/// skipped; sentence ids are "s<index of the S-block>".
std::vector<SingleEditInstance> expand_corpus(const std::vector<AnnotatedSentence>& corpus,
                                              Scheme scheme);

// Oracle error-identification labels.

enum class TokenLabel { remain, substitution, del };
enum class FlatLabel { remain, substitution, insert, del };

std::string_view to_string(TokenLabel label);
std::string_view to_string(FlatLabel label);

/// Per-token labels plus insertions carried on the gaps between tokens
/// (gap g sits before token g; gap size() is the end of the sentence).
struct LabelSeq {
  std::vector<TokenLabel> token_labels;
  std::map<std::size_t, std::size_t> gap_insertions;  // gap -> replacement length

  friend bool operator==(const LabelSeq&, const LabelSeq&) = default;
};

/// The four-label view used by a sequence tagger.
struct FlatLabels {
  std::vector<FlatLabel> labels;
  /// An insertion falls on the gap after the last token.
  bool end_of_sentence_insert = false;
  /// An insertion gap precedes a token that carries its own edit label.
  bool ambiguous = false;

  friend bool operator==(const FlatLabels&, const FlatLabels&) = default;
};

LabelSeq project_labels(const SingleEditInstance& instance);
FlatLabels flatten_labels(const LabelSeq& labels);

/// Span and kind recovered from labels.
struct LabeledSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  EditKind kind = EditKind::substitution;

  friend bool operator==(const LabeledSpan&, const LabeledSpan&) = default;
};

/// Reads a single contiguous edit span back out of a LabelSeq; nullopt when
/// every token remains and no gap carries an insertion. Throws
/// ValidationError when the labels describe more than one span.
std::optional<LabeledSpan> decode_span(const LabelSeq& labels);

}  // namespace gecmf
