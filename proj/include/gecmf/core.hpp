#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gecmf {

/// A pre-tokenized sentence. Tokens are non-empty and contain no whitespace.
class TokenSeq {
 public:
  TokenSeq() = default;
  explicit TokenSeq(std::vector<std::string> tokens);
  TokenSeq(std::initializer_list<std::string> tokens);

  /// Splits on ASCII whitespace.
  static TokenSeq from_text(std::string_view text);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  /// Tokens [first, last) as a new sequence.
  TokenSeq slice(std::size_t first, std::size_t last) const;
  std::string join(std::string_view sep = " ") const;

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;

 private:
  std::vector<std::string> tokens_;
};

/// True if `token` is a valid TokenSeq element.
bool is_valid_token(std::string_view token);

enum class EditKind { substitution, insertion, deletion };

std::string_view to_string(EditKind kind);

/// Replacement of source tokens [start, end) by `replacement`.
struct Edit {
  std::size_t start = 0;
  std::size_t end = 0;
  TokenSeq replacement;

  /// Builds an edit, rejecting the null edit (empty span, empty replacement).
  static Edit make(std::size_t start, std::size_t end, TokenSeq replacement);

  EditKind kind() const;
  std::size_t span_length() const { return end - start; }
  /// Change in sentence length when the edit is applied.
  std::ptrdiff_t length_delta() const;

  friend bool operator==(const Edit&, const Edit&) = default;
};

/// Edits sorted by (start, end) with disjoint interiors and at most one
/// insertion per gap.
class EditSet {
 public:
  EditSet() = default;
  /// Sorts and validates; throws ValidationError on overlap.
  explicit EditSet(std::vector<Edit> edits);

  std::size_t size() const { return edits_.size(); }
  bool empty() const { return edits_.empty(); }
  const Edit& operator[](std::size_t i) const { return edits_[i]; }
  auto begin() const { return edits_.begin(); }
  auto end() const { return edits_.end(); }
  const std::vector<Edit>& edits() const { return edits_; }

  /// Copy without the i-th edit.
  EditSet without(std::size_t i) const;

  friend bool operator==(const EditSet&, const EditSet&) = default;

 private:
  std::vector<Edit> edits_;
};

struct AnnotatedSentence {
  TokenSeq source;
  EditSet gold;
  int annotator_id = 0;

  friend bool operator==(const AnnotatedSentence&,
                         const AnnotatedSentence&) = default;
};

/// Applies edits left to right, shifting later spans by the running offset.
/// Throws StructuralError naming the first edit whose span is out of range.
TokenSeq apply_edits(const TokenSeq& source, const EditSet& edits);

/// The corrected sentence for an annotation.
inline TokenSeq corrected(const AnnotatedSentence& s) {
  return apply_edits(s.source, s.gold);
}

}  // namespace gecmf
