#include "gecmf/core.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "gecmf/error.hpp"

namespace gecmf {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

void validate_tokens(const std::vector<std::string>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_valid_token(tokens[i])) {
      throw ValidationError("token " + std::to_string(i) +
                            " is empty or contains whitespace");
    }
  }
}

}  // namespace

bool is_valid_token(std::string_view token) {
  return !token.empty() && std::none_of(token.begin(), token.end(), is_space);
}

TokenSeq::TokenSeq(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  validate_tokens(tokens_);
}

TokenSeq::TokenSeq(std::initializer_list<std::string> tokens) : tokens_(tokens) {
  validate_tokens(tokens_);
}

TokenSeq TokenSeq::from_text(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  TokenSeq seq;
  seq.tokens_ = std::move(out);
  return seq;
}

TokenSeq TokenSeq::slice(std::size_t first, std::size_t last) const {
  TokenSeq seq;
  seq.tokens_.assign(tokens_.begin() + static_cast<std::ptrdiff_t>(first),
                     tokens_.begin() + static_cast<std::ptrdiff_t>(last));
  return seq;
}

std::string TokenSeq::join(std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out += sep;
    out += tokens_[i];
  }
  return out;
}

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::substitution: return "substitution";
    case EditKind::insertion: return "insertion";
    case EditKind::deletion: return "deletion";
  }
  return "?";
}

Edit Edit::make(std::size_t start, std::size_t end, TokenSeq replacement) {
  if (start > end) {
    throw ValidationError("edit start " + std::to_string(start) +
                          " exceeds end " + std::to_string(end));
  }
  if (start == end && replacement.empty()) {
    throw ValidationError("null edit at gap " + std::to_string(start));
  }
  return Edit{start, end, std::move(replacement)};
}

EditKind Edit::kind() const {
  if (start == end) return EditKind::insertion;
  return replacement.empty() ? EditKind::deletion : EditKind::substitution;
}

std::ptrdiff_t Edit::length_delta() const {
  return static_cast<std::ptrdiff_t>(replacement.size()) -
         static_cast<std::ptrdiff_t>(end - start);
}

EditSet::EditSet(std::vector<Edit> edits) : edits_(std::move(edits)) {
  std::stable_sort(edits_.begin(), edits_.end(), [](const Edit& a, const Edit& b) {
    return std::tie(a.start, a.end) < std::tie(b.start, b.end);
  });
  for (std::size_t i = 0; i < edits_.size(); ++i) {
    const Edit& e = edits_[i];
    if (e.start > e.end || (e.start == e.end && e.replacement.empty())) {
      throw ValidationError("edit " + std::to_string(i) + " is malformed");
    }
    if (i == 0) continue;
    const Edit& prev = edits_[i - 1];
    if (prev.end > e.start) {
      throw ValidationError("edits [" + std::to_string(prev.start) + "," +
                            std::to_string(prev.end) + ") and [" +
                            std::to_string(e.start) + "," + std::to_string(e.end) +
                            ") overlap");
    }
    if (prev.start == prev.end && e.start == e.end && prev.start == e.start) {
      throw ValidationError("two insertions at gap " + std::to_string(e.start));
    }
  }
}

EditSet EditSet::without(std::size_t i) const {
  EditSet out;
  out.edits_.reserve(edits_.size() - 1);
  for (std::size_t j = 0; j < edits_.size(); ++j) {
    if (j != i) out.edits_.push_back(edits_[j]);
  }
  return out;
}

TokenSeq apply_edits(const TokenSeq& source, const EditSet& edits) {
  std::vector<std::string> out;
  out.reserve(source.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < edits.size(); ++i) {
    const Edit& e = edits[i];
    if (e.end > source.size()) {
      throw StructuralError(i, "span [" + std::to_string(e.start) + "," +
                                   std::to_string(e.end) + ") exceeds sentence length " +
                                   std::to_string(source.size()));
    }
    out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(cursor),
               source.begin() + static_cast<std::ptrdiff_t>(e.start));
    out.insert(out.end(), e.replacement.begin(), e.replacement.end());
    cursor = e.end;
  }
  out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(cursor),
             source.end());
  return TokenSeq(std::move(out));
}

}  // namespace gecmf
