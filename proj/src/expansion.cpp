#include "gecmf/expansion.hpp"

#include "gecmf/error.hpp"

namespace gecmf {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::each_edit ? "each-edit" : "last-edit";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "each-edit" || name == "each") return Scheme::each_edit;
  if (name == "last-edit" || name == "last") return Scheme::last_edit;
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

namespace {

SingleEditInstance make_instance(const AnnotatedSentence& sentence, std::size_t i,
                                 std::string_view sentence_id) {
  const Edit& target = sentence.gold[i];
  std::ptrdiff_t offset = 0;
  for (std::size_t j = 0; j < i; ++j) offset += sentence.gold[j].length_delta();

  SingleEditInstance inst;
  inst.instance_id = std::string(sentence_id) + "/e" + std::to_string(i);
  inst.origin_sentence_id = std::string(sentence_id);
  inst.source = apply_edits(sentence.source, sentence.gold.without(i));
  inst.residual = Edit{static_cast<std::size_t>(static_cast<std::ptrdiff_t>(target.start) + offset),
                       static_cast<std::size_t>(static_cast<std::ptrdiff_t>(target.end) + offset),
                       target.replacement};
  return inst;
}

}  // namespace

std::vector<SingleEditInstance> expand_each_edit(const AnnotatedSentence& sentence,
                                                 std::string_view sentence_id) {
  std::vector<SingleEditInstance> out;
  out.reserve(sentence.gold.size());
  for (std::size_t i = 0; i < sentence.gold.size(); ++i) {
    out.push_back(make_instance(sentence, i, sentence_id));
  }
  return out;
}

std::optional<SingleEditInstance> expand_last_edit(const AnnotatedSentence& sentence,
                                                   std::string_view sentence_id) {
  if (sentence.gold.empty()) return std::nullopt;
  // EditSet is sorted by (start, end): the back has the greatest start.
  return make_instance(sentence, sentence.gold.size() - 1, sentence_id);
}

std::vector<SingleEditInstance> expand_corpus(const std::vector<AnnotatedSentence>& corpus,
                                              Scheme scheme) {
  std::vector<SingleEditInstance> out;
  std::size_t block = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    // Annotators of one S-block are adjacent and ascending.
    if (i > 0 && (corpus[i].annotator_id <= corpus[i - 1].annotator_id ||
                  corpus[i].source != corpus[i - 1].source)) {
      ++block;
    }
    const AnnotatedSentence& s = corpus[i];
    if (s.annotator_id != 0 || s.gold.empty()) continue;
    const std::string id = "s" + std::to_string(block);
    if (scheme == Scheme::each_edit) {
      auto part = expand_each_edit(s, id);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    } else if (auto inst = expand_last_edit(s, id)) {
      out.push_back(std::move(*inst));
    }
  }
  return out;
}

std::string_view to_string(TokenLabel label) {
  switch (label) {
    case TokenLabel::remain: return "remain";
    case TokenLabel::substitution: return "substitution";
    case TokenLabel::del: return "delete";
  }
  return "?";
}

std::string_view to_string(FlatLabel label) {
  switch (label) {
    case FlatLabel::remain: return "remain";
    case FlatLabel::substitution: return "substitution";
    case FlatLabel::insert: return "insert";
    case FlatLabel::del: return "delete";
  }
  return "?";
}

LabelSeq project_labels(const SingleEditInstance& instance) {
  LabelSeq labels;
  labels.token_labels.assign(instance.source.size(), TokenLabel::remain);
  const Edit& r = instance.residual;
  switch (r.kind()) {
    case EditKind::insertion:
      labels.gap_insertions[r.start] = r.replacement.size();
      break;
    case EditKind::substitution:
    case EditKind::deletion: {
      const TokenLabel l =
          r.kind() == EditKind::deletion ? TokenLabel::del : TokenLabel::substitution;
      for (std::size_t i = r.start; i < r.end; ++i) labels.token_labels[i] = l;
      break;
    }
  }
  return labels;
}

FlatLabels flatten_labels(const LabelSeq& labels) {
  FlatLabels flat;
  flat.labels.reserve(labels.token_labels.size());
  for (TokenLabel l : labels.token_labels) {
    switch (l) {
      case TokenLabel::remain: flat.labels.push_back(FlatLabel::remain); break;
      case TokenLabel::substitution: flat.labels.push_back(FlatLabel::substitution); break;
      case TokenLabel::del: flat.labels.push_back(FlatLabel::del); break;
    }
  }
  for (const auto& [gap, length] : labels.gap_insertions) {
    if (length == 0) continue;
    if (gap >= flat.labels.size()) {
      flat.end_of_sentence_insert = true;
    } else if (flat.labels[gap] == FlatLabel::remain) {
      flat.labels[gap] = FlatLabel::insert;
    } else {
      flat.ambiguous = true;
    }
  }
  return flat;
}

std::optional<LabeledSpan> decode_span(const LabelSeq& labels) {
  std::optional<LabeledSpan> span;
  for (const auto& [gap, length] : labels.gap_insertions) {
    if (length == 0) continue;
    if (span) throw ValidationError("labels describe more than one insertion");
    span = LabeledSpan{gap, gap, EditKind::insertion};
  }
  const auto& t = labels.token_labels;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == TokenLabel::remain) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    if (span) throw ValidationError("labels describe more than one span");
    span = LabeledSpan{i, j,
                       t[i] == TokenLabel::del ? EditKind::deletion : EditKind::substitution};
    i = j;
  }
  return span;
}

}  // namespace gecmf
