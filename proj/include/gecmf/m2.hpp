#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gecmf/core.hpp"

namespace gecmf::m2 {

// S <tok> <tok> ...
// A <start> <end>|||<type>|||<replacement>|||REQUIRED|||-NONE-|||<annotator>
//
// Blocks are separated by blank lines. `-NONE-` is the empty replacement and
// `A -1 -1|||noop|||...` marks an annotator that made no correction.

inline constexpr std::string_view kEmptyReplacement = "-NONE-";
inline constexpr std::string_view kFieldSep = "|||";

/// One AnnotatedSentence per S-block per annotator, annotators ascending.
/// A block without A-lines yields annotator 0 with no edits. Insertions at
/// the same gap are merged in file order.
std::vector<AnnotatedSentence> parse(std::string_view text);
std::vector<AnnotatedSentence> read_file(const std::string& path);

/// Each sentence becomes its own block. Edit types are written as the
/// operation class only (R:OTHER, M:OTHER, U:OTHER).
std::string serialize(const std::vector<AnnotatedSentence>& sentences);
void write_file(const std::string& path,
                const std::vector<AnnotatedSentence>& sentences);

/// Coarse ERRANT-style operation tag for an edit kind.
std::string_view edit_type(EditKind kind);

}  // namespace gecmf::m2
