#include "gecmf/m2.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "gecmf/error.hpp"

namespace gecmf::m2 {

namespace {

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(kFieldSep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + kFieldSep.size();
  }
}

long parse_int(std::string_view s, std::size_t line, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

struct PendingBlock {
  std::size_t line = 0;
  TokenSeq source;
  // annotator -> edits in file order; a noop registers the annotator only
  std::map<int, std::vector<Edit>> edits;
};

void add_edit(std::vector<Edit>& edits, Edit e) {
  if (e.start == e.end) {
    for (Edit& other : edits) {
      if (other.start == e.start && other.end == e.end) {
        std::vector<std::string> merged = other.replacement.tokens();
        merged.insert(merged.end(), e.replacement.begin(), e.replacement.end());
        other.replacement = TokenSeq(std::move(merged));
        return;
      }
    }
  }
  edits.push_back(std::move(e));
}

void flush(PendingBlock& block, std::vector<AnnotatedSentence>& out) {
  if (block.edits.empty()) {
    out.push_back(AnnotatedSentence{block.source, EditSet{}, 0});
    return;
  }
  for (auto& [annotator, edits] : block.edits) {
    EditSet set;
    try {
      set = EditSet(std::move(edits));
    } catch (const ValidationError& e) {
      throw ValidationError("sentence at line " + std::to_string(block.line) +
                            ", annotator " + std::to_string(annotator) + ": " +
                            e.what());
    }
    for (const Edit& e : set) {
      if (e.end > block.source.size()) {
        throw ValidationError("sentence at line " + std::to_string(block.line) +
                              ": edit end " + std::to_string(e.end) +
                              " exceeds sentence length " +
                              std::to_string(block.source.size()));
      }
    }
    out.push_back(AnnotatedSentence{block.source, std::move(set), annotator});
  }
}

void parse_annotation(std::string_view body, std::size_t line, PendingBlock& block) {
  auto fields = split_fields(body);
  if (fields.size() != 6) {
    throw ParseError(line, "expected 6 '|||'-separated fields, got " +
                               std::to_string(fields.size()));
  }
  std::string_view span = fields[0];
  std::size_t sp = span.find(' ');
  if (sp == std::string_view::npos) throw ParseError(line, "missing span end");
  long start = parse_int(span.substr(0, sp), line, "span start");
  long end = parse_int(span.substr(sp + 1), line, "span end");
  int annotator = static_cast<int>(parse_int(fields[5], line, "annotator id"));
  if (annotator < 0) throw ParseError(line, "negative annotator id");

  if (fields[1] == "noop" || (start == -1 && end == -1)) {
    block.edits.try_emplace(annotator);
    return;
  }
  if (start < 0 || end < start) {
    throw ParseError(line, "invalid span " + std::string(span));
  }
  TokenSeq replacement;
  if (fields[2] != kEmptyReplacement) {
    replacement = TokenSeq::from_text(fields[2]);
  }
  auto& edits = block.edits[annotator];
  if (start == end && replacement.empty()) {
    // A null edit changes nothing; keep the annotator, drop the edit.
    return;
  }
  add_edit(edits, Edit{static_cast<std::size_t>(start), static_cast<std::size_t>(end),
                       std::move(replacement)});
}

}  // namespace

std::string_view edit_type(EditKind kind) {
  switch (kind) {
    case EditKind::substitution: return "R:OTHER";
    case EditKind::insertion: return "M:OTHER";
    case EditKind::deletion: return "U:OTHER";
  }
  return "R:OTHER";
}

std::vector<AnnotatedSentence> parse(std::string_view text) {
  std::vector<AnnotatedSentence> out;
  std::optional<PendingBlock> block;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      if (block) {
        flush(*block, out);
        block.reset();
      }
      continue;
    }
    if (line[0] == 'S' && (line.size() == 1 || line[1] == ' ')) {
      if (block) throw ParseError(line_no, "S-line without preceding blank line");
      block.emplace();
      block->line = line_no;
      block->source = TokenSeq::from_text(line.substr(1));
    } else if (line[0] == 'A' && line.size() > 1 && line[1] == ' ') {
      if (!block) throw ParseError(line_no, "A-line outside a sentence block");
      parse_annotation(line.substr(2), line_no, *block);
    } else {
      throw ParseError(line_no, "unrecognised line prefix");
    }
  }
  if (block) flush(*block, out);
  return out;
}

std::vector<AnnotatedSentence> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string serialize(const std::vector<AnnotatedSentence>& sentences) {
  std::string out;
  for (const AnnotatedSentence& s : sentences) {
    out += "S";
    for (const std::string& tok : s.source) {
      out += ' ';
      out += tok;
    }
    out += '\n';
    const std::string annotator = std::to_string(s.annotator_id);
    if (s.gold.empty() && s.annotator_id != 0) {
      out += "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||" + annotator + "\n";
    }
    for (const Edit& e : s.gold) {
      out += "A " + std::to_string(e.start) + " " + std::to_string(e.end);
      out += kFieldSep;
      out += edit_type(e.kind());
      out += kFieldSep;
      out += e.replacement.empty() ? std::string(kEmptyReplacement) : e.replacement.join();
      out += "|||REQUIRED|||-NONE-|||" + annotator + "\n";
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::vector<AnnotatedSentence>& sentences) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << serialize(sentences);
}

}  // namespace gecmf::m2
