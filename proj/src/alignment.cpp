#include "gecmf/alignment.hpp"

#include <algorithm>
#include <cctype>

#include "gecmf/error.hpp"

namespace gecmf {

namespace {

bool equal_ignore_case(const std::string& a, const std::string& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

int substitution_cost(const std::string& a, const std::string& b) {
  if (a == b) return align_cost::kMatch;
  return equal_ignore_case(a, b) ? align_cost::kSubstituteCaseOnly
                                 : align_cost::kSubstitute;
}

std::vector<AlignmentOp> align(const TokenSeq& source, const TokenSeq& target) {
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  const std::size_t width = m + 1;
  std::vector<int> dist((n + 1) * width, 0);
  auto at = [&](std::size_t i, std::size_t j) -> int& { return dist[i * width + j]; };

  for (std::size_t i = 1; i <= n; ++i) at(i, 0) = at(i - 1, 0) + align_cost::kDelete;
  for (std::size_t j = 1; j <= m; ++j) at(0, j) = at(0, j - 1) + align_cost::kInsert;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      int diag = at(i - 1, j - 1) + substitution_cost(source[i - 1], target[j - 1]);
      int up = at(i - 1, j) + align_cost::kDelete;
      int left = at(i, j - 1) + align_cost::kInsert;
      at(i, j) = std::min({diag, up, left});
    }
  }

  std::vector<AlignmentOp> ops;
  ops.reserve(n + m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const int here = at(i, j);
    if (i > 0 && j > 0) {
      const int sub = substitution_cost(source[i - 1], target[j - 1]);
      if (sub == align_cost::kMatch && here == at(i - 1, j - 1)) {
        ops.push_back(AlignmentOp::match(--i, --j));
        continue;
      }
      if (sub != align_cost::kMatch && here == at(i - 1, j - 1) + sub) {
        ops.push_back(AlignmentOp::substitute(--i, --j));
        continue;
      }
    }
    if (i > 0 && here == at(i - 1, j) + align_cost::kDelete) {
      ops.push_back(AlignmentOp::del(--i));
      continue;
    }
    ops.push_back(AlignmentOp::insert(--j));
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

int script_cost(const std::vector<AlignmentOp>& ops, const TokenSeq& source,
                const TokenSeq& target) {
  int total = 0;
  for (const AlignmentOp& op : ops) {
    switch (op.op) {
      case AlignOp::match:
      case AlignOp::substitute:
        total += substitution_cost(source[*op.src_index], target[*op.tgt_index]);
        break;
      case AlignOp::del: total += align_cost::kDelete; break;
      case AlignOp::insert: total += align_cost::kInsert; break;
    }
  }
  return total;
}

EditSet ops_to_edits(const std::vector<AlignmentOp>& ops, const TokenSeq& source,
                     const TokenSeq& target) {
  std::vector<Edit> edits;
  std::size_t src = 0;
  std::size_t tgt = 0;
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k].op == AlignOp::match) {
      ++src;
      ++tgt;
      ++k;
      continue;
    }
    const std::size_t run_src = src;
    const std::size_t run_tgt = tgt;
    while (k < ops.size() && ops[k].op != AlignOp::match) {
      if (ops[k].src_index) ++src;
      if (ops[k].tgt_index) ++tgt;
      ++k;
    }
    edits.push_back(Edit{run_src, src, target.slice(run_tgt, tgt)});
  }
  if (src != source.size() || tgt != target.size()) {
    throw ValidationError("alignment does not cover both sentences");
  }
  return EditSet(std::move(edits));
}

}  // namespace gecmf
