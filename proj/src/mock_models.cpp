#include "gecmf/mock_models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gecmf/error.hpp"

namespace gecmf {

namespace {

const char* const kBuiltinVocab[] = {
    "ad",   "##e",    "##quate", "re",  "##com", "##mend", "##end", "un",
    "##us", "##ual",  "play",    "##ing", "##ed", "##s",   "##ly",  "in",
    "##ter", "##est", "be",      "##gin", "##ning", "ac",  "##mod",
    "##ation", "ex",  "##cel",   "##lent", "beau", "##ti", "##ful",
};

// Rough relative frequencies of common English tokens.
const std::pair<const char*, double> kBuiltinLexicon[] = {
    {"the", 5000}, {",", 4800}, {".", 4500}, {"of", 2900}, {"and", 2700},
    {"to", 2600},  {"a", 2200}, {"in", 1900}, {"is", 1100}, {"that", 1000},
    {"for", 900},  {"it", 850}, {"was", 800}, {"on", 750},  {"with", 700},
    {"as", 650},   {"be", 600}, {"at", 550},  {"by", 500},  {"this", 480},
    {"have", 450}, {"from", 430}, {"or", 400}, {"are", 390}, {"not", 380},
    {"but", 360},  {"an", 340}, {"they", 320}, {"which", 300}, {"you", 290},
    {"were", 280}, {"her", 270}, {"his", 260}, {"their", 250}, {"has", 240},
    {"would", 230}, {"there", 220}, {"been", 210}, {"one", 200}, {"all", 190},
};

}  // namespace

WordpieceSegmenter::WordpieceSegmenter(std::unordered_set<std::string> vocab,
                                       std::size_t max_chars_per_word)
    : vocab_(std::move(vocab)), max_chars_(max_chars_per_word) {}

WordpieceSegmenter WordpieceSegmenter::builtin() {
  return WordpieceSegmenter(
      std::unordered_set<std::string>(std::begin(kBuiltinVocab), std::end(kBuiltinVocab)));
}

WordpieceSegmenter WordpieceSegmenter::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vocabulary " + path);
  std::unordered_set<std::string> vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) vocab.insert(line);
  }
  return WordpieceSegmenter(std::move(vocab));
}

std::vector<std::string> WordpieceSegmenter::segment_word(const std::string& word) const {
  if (word.size() > max_chars_ || vocab_.contains(word)) return {word};
  std::vector<std::string> pieces;
  std::size_t start = 0;
  while (start < word.size()) {
    std::size_t end = word.size();
    std::string found;
    while (start < end) {
      std::string sub = word.substr(start, end - start);
      if (start > 0) sub.insert(0, kContinuation);
      if (vocab_.contains(sub)) {
        found = std::move(sub);
        break;
      }
      --end;
    }
    if (found.empty()) return {word};
    pieces.push_back(std::move(found));
    start = end;
  }
  return pieces;
}

std::vector<std::string> WordpieceSegmenter::segment(const TokenSeq& tokens) const {
  std::vector<std::string> out;
  for (const std::string& w : tokens) {
    auto pieces = segment_word(w);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

GoldMock::GoldMock(std::size_t gold_rank, WordpieceSegmenter segmenter)
    : gold_rank_(gold_rank), segmenter_(std::move(segmenter)) {
  if (gold_rank_ == 0) throw ConfigError("gold rank is 1-based");
}

PredictionSet GoldMock::fill(const MaskedInstance& masked, std::size_t k) const {
  const std::vector<std::string> units = masked.gold_units();
  PredictionSet out;
  out.k = k;
  for (std::size_t m = 0; m < masked.mask_positions.size(); ++m) {
    const std::string& gold =
        units.empty() ? std::string(kMaskToken) : units[std::min(m, units.size() - 1)];
    std::vector<Candidate> list;
    std::size_t filler = 0;
    for (std::size_t rank = 1; rank <= k; ++rank) {
      std::string piece;
      if (rank == gold_rank_) {
        piece = gold;
      } else {
        do {
          piece = "[unused" + std::to_string(filler++) + "]";
        } while (piece == gold);
      }
      list.push_back({std::move(piece), -0.5 * static_cast<double>(rank)});
    }
    out.per_mask.push_back(std::move(list));
  }
  return out;
}

std::vector<std::string> GoldMock::segment(const TokenSeq& tokens) const {
  return segmenter_.segment(tokens);
}

std::string GoldMock::model_id() const {
  return "gold-mock@rank" + std::to_string(gold_rank_);
}

LexiconMock::LexiconMock(std::vector<std::pair<std::string, double>> counts,
                         WordpieceSegmenter segmenter)
    : segmenter_(std::move(segmenter)) {
  double total = 0;
  for (const auto& [piece, count] : counts) {
    if (!(count > 0)) throw ConfigError("lexicon count for '" + piece + "' must be positive");
    total += count;
  }
  for (const auto& [piece, count] : counts) {
    ranked_.push_back({piece, std::log(count / total)});
  }
  rank_candidates(ranked_, ranked_.size());
}

LexiconMock LexiconMock::builtin(WordpieceSegmenter segmenter) {
  std::vector<std::pair<std::string, double>> counts;
  for (const auto& [piece, count] : kBuiltinLexicon) counts.emplace_back(piece, count);
  return LexiconMock(std::move(counts), std::move(segmenter));
}

LexiconMock LexiconMock::from_file(const std::string& path, WordpieceSegmenter segmenter) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon " + path);
  std::vector<std::pair<std::string, double>> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected piece<TAB>count");
    }
    try {
      counts.emplace_back(line.substr(0, tab), std::stod(line.substr(tab + 1)));
    } catch (const std::logic_error&) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": bad count");
    }
  }
  return LexiconMock(std::move(counts), std::move(segmenter));
}

PredictionSet LexiconMock::fill(const MaskedInstance& masked, std::size_t k) const {
  PredictionSet out;
  out.k = k;
  std::vector<Candidate> top(ranked_.begin(),
                             ranked_.begin() + static_cast<std::ptrdiff_t>(
                                                   std::min(k, ranked_.size())));
  out.per_mask.assign(masked.mask_positions.size(), top);
  return out;
}

std::vector<std::string> LexiconMock::segment(const TokenSeq& tokens) const {
  return segmenter_.segment(tokens);
}

std::string LexiconMock::model_id() const {
  return "lexicon-mock@" + std::to_string(ranked_.size());
}

}  // namespace gecmf
