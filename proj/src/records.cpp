#include "gecmf/records.hpp"

#include <algorithm>
#include <fstream>

#include "gecmf/error.hpp"

namespace gecmf::records {

using nlohmann::json;

json to_json(const SingleEditInstance& inst, Scheme scheme) {
  return json{{"instance_id", inst.instance_id},
              {"scheme", to_string(scheme)},
              {"origin_sentence_id", inst.origin_sentence_id},
              {"tokens", inst.source.tokens()},
              {"start", inst.residual.start},
              {"end", inst.residual.end},
              {"replacement", inst.residual.replacement.tokens()},
              {"kind", to_string(inst.residual.kind())}};
}

SingleEditInstance instance_from_json(const json& j) {
  SingleEditInstance inst;
  inst.instance_id = j.at("instance_id").get<std::string>();
  inst.origin_sentence_id = j.value("origin_sentence_id", std::string());
  inst.source = TokenSeq(j.at("tokens").get<std::vector<std::string>>());
  inst.residual = Edit::make(j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>(),
                             TokenSeq(j.at("replacement").get<std::vector<std::string>>()));
  if (inst.residual.end > inst.source.size()) {
    throw ValidationError("residual of " + inst.instance_id + " exceeds sentence length");
  }
  return inst;
}

json to_json(const MaskedInstance& masked, MaskStrategy strategy) {
  json j{{"instance_id", masked.instance_id},
         {"strategy", to_string(strategy)},
         {"tokens", masked.tokens.tokens()},
         {"mask_positions", masked.mask_positions},
         {"gold_replacement", masked.gold_replacement.tokens()}};
  if (masked.gold_pieces) j["gold_pieces"] = *masked.gold_pieces;
  return j;
}

MaskedInstance masked_from_json(const json& j) {
  MaskedInstance m;
  m.instance_id = j.at("instance_id").get<std::string>();
  m.tokens = TokenSeq(j.at("tokens").get<std::vector<std::string>>());
  m.mask_positions = j.at("mask_positions").get<std::vector<std::size_t>>();
  m.gold_replacement = TokenSeq(j.at("gold_replacement").get<std::vector<std::string>>());
  if (j.contains("gold_pieces")) {
    m.gold_pieces = j.at("gold_pieces").get<std::vector<std::string>>();
  }
  for (std::size_t i = 0; i < m.tokens.size(); ++i) {
    const bool listed = std::find(m.mask_positions.begin(), m.mask_positions.end(), i) !=
                        m.mask_positions.end();
    if (listed != (m.tokens[i] == kMaskToken)) {
      throw ValidationError("masked record " + m.instance_id +
                            ": mask positions disagree with tokens at " + std::to_string(i));
    }
  }
  return m;
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, path + ": " + e.what());
    }
  }
  return out;
}

namespace {

template <typename T, typename Fn>
std::vector<T> read_records(const std::string& path, Fn from_json) {
  std::vector<T> out;
  std::size_t n = 0;
  for (const json& j : read_jsonl(path)) {
    ++n;
    try {
      out.push_back(from_json(j));
    } catch (const json::exception& e) {
      throw ValidationError(path + ": record " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  return out;
}

}  // namespace

void write_instances(const std::string& path, const std::vector<SingleEditInstance>& instances,
                     Scheme scheme) {
  auto out = open_out(path);
  for (const auto& inst : instances) out << to_json(inst, scheme).dump() << '\n';
}

std::vector<SingleEditInstance> read_instances(const std::string& path) {
  return read_records<SingleEditInstance>(path, instance_from_json);
}

void write_masked(const std::string& path, const std::vector<MaskedInstance>& masked,
                  MaskStrategy strategy) {
  auto out = open_out(path);
  for (const auto& m : masked) out << to_json(m, strategy).dump() << '\n';
}

std::vector<MaskedInstance> read_masked(const std::string& path) {
  return read_records<MaskedInstance>(path, masked_from_json);
}

}  // namespace gecmf::records
