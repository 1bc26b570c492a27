#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gecmf/expansion.hpp"
#include "gecmf/masking.hpp"

namespace gecmf::records {

// Line-delimited JSON, one object per line. Field layouts are documented in
// docs/formats.md and only ever grow new optional keys.

nlohmann::json to_json(const SingleEditInstance& inst, Scheme scheme);
SingleEditInstance instance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MaskedInstance& masked, MaskStrategy strategy);
MaskedInstance masked_from_json(const nlohmann::json& j);

void write_instances(const std::string& path, const std::vector<SingleEditInstance>& instances,
                     Scheme scheme);
std::vector<SingleEditInstance> read_instances(const std::string& path);

void write_masked(const std::string& path, const std::vector<MaskedInstance>& masked,
                  MaskStrategy strategy);
std::vector<MaskedInstance> read_masked(const std::string& path);

/// Parses every non-empty line; errors carry the 1-based line number.
std::vector<nlohmann::json> read_jsonl(const std::string& path);

}  // namespace gecmf::records
