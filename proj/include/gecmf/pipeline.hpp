#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "gecmf/evaluation.hpp"
#include "gecmf/expansion.hpp"
#include "gecmf/fillmask.hpp"
#include "gecmf/masking.hpp"

namespace gecmf {

inline constexpr const char* kVersion = "0.1.0";

enum class ModelKind { gold_mock, lexicon_mock, remote };
std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

/// Everything a pipeline run depends on. Loaded from a JSON config file and
/// then overridden by command-line flags.
struct RunConfig {
  std::string corpus;     // M2 input
  std::string instances;  // instance JSONL input
  std::string out_dir = ".";
  Scheme scheme = Scheme::each_edit;
  MaskStrategy strategy = MaskStrategy::single;
  bool grid = false;
  ModelKind model = ModelKind::gold_mock;
  std::string endpoint;
  std::size_t top_k = 5;
  std::optional<MatchMode> mode;
  RerankKind rerank = RerankKind::identity;
  bool include_deletions = false;
  std::size_t jobs = 0;  // 0: logical CPUs
  std::uint64_t seed = 0;  // reserved; no stage samples today
  double beta = 0.5;
  std::size_t gold_rank = 1;
  std::string vocab;    // mock segmenter vocabulary file
  std::string lexicon;  // lexicon-mock frequency table
  int timeout_ms = 30'000;
  int retries = 2;
  int max_in_flight = 8;

  /// Throws ConfigError when a remote model has no endpoint or k < 1.
  void validate() const;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
};

std::unique_ptr<FillModel> make_model(const RunConfig& config);

/// Worker count after applying the CPU default and the remote in-flight cap.
std::size_t effective_jobs(const RunConfig& config);

/// Writes <out_dir>/manifest.json: command, config, toolkit version, model id.
void write_manifest(const RunConfig& config, const std::string& command,
                    const std::string& model_id);

// Subcommands. Each returns the process exit code and reports to `out`/`err`.

/// Parallel one-sentence-per-line files to M2 on `out`.
int cmd_extract(const std::string& source_path, const std::string& target_path,
                std::ostream& out, std::ostream& err);
/// <out_dir>/instances.<scheme>.jsonl
int cmd_expand(const RunConfig& config, std::ostream& out, std::ostream& err);
/// <out_dir>/masked.<strategy>.jsonl plus deletions.jsonl for skipped ones
int cmd_mask(const RunConfig& config, std::ostream& out, std::ostream& err);
/// <out_dir>/report.json and report.txt
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gecmf
