#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gecmf/fillmask.hpp"

namespace gecmf {

struct RemoteConfig {
  /// e.g. "http://127.0.0.1:8601"
  std::string base_url;
  std::chrono::milliseconds timeout{30'000};
  /// Extra attempts after a transport failure.
  int retries = 2;
  /// Maximum concurrent in-flight requests.
  int max_in_flight = 8;
};

/// Client for the fill-mask model server.
///
///   POST /v1/fill_mask  {"tokens": [...], "top_k": k}
///     -> {"masks": [{"index": i, "candidates": [{"piece": p, "log_prob": x}]}]}
///   POST /v1/tokenize   {"tokens": [...]} -> {"pieces": [...]}
///   GET  /v1/health     -> {"status": "ok", "model_id": id}
///
/// Whole tokens are sent so the server owns subword segmentation.
class RemoteClient : public FillModel {
 public:
  explicit RemoteClient(RemoteConfig config);
  ~RemoteClient() override;

  PredictionSet fill(const MaskedInstance& masked, std::size_t k) const override;
  std::vector<std::string> segment(const TokenSeq& tokens) const override;
  /// Checkpoint id reported by /v1/health, or "remote:unreachable".
  std::string model_id() const override;

  const RemoteConfig& config() const { return config_; }

 private:
  nlohmann::json post(const std::string& path, const nlohmann::json& body) const;

  struct Limiter;
  RemoteConfig config_;
  std::unique_ptr<Limiter> limiter_;
};

// Wire helpers, exposed for tests.
nlohmann::json fill_request_json(const TokenSeq& tokens, std::size_t k);
/// Validates a fill_mask response against the request's mask positions.
PredictionSet parse_fill_response(const nlohmann::json& body,
                                  const std::vector<std::size_t>& mask_positions,
                                  std::size_t k);

}  // namespace gecmf
