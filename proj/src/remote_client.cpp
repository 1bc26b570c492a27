#include "gecmf/remote_client.hpp"

#include <algorithm>
#include <semaphore>

#include <httplib.h>

#include "gecmf/error.hpp"

namespace gecmf {

using nlohmann::json;

struct RemoteClient::Limiter {
  explicit Limiter(int n) : slots(n) {}
  std::counting_semaphore<4096> slots;
};

namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<4096>& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<4096>& s_;
};

void set_timeouts(httplib::Client& cli, std::chrono::milliseconds timeout) {
  const auto sec = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout - sec);
  cli.set_connection_timeout(sec.count(), usec.count());
  cli.set_read_timeout(sec.count(), usec.count());
  cli.set_write_timeout(sec.count(), usec.count());
}

}  // namespace

RemoteClient::RemoteClient(RemoteConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ConfigError("remote model needs an endpoint URL");
  if (config_.max_in_flight < 1) throw ConfigError("in-flight limit must be at least 1");
  if (config_.retries < 0) throw ConfigError("retry count must be non-negative");
  if (config_.max_in_flight > 4096) config_.max_in_flight = 4096;
  while (!config_.base_url.empty() && config_.base_url.back() == '/') {
    config_.base_url.pop_back();
  }
  limiter_ = std::make_unique<Limiter>(config_.max_in_flight);
}

RemoteClient::~RemoteClient() = default;

json RemoteClient::post(const std::string& path, const json& body) const {
  SlotGuard slot(limiter_->slots);
  const std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    httplib::Client cli(config_.base_url);
    set_timeouts(cli, config_.timeout);
    auto res = cli.Post(path, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProtocolError(path + " returned HTTP " + std::to_string(res->status) + ": " +
                          res->body);
    }
    try {
      return json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw ProtocolError(path + " returned invalid JSON: " + e.what());
    }
  }
  throw TransportError(path + " failed after " + std::to_string(config_.retries + 1) +
                       " attempts: " + last_error);
}

json fill_request_json(const TokenSeq& tokens, std::size_t k) {
  return json{{"tokens", tokens.tokens()}, {"top_k", k}};
}

PredictionSet parse_fill_response(const json& body, const std::vector<std::size_t>& mask_positions,
                                  std::size_t k) {
  if (!body.is_object() || !body.contains("masks") || !body["masks"].is_array()) {
    throw ProtocolError("fill_mask response lacks a 'masks' array");
  }
  const json& masks = body["masks"];
  if (masks.size() != mask_positions.size()) {
    throw ProtocolError("server returned " + std::to_string(masks.size()) +
                        " masks, request had " + std::to_string(mask_positions.size()));
  }
  PredictionSet out;
  out.k = k;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const json& m = masks[i];
    try {
      if (m.at("index").get<std::size_t>() != mask_positions[i]) {
        throw ProtocolError("mask " + std::to_string(i) + " index " +
                            m.at("index").dump() + " does not match position " +
                            std::to_string(mask_positions[i]));
      }
      std::vector<Candidate> list;
      for (const json& c : m.at("candidates")) {
        list.push_back({c.at("piece").get<std::string>(), c.at("log_prob").get<double>()});
      }
      rank_candidates(list, k);
      out.per_mask.push_back(std::move(list));
    } catch (const json::exception& e) {
      throw ProtocolError("malformed mask entry " + std::to_string(i) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ProtocolError("mask entry " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

PredictionSet RemoteClient::fill(const MaskedInstance& masked, std::size_t k) const {
  json body = post("/v1/fill_mask", fill_request_json(masked.tokens, k));
  return parse_fill_response(body, masked.mask_positions, k);
}

std::vector<std::string> RemoteClient::segment(const TokenSeq& tokens) const {
  json body = post("/v1/tokenize", json{{"tokens", tokens.tokens()}});
  try {
    return body.at("pieces").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed tokenize response: ") + e.what());
  }
}

std::string RemoteClient::model_id() const {
  httplib::Client cli(config_.base_url);
  set_timeouts(cli, config_.timeout);
  auto res = cli.Get("/v1/health");
  if (!res || res->status != 200) return "remote:unreachable";
  try {
    return json::parse(res->body).at("model_id").get<std::string>();
  } catch (const json::exception&) {
    return "remote:unknown";
  }
}

}  // namespace gecmf
