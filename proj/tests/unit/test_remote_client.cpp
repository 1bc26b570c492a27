#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "gecmf/error.hpp"
#include "gecmf/remote_client.hpp"

#ifndef GECMF_TEST_DATA
#define GECMF_TEST_DATA "tests/data"
#endif

namespace gecmf {
namespace {

using nlohmann::json;

json load_fixture() {
  std::ifstream in(std::string(GECMF_TEST_DATA) + "/remote_fill_aim.json");
  return json::parse(in);
}

/// Local stand-in for the model server, answering from canned handlers.
class StubServer {
 public:
  StubServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server& server() { return server_; }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

MaskedInstance aim_masked() {
  MaskedInstance m;
  m.instance_id = "aim";
  m.tokens = TokenSeq::from_text(
      "The aim of this report is to [MASK] you to visit the Fuerte de San Diego Museum");
  m.mask_positions = {7};
  m.gold_replacement = TokenSeq{"recommend"};
  return m;
}

RemoteConfig config_for(const std::string& url) {
  RemoteConfig c;
  c.base_url = url;
  c.timeout = std::chrono::milliseconds(2000);
  return c;
}

TEST(RemoteClient, PinnedFixtureTopCandidateIsAllow) {
  const json fixture = load_fixture();
  StubServer stub;
  json seen;
  stub.server().Post("/v1/fill_mask", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    res.set_content(fixture["response"].dump(), "application/json");
  });
  RemoteClient client(config_for(stub.url()));
  auto ps = fill(client, aim_masked(), 1);
  ASSERT_EQ(ps.per_mask.size(), 1u);
  ASSERT_EQ(ps.per_mask[0].size(), 1u);
  EXPECT_EQ(ps.per_mask[0][0].piece, "allow");
  EXPECT_EQ(seen["tokens"], fixture["request"]["tokens"]);
  EXPECT_EQ(seen["top_k"], 1);
  EXPECT_EQ(assemble_hypothesis(aim_masked(), ps).join(),
            "The aim of this report is to allow you to visit the Fuerte de San Diego Museum");
}

TEST(RemoteClient, MaskCountMismatchIsProtocolError) {
  StubServer stub;
  stub.server().Post("/v1/fill_mask", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"masks": []})", "application/json");
  });
  RemoteClient client(config_for(stub.url()));
  EXPECT_THROW(fill(client, aim_masked(), 3), ProtocolError);
}

TEST(RemoteClient, ClientErrorStatusIsProtocolError) {
  StubServer stub;
  stub.server().Post("/v1/fill_mask", [](const httplib::Request&, httplib::Response& res) {
    res.status = 400;
    res.set_content(R"({"error": "no mask"})", "application/json");
  });
  RemoteClient client(config_for(stub.url()));
  EXPECT_THROW(client.fill(aim_masked(), 1), ProtocolError);
}

TEST(RemoteClient, ServerErrorsAreRetried) {
  StubServer stub;
  std::atomic<int> calls{0};
  const json fixture = load_fixture();
  stub.server().Post("/v1/fill_mask", [&](const httplib::Request&, httplib::Response& res) {
    if (calls.fetch_add(1) < 2) {
      res.status = 503;
      return;
    }
    res.set_content(fixture["response"].dump(), "application/json");
  });
  RemoteClient client(config_for(stub.url()));
  EXPECT_EQ(client.fill(aim_masked(), 2).per_mask[0][1].piece, "encourage");
  EXPECT_EQ(calls.load(), 3);
}

TEST(RemoteClient, GivesUpWithTransportErrorAfterRetries) {
  StubServer stub;
  std::atomic<int> calls{0};
  stub.server().Post("/v1/fill_mask", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 500;
  });
  RemoteConfig c = config_for(stub.url());
  c.retries = 1;
  RemoteClient client(c);
  EXPECT_THROW(client.fill(aim_masked(), 1), TransportError);
  EXPECT_EQ(calls.load(), 2);
}

TEST(RemoteClient, UnreachableServerIsTransportError) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  RemoteConfig c = config_for("http://127.0.0.1:" + std::to_string(port));
  c.timeout = std::chrono::milliseconds(300);
  RemoteClient client(c);
  EXPECT_THROW(client.fill(aim_masked(), 1), TransportError);
  EXPECT_EQ(client.model_id(), "remote:unreachable");
}

TEST(RemoteClient, TokenizeAndHealth) {
  StubServer stub;
  stub.server().Post("/v1/tokenize", [](const httplib::Request& req, httplib::Response& res) {
    auto tokens = json::parse(req.body).at("tokens");
    json pieces = json::array();
    for (const auto& t : tokens) {
      if (t == "adequate") {
        pieces.push_back("ad");
        pieces.push_back("##e");
        pieces.push_back("##quate");
      } else {
        pieces.push_back(t);
      }
    }
    res.set_content(json{{"pieces", pieces}}.dump(), "application/json");
  });
  stub.server().Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status": "ok", "model_id": "stub-bert"})", "application/json");
  });
  RemoteClient client(config_for(stub.url() + "/"));
  EXPECT_EQ(client.count_pieces(TokenSeq{"adequate", "rooms"}), 4u);
  EXPECT_EQ(client.model_id(), "stub-bert");
}

TEST(RemoteClient, ConcurrentCallsStayWithinLimit) {
  StubServer stub;
  std::atomic<int> in_flight{0}, peak{0};
  const json fixture = load_fixture();
  stub.server().Post("/v1/fill_mask", [&](const httplib::Request&, httplib::Response& res) {
    int now = ++in_flight;
    int p = peak.load();
    while (now > p && !peak.compare_exchange_weak(p, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --in_flight;
    res.set_content(fixture["response"].dump(), "application/json");
  });
  RemoteConfig c = config_for(stub.url());
  c.max_in_flight = 2;
  RemoteClient client(c);
  std::vector<std::jthread> pool;
  std::atomic<int> ok{0};
  for (int t = 0; t < 6; ++t) {
    pool.emplace_back([&] {
      if (client.fill(aim_masked(), 1).per_mask[0][0].piece == "allow") ++ok;
    });
  }
  pool.clear();
  EXPECT_EQ(ok.load(), 6);
  EXPECT_LE(peak.load(), 2);
}

TEST(ParseFillResponse, RejectsIndexMismatchAndBadCandidates) {
  json body = {{"masks", {{{"index", 3}, {"candidates", json::array()}}}}};
  EXPECT_THROW(parse_fill_response(body, {4}, 1), ProtocolError);
  body["masks"][0]["index"] = 4;
  EXPECT_NO_THROW(parse_fill_response(body, {4}, 1));
  body["masks"][0]["candidates"] = {{{"piece", ""}, {"log_prob", -1.0}}};
  EXPECT_THROW(parse_fill_response(body, {4}, 1), ProtocolError);
  EXPECT_THROW(parse_fill_response(json::array(), {4}, 1), ProtocolError);
}

TEST(RemoteClient, RejectsBadConfig) {
  EXPECT_THROW(RemoteClient(RemoteConfig{}), ConfigError);
  RemoteConfig c = config_for("http://127.0.0.1:1");
  c.max_in_flight = 0;
  EXPECT_THROW(RemoteClient{c}, ConfigError);
}

}  // namespace
}  // namespace gecmf
