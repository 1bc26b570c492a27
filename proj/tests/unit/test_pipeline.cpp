#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gecmf/error.hpp"
#include "gecmf/pipeline.hpp"
#include "gecmf/records.hpp"

#ifndef GECMF_DATA
#define GECMF_DATA "data"
#endif
#ifndef GECMF_TEST_DATA
#define GECMF_TEST_DATA "tests/data"
#endif

namespace gecmf {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gecmf-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return (dir_ / name).string();
  }
  json read_json(const std::string& name) {
    std::ifstream in(dir_ / name);
    return json::parse(in);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(PipelineTest, ExtractWritesM2) {
  auto src = write("src.txt", "to recomend you\nall fine\n");
  auto tgt = write("tgt.txt", "to recommend you\nall fine\n");
  ASSERT_EQ(cmd_extract(src, tgt, out_, err_), 0) << err_.str();
  EXPECT_EQ(out_.str(),
            "S to recomend you\nA 1 2|||R:OTHER|||recommend|||REQUIRED|||-NONE-|||0\n\n"
            "S all fine\n\n");
}

TEST_F(PipelineTest, ExtractRejectsMismatchedLineCounts) {
  auto src = write("src.txt", "a\nb\n");
  auto tgt = write("tgt.txt", "a\n");
  EXPECT_EQ(cmd_extract(src, tgt, out_, err_), 1);
  EXPECT_NE(err_.str().find("2 lines"), std::string::npos);
}

TEST_F(PipelineTest, ExpandGridWritesBothSchemes) {
  RunConfig c;
  c.corpus = std::string(GECMF_TEST_DATA) + "/fixture.m2";
  c.out_dir = dir_.string();
  c.grid = true;
  ASSERT_EQ(cmd_expand(c, out_, err_), 0) << err_.str();
  auto each = records::read_instances((dir_ / "instances.each-edit.jsonl").string());
  auto last = records::read_instances((dir_ / "instances.last-edit.jsonl").string());
  EXPECT_EQ(each.size(), 8u);
  EXPECT_EQ(last.size(), 5u);
  EXPECT_EQ(read_json("manifest.json")["command"], "expand");
}

TEST_F(PipelineTest, ExpandOfEditFreeCorpusIsEmptyButSucceeds) {
  RunConfig c;
  c.corpus = write("clean.m2", "S a b\n\nS c\n");
  c.out_dir = dir_.string();
  ASSERT_EQ(cmd_expand(c, out_, err_), 0);
  EXPECT_TRUE(records::read_instances((dir_ / "instances.each-edit.jsonl").string()).empty());
}

TEST_F(PipelineTest, MalformedCorpusIsAParseErrorExit) {
  RunConfig c;
  c.corpus = write("bad.m2", "S a\nA 0 1|||oops\n");
  c.out_dir = dir_.string();
  EXPECT_EQ(cmd_expand(c, out_, err_), 1);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos);
}

TEST_F(PipelineTest, MaskThenEvaluateFromInstances) {
  RunConfig c;
  c.corpus = std::string(GECMF_DATA) + "/synthetic.m2";
  c.out_dir = dir_.string();
  ASSERT_EQ(cmd_expand(c, out_, err_), 0);
  c.corpus.clear();
  c.instances = (dir_ / "instances.each-edit.jsonl").string();
  c.strategy = MaskStrategy::target_length;
  ASSERT_EQ(cmd_mask(c, out_, err_), 0) << err_.str();
  auto masked = records::read_masked((dir_ / "masked.target.jsonl").string());
  auto deletions = records::read_instances((dir_ / "deletions.jsonl").string());
  auto all = records::read_instances(c.instances);
  EXPECT_EQ(masked.size() + deletions.size(), all.size());
  for (const auto& m : masked) EXPECT_TRUE(m.gold_pieces.has_value());

  c.jobs = 2;
  ASSERT_EQ(cmd_evaluate(c, out_, err_), 0) << err_.str();
  auto report = read_json("report.json")["reports"];
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0]["f_beta"], 1.0);
  EXPECT_EQ(report[0]["scheme"], "each-edit");
  EXPECT_EQ(report[0]["strategy"], "target");
  EXPECT_TRUE(fs::exists(dir_ / "report.txt"));
  auto manifest = read_json("manifest.json");
  EXPECT_EQ(manifest["command"], "evaluate");
  EXPECT_EQ(manifest["version"], kVersion);
  EXPECT_EQ(manifest["model_id"], "gold-mock@rank1");
  EXPECT_EQ(manifest["config"]["jobs"], 2);
}

TEST_F(PipelineTest, EvaluateGridProducesSixReports) {
  RunConfig c;
  c.corpus = std::string(GECMF_DATA) + "/synthetic.m2";
  c.out_dir = dir_.string();
  c.grid = true;
  c.model = ModelKind::lexicon_mock;
  ASSERT_EQ(cmd_evaluate(c, out_, err_), 0) << err_.str();
  EXPECT_EQ(read_json("report.json")["reports"].size(), 6u);
  EXPECT_NE(out_.str().find("Sentence-level"), std::string::npos);
}

TEST_F(PipelineTest, UnreachableRemoteFailsNamingTheInstance) {
  RunConfig c;
  c.corpus = std::string(GECMF_TEST_DATA) + "/fixture.m2";
  c.out_dir = dir_.string();
  c.model = ModelKind::remote;
  c.endpoint = "http://127.0.0.1:9";
  c.retries = 0;
  c.timeout_ms = 300;
  c.jobs = 1;
  EXPECT_EQ(cmd_evaluate(c, out_, err_), 1);
  EXPECT_NE(err_.str().find("instance s0/e0"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(dir_ / "report.json"));
}

TEST(RunConfig, JsonRoundTripAndUnknownKeys) {
  RunConfig c;
  c.scheme = Scheme::last_edit;
  c.strategy = MaskStrategy::origin_span;
  c.mode = MatchMode::any_token;
  c.top_k = 3;
  c.model = ModelKind::remote;
  c.endpoint = "http://localhost:9";
  RunConfig back = RunConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_THROW(RunConfig::from_json(json{{"topk", 3}}), ConfigError);
  EXPECT_THROW(RunConfig::from_json(json{{"strategy", "triple"}}), ConfigError);
  EXPECT_THROW(RunConfig::from_json(json{{"top_k", "five"}}), ConfigError);
}

TEST(RunConfig, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.model = ModelKind::remote;
  EXPECT_THROW(c.validate(), ConfigError);
  c.endpoint = "http://localhost:9";
  c.max_in_flight = 3;
  c.jobs = 16;
  EXPECT_EQ(effective_jobs(c), 3u);
  c.top_k = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace gecmf
