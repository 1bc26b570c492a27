#include "gecmf/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "gecmf/alignment.hpp"
#include "gecmf/error.hpp"
#include "gecmf/m2.hpp"
#include "gecmf/mock_models.hpp"
#include "gecmf/records.hpp"
#include "gecmf/remote_client.hpp"

namespace gecmf {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::gold_mock: return "gold-mock";
    case ModelKind::lexicon_mock: return "lexicon-mock";
    case ModelKind::remote: return "remote";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "gold-mock") return ModelKind::gold_mock;
  if (name == "lexicon-mock") return ModelKind::lexicon_mock;
  if (name == "remote") return ModelKind::remote;
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (top_k == 0) throw ConfigError("--top-k must be at least 1");
  if (model == ModelKind::remote && endpoint.empty()) {
    throw ConfigError("the remote model needs --endpoint or GECMF_ENDPOINT");
  }
  if (!(beta > 0)) throw ConfigError("beta must be positive");
  if (gold_rank == 0) throw ConfigError("gold rank is 1-based");
}

json RunConfig::to_json() const {
  json j{{"corpus", corpus},
         {"instances", instances},
         {"out", out_dir},
         {"scheme", to_string(scheme)},
         {"strategy", to_string(strategy)},
         {"grid", grid},
         {"model", to_string(model)},
         {"endpoint", endpoint},
         {"top_k", top_k},
         {"rerank", to_string(rerank)},
         {"include_deletions", include_deletions},
         {"jobs", jobs},
         {"seed", seed},
         {"beta", beta},
         {"gold_rank", gold_rank},
         {"vocab", vocab},
         {"lexicon", lexicon},
         {"timeout_ms", timeout_ms},
         {"retries", retries},
         {"max_in_flight", max_in_flight}};
  j["mode"] = mode ? json(to_string(*mode)) : json(nullptr);
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  static const std::set<std::string> known = {
      "corpus",   "instances", "out",         "scheme",     "strategy", "grid",
      "model",    "endpoint",  "top_k",       "mode",       "rerank",   "include_deletions",
      "jobs",     "seed",      "beta",        "gold_rank",  "vocab",    "lexicon",
      "timeout_ms", "retries", "max_in_flight"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
    c.corpus = j.value("corpus", c.corpus);
    c.instances = j.value("instances", c.instances);
    c.out_dir = j.value("out", c.out_dir);
    if (j.contains("scheme")) c.scheme = parse_scheme(j["scheme"].get<std::string>());
    if (j.contains("strategy")) c.strategy = parse_strategy(j["strategy"].get<std::string>());
    c.grid = j.value("grid", c.grid);
    if (j.contains("model")) c.model = parse_model_kind(j["model"].get<std::string>());
    c.endpoint = j.value("endpoint", c.endpoint);
    c.top_k = j.value("top_k", c.top_k);
    if (j.contains("mode") && !j["mode"].is_null()) {
      c.mode = parse_match_mode(j["mode"].get<std::string>());
    }
    if (j.contains("rerank")) c.rerank = parse_rerank(j["rerank"].get<std::string>());
    c.include_deletions = j.value("include_deletions", c.include_deletions);
    c.jobs = j.value("jobs", c.jobs);
    c.seed = j.value("seed", c.seed);
    c.beta = j.value("beta", c.beta);
    c.gold_rank = j.value("gold_rank", c.gold_rank);
    c.vocab = j.value("vocab", c.vocab);
    c.lexicon = j.value("lexicon", c.lexicon);
    c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
    c.retries = j.value("retries", c.retries);
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::unique_ptr<FillModel> make_model(const RunConfig& config) {
  WordpieceSegmenter segmenter = config.vocab.empty()
                                     ? WordpieceSegmenter::builtin()
                                     : WordpieceSegmenter::from_file(config.vocab);
  switch (config.model) {
    case ModelKind::gold_mock:
      return std::make_unique<GoldMock>(config.gold_rank, std::move(segmenter));
    case ModelKind::lexicon_mock:
      return std::make_unique<LexiconMock>(
          config.lexicon.empty() ? LexiconMock::builtin(std::move(segmenter))
                                 : LexiconMock::from_file(config.lexicon, std::move(segmenter)));
    case ModelKind::remote: {
      RemoteConfig rc;
      rc.base_url = config.endpoint;
      rc.timeout = std::chrono::milliseconds(config.timeout_ms);
      rc.retries = config.retries;
      rc.max_in_flight = config.max_in_flight;
      return std::make_unique<RemoteClient>(rc);
    }
  }
  throw ConfigError("unknown model kind");
}

std::size_t effective_jobs(const RunConfig& config) {
  std::size_t jobs = config.jobs;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (config.model == ModelKind::remote) {
    jobs = std::min(jobs, static_cast<std::size_t>(std::max(1, config.max_in_flight)));
  }
  return jobs;
}

void write_manifest(const RunConfig& config, const std::string& command,
                    const std::string& model_id) {
  fs::create_directories(config.out_dir);
  json manifest{{"command", command},
                {"toolkit", "gecmf"},
                {"version", kVersion},
                {"model_id", model_id},
                {"config", config.to_json()}};
  std::ofstream out(fs::path(config.out_dir) / "manifest.json");
  if (!out) throw Error("cannot write manifest in " + config.out_dir);
  out << manifest.dump(2) << '\n';
}

namespace {

std::vector<TokenSeq> read_sentences(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<TokenSeq> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(TokenSeq::from_text(line));
  }
  return out;
}

std::vector<SingleEditInstance> load_instances(const RunConfig& config) {
  if (!config.instances.empty()) return records::read_instances(config.instances);
  if (config.corpus.empty()) throw ConfigError("need --instances or --corpus");
  return expand_corpus(m2::read_file(config.corpus), config.scheme);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const InstanceError& e) {
    err << "failed: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace

int cmd_extract(const std::string& source_path, const std::string& target_path,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto sources = read_sentences(source_path);
    const auto targets = read_sentences(target_path);
    if (sources.size() != targets.size()) {
      err << "error: " << source_path << " has " << sources.size() << " lines but "
          << target_path << " has " << targets.size() << '\n';
      return 1;
    }
    std::vector<AnnotatedSentence> blocks;
    blocks.reserve(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
      blocks.push_back({sources[i], extract_edits(sources[i], targets[i]), 0});
    }
    out << m2::serialize(blocks);
    return 0;
  });
}

int cmd_expand(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.corpus.empty()) throw ConfigError("expand needs --corpus");
    const auto corpus = m2::read_file(config.corpus);
    fs::create_directories(config.out_dir);
    std::vector<Scheme> schemes;
    if (config.grid) {
      schemes = {Scheme::each_edit, Scheme::last_edit};
    } else {
      schemes = {config.scheme};
    }
    for (Scheme scheme : schemes) {
      const auto instances = expand_corpus(corpus, scheme);
      const fs::path path =
          fs::path(config.out_dir) / ("instances." + std::string(to_string(scheme)) + ".jsonl");
      records::write_instances(path.string(), instances, scheme);
      out << to_string(scheme) << ": " << instances.size() << " instances -> "
          << path.string() << '\n';
    }
    write_manifest(config, "expand", "none");
    return 0;
  });
}

int cmd_mask(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const auto instances = load_instances(config);
    auto model = make_model(config);
    const PieceSegmenter segmenter = model->segmenter();
    std::vector<MaskedInstance> masked;
    std::vector<SingleEditInstance> deletions;
    for (const auto& inst : instances) {
      if (inst.is_deletion()) {
        deletions.push_back(inst);
        continue;
      }
      try {
        masked.push_back(mask_instance(inst, config.strategy, segmenter));
      } catch (const Error& e) {
        throw InstanceError(inst.instance_id, e.what());
      }
    }
    fs::create_directories(config.out_dir);
    const fs::path path = fs::path(config.out_dir) /
                          ("masked." + std::string(to_string(config.strategy)) + ".jsonl");
    records::write_masked(path.string(), masked, config.strategy);
    records::write_instances((fs::path(config.out_dir) / "deletions.jsonl").string(), deletions,
                             config.scheme);
    out << to_string(config.strategy) << ": " << masked.size() << " masked, "
        << deletions.size() << " deletions -> " << path.string() << '\n';
    write_manifest(config, "mask", model->model_id());
    return 0;
  });
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    auto model = make_model(config);
    EvalOptions opt;
    opt.strategy = config.strategy;
    opt.k = config.top_k;
    opt.mode = config.mode;
    opt.include_deletions = config.include_deletions;
    opt.rerank = config.rerank;
    opt.beta = config.beta;
    opt.jobs = effective_jobs(config);

    std::vector<EvalReport> reports;
    if (config.grid) {
      if (config.corpus.empty()) throw ConfigError("--grid needs --corpus");
      reports = evaluate_grid(m2::read_file(config.corpus), opt, *model);
    } else {
      EvalReport r = evaluate_corpus(load_instances(config), opt, *model);
      r.scheme = std::string(to_string(config.scheme));
      reports.push_back(std::move(r));
    }

    fs::create_directories(config.out_dir);
    json body = json::array();
    for (const auto& r : reports) body.push_back(r.to_json());
    {
      std::ofstream f(fs::path(config.out_dir) / "report.json");
      if (!f) throw Error("cannot write report in " + config.out_dir);
      f << json{{"reports", body}}.dump(2) << '\n';
    }
    const std::string table = render_tables(reports);
    {
      std::ofstream f(fs::path(config.out_dir) / "report.txt");
      f << table;
    }
    out << table;
    write_manifest(config, "evaluate", model->model_id());
    return 0;
  });
}

}  // namespace gecmf
