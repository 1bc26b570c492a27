// gecmf: grammatical error correction by masking and filling.
//
//   gecmf extract SRC TGT            parallel sentences -> M2
//   gecmf expand   --corpus X.m2     single-edit instances
//   gecmf mask     --instances F     masked instances
//   gecmf evaluate --corpus X.m2     sentence- and mask-level scores

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gecmf/error.hpp"
#include "gecmf/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  std::string corpus, instances, out, scheme, strategy, model, endpoint, mode, rerank;
  std::string vocab, lexicon;
  std::size_t top_k = 0, jobs = 0, gold_rank = 0;
  std::uint64_t seed = 0;
  double beta = 0;
  int timeout_ms = 0, retries = 0, max_in_flight = 0;
  bool include_deletions = false, grid = false;
};

void add_run_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  cmd->add_option("--corpus", f.corpus, "M2 corpus");
  cmd->add_option("--instances", f.instances, "instance JSONL written by 'expand'");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--scheme", f.scheme, "each-edit|last-edit");
  cmd->add_option("--strategy", f.strategy, "origin|target|single");
  cmd->add_option("--model", f.model, "gold-mock|lexicon-mock|remote");
  cmd->add_option("--endpoint", f.endpoint, "model server URL (default $GECMF_ENDPOINT)");
  cmd->add_option("--top-k", f.top_k, "candidates per mask (default 5)");
  cmd->add_option("--mode", f.mode, "exact|any_token (default by strategy)");
  cmd->add_option("--rerank", f.rerank, "identity|oracle");
  cmd->add_flag("--include-deletions", f.include_deletions, "score deletion instances too");
  cmd->add_flag("--grid", f.grid, "run every scheme x strategy pair");
  cmd->add_option("--jobs", f.jobs, "worker threads (default: logical CPUs)");
  cmd->add_option("--seed", f.seed, "reserved");
  cmd->add_option("--beta", f.beta, "F-beta weight (default 0.5)");
  cmd->add_option("--gold-rank", f.gold_rank, "rank of the gold piece for gold-mock");
  cmd->add_option("--vocab", f.vocab, "WordPiece vocabulary for the mock models");
  cmd->add_option("--lexicon", f.lexicon, "piece<TAB>count table for lexicon-mock");
  cmd->add_option("--timeout-ms", f.timeout_ms, "remote request timeout");
  cmd->add_option("--retries", f.retries, "remote retries on transport errors");
  cmd->add_option("--max-in-flight", f.max_in_flight, "remote concurrency limit");
}

gecmf::RunConfig resolve(const CLI::App* cmd, const Flags& f) {
  gecmf::RunConfig c = f.config.empty() ? gecmf::RunConfig{} : gecmf::RunConfig::from_file(f.config);
  if (c.endpoint.empty()) {
    if (const char* env = std::getenv("GECMF_ENDPOINT")) c.endpoint = env;
  }
  auto given = [cmd](const char* name) { return cmd->count(name) > 0; };
  if (given("--corpus")) c.corpus = f.corpus;
  if (given("--instances")) c.instances = f.instances;
  if (given("--out")) c.out_dir = f.out;
  if (given("--scheme")) c.scheme = gecmf::parse_scheme(f.scheme);
  if (given("--strategy")) c.strategy = gecmf::parse_strategy(f.strategy);
  if (given("--model")) c.model = gecmf::parse_model_kind(f.model);
  if (given("--endpoint")) c.endpoint = f.endpoint;
  if (given("--top-k")) c.top_k = f.top_k;
  if (given("--mode")) c.mode = gecmf::parse_match_mode(f.mode);
  if (given("--rerank")) c.rerank = gecmf::parse_rerank(f.rerank);
  if (given("--include-deletions")) c.include_deletions = f.include_deletions;
  if (given("--grid")) c.grid = f.grid;
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--seed")) c.seed = f.seed;
  if (given("--beta")) c.beta = f.beta;
  if (given("--gold-rank")) c.gold_rank = f.gold_rank;
  if (given("--vocab")) c.vocab = f.vocab;
  if (given("--lexicon")) c.lexicon = f.lexicon;
  if (given("--timeout-ms")) c.timeout_ms = f.timeout_ms;
  if (given("--retries")) c.retries = f.retries;
  if (given("--max-in-flight")) c.max_in_flight = f.max_in_flight;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammatical error correction by masking and filling"};
  app.set_version_flag("--version", std::string(gecmf::kVersion));
  app.require_subcommand(1);

  std::string src, tgt;
  auto* extract = app.add_subcommand("extract", "align parallel sentences and print M2");
  extract->add_option("source", src, "source sentences, one per line")->required();
  extract->add_option("target", tgt, "corrected sentences, one per line")->required();

  Flags flags;
  auto* expand = app.add_subcommand("expand", "expand an M2 corpus into single-edit instances");
  auto* mask = app.add_subcommand("mask", "mask single-edit instances");
  auto* evaluate = app.add_subcommand("evaluate", "fill masks and score");
  for (auto* cmd : {expand, mask, evaluate}) add_run_options(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  if (extract->parsed()) return gecmf::cmd_extract(src, tgt, std::cout, std::cerr);

  CLI::App* cmd = expand->parsed() ? expand : mask->parsed() ? mask : evaluate;
  gecmf::RunConfig config;
  try {
    config = resolve(cmd, flags);
    if (cmd != expand) config.validate();
  } catch (const gecmf::Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  }
  if (cmd == expand) return gecmf::cmd_expand(config, std::cout, std::cerr);
  if (cmd == mask) return gecmf::cmd_mask(config, std::cout, std::cerr);
  return gecmf::cmd_evaluate(config, std::cout, std::cerr);
}
