#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gecmf/core.hpp"
#include "gecmf/expansion.hpp"
#include "gecmf/fillmask.hpp"
#include "gecmf/masking.hpp"

namespace gecmf {

enum class MatchMode {
  exact,      // span and replacement identical
  any_token,  // exact, or same span sharing at least one replacement token
};

std::string_view to_string(MatchMode mode);
MatchMode parse_match_mode(std::string_view name);

/// exact for origin/target masking, any_token for a single mask.
MatchMode default_mode(MaskStrategy strategy);

struct EditCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  EditCounts& operator+=(const EditCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

/// System edits extracted from (source, hypothesis), with every group of
/// system edits lying inside one gold span coalesced into a single edit over
/// that span. Edits outside gold spans are returned unchanged.
EditSet anchor_system_edits(const TokenSeq& source, const EditSet& system, const EditSet& gold);

/// Span-based edit matching between the hypothesis and the gold edits.
EditCounts score_sentence(const TokenSeq& source, const TokenSeq& hypothesis,
                          const EditSet& gold, MatchMode mode);

struct Scores {
  double precision = 0;
  double recall = 0;
  double f_beta = 0;
};

/// P = 1 when tp+fp = 0 and R = 1 when tp+fn = 0. Throws ConfigError for
/// beta <= 0.
Scores prf(std::size_t tp, std::size_t fp, std::size_t fn, double beta = 0.5);
/// F-beta from precision and recall; 0 when both are 0.
double f_beta(double precision, double recall, double beta = 0.5);

struct MaskHits {
  std::size_t correct = 0;
  std::size_t total = 0;
};

/// Per-mask top-k hits. exact: gold unit i must be in mask i's top k, and
/// surplus gold units or masks count as misses. any_token: a mask is correct
/// when any gold unit is in its top k.
MaskHits mask_hits(const PredictionSet& predictions, const std::vector<std::string>& gold,
                   std::size_t k, MatchMode mode);
double mask_accuracy(const PredictionSet& predictions, const std::vector<std::string>& gold,
                     std::size_t k, MatchMode mode);

class Reranker {
 public:
  virtual ~Reranker() = default;
  /// Returns a permutation of `candidates` for mask `mask_index`.
  virtual std::vector<Candidate> rerank_mask(std::size_t mask_index,
                                             std::vector<Candidate> candidates) const = 0;
};

class IdentityReranker final : public Reranker {
 public:
  std::vector<Candidate> rerank_mask(std::size_t,
                                     std::vector<Candidate> candidates) const override {
    return candidates;
  }
};

/// Moves the gold candidate to rank 1 when it is present.
class OracleReranker final : public Reranker {
 public:
  OracleReranker(std::vector<std::string> gold, MatchMode mode)
      : gold_(std::move(gold)), mode_(mode) {}
  std::vector<Candidate> rerank_mask(std::size_t mask_index,
                                     std::vector<Candidate> candidates) const override;

 private:
  std::vector<std::string> gold_;
  MatchMode mode_;
};

PredictionSet rerank(const PredictionSet& predictions, const Reranker& reranker);

enum class RerankKind { identity, oracle };
std::string_view to_string(RerankKind kind);
RerankKind parse_rerank(std::string_view name);

struct EvalOptions {
  MaskStrategy strategy = MaskStrategy::single;
  std::size_t k = 5;
  std::optional<MatchMode> mode;
  bool include_deletions = false;
  RerankKind rerank = RerankKind::identity;
  double beta = 0.5;
  std::size_t jobs = 1;

  MatchMode effective_mode() const { return mode.value_or(default_mode(strategy)); }
};

struct EvalReport {
  std::string scheme;
  std::string strategy;
  std::string mode;
  std::string model_id;
  std::size_t tp = 0, fp = 0, fn = 0;
  double precision = 1, recall = 1, f_beta = 0;
  double beta = 0.5;
  /// Mask-level accuracy at each depth 1..k, after reranking.
  std::map<std::size_t, double> acc_at;
  std::size_t n_instances = 0;
  std::size_t n_masks = 0;
  std::size_t excluded_deletions = 0;

  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);
};

/// Mask -> fill -> rerank -> assemble -> score for every instance, with
/// counts summed over the corpus before P/R/F are computed. Failures are
/// rethrown as InstanceError carrying the instance id.
EvalReport evaluate_corpus(const std::vector<SingleEditInstance>& instances,
                           const EvalOptions& options, const FillModel& model);

/// Every (scheme, strategy) pair over one corpus, schemes outermost.
std::vector<EvalReport> evaluate_grid(const std::vector<AnnotatedSentence>& corpus,
                                      const EvalOptions& options, const FillModel& model);

/// Sentence-level and mask-level tables: strategy rows, scheme column groups.
std::string render_tables(const std::vector<EvalReport>& reports);

}  // namespace gecmf
