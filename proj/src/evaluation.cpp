#include "gecmf/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "gecmf/alignment.hpp"
#include "gecmf/error.hpp"

namespace gecmf {

using nlohmann::json;

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::exact ? "exact" : "any_token";
}

MatchMode parse_match_mode(std::string_view name) {
  if (name == "exact") return MatchMode::exact;
  if (name == "any_token" || name == "any-token" || name == "any") return MatchMode::any_token;
  throw ConfigError("unknown match mode '" + std::string(name) + "'");
}

MatchMode default_mode(MaskStrategy strategy) {
  return strategy == MaskStrategy::single ? MatchMode::any_token : MatchMode::exact;
}

namespace {

bool contains(const Edit& outer, const Edit& inner) {
  if (outer.start == outer.end) return inner.start == outer.start && inner.end == outer.end;
  return outer.start <= inner.start && inner.end <= outer.end;
}

bool shares_token(const TokenSeq& a, const TokenSeq& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& t) {
    return std::find(b.begin(), b.end(), t) != b.end();
  });
}

bool edits_match(const Edit& sys, const Edit& gold, MatchMode mode) {
  if (sys == gold) return true;
  return mode == MatchMode::any_token && sys.start == gold.start && sys.end == gold.end &&
         shares_token(sys.replacement, gold.replacement);
}

}  // namespace

EditSet anchor_system_edits(const TokenSeq& source, const EditSet& system, const EditSet& gold) {
  std::vector<Edit> out;
  std::vector<bool> used(system.size(), false);
  for (const Edit& g : gold) {
    // A system edit straddling the gold boundary blocks coalescing.
    bool straddled = false;
    for (std::size_t i = 0; i < system.size(); ++i) {
      const Edit& e = system[i];
      if (!used[i] && !contains(g, e) && e.start < g.end && g.start < e.end) straddled = true;
    }
    if (straddled) continue;
    std::vector<Edit> group;
    for (std::size_t i = 0; i < system.size(); ++i) {
      if (!used[i] && contains(g, system[i])) {
        used[i] = true;
        Edit shifted = system[i];
        shifted.start -= g.start;
        shifted.end -= g.start;
        group.push_back(std::move(shifted));
      }
    }
    if (group.empty()) continue;
    TokenSeq region = apply_edits(source.slice(g.start, g.end), EditSet(std::move(group)));
    if (region == source.slice(g.start, g.end)) continue;
    out.push_back(Edit{g.start, g.end, std::move(region)});
  }
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (!used[i]) out.push_back(system[i]);
  }
  return EditSet(std::move(out));
}

EditCounts score_sentence(const TokenSeq& source, const TokenSeq& hypothesis, const EditSet& gold,
                          MatchMode mode) {
  const EditSet system = anchor_system_edits(source, extract_edits(source, hypothesis), gold);
  EditCounts counts;
  std::vector<bool> gold_used(gold.size(), false);
  for (const Edit& sys : system) {
    bool matched = false;
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (!gold_used[g] && edits_match(sys, gold[g], mode)) {
        gold_used[g] = true;
        matched = true;
        break;
      }
    }
    if (matched) {
      ++counts.tp;
    } else {
      ++counts.fp;
    }
  }
  counts.fn = gold.size() - counts.tp;
  return counts;
}

double f_beta(double precision, double recall, double beta) {
  if (!(beta > 0)) throw ConfigError("beta must be positive");
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0) return 0;
  return (1 + b2) * precision * recall / denom;
}

Scores prf(std::size_t tp, std::size_t fp, std::size_t fn, double beta) {
  if (!(beta > 0)) throw ConfigError("beta must be positive");
  Scores s;
  s.precision = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  s.recall = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  s.f_beta = f_beta(s.precision, s.recall, beta);
  return s;
}

MaskHits mask_hits(const PredictionSet& predictions, const std::vector<std::string>& gold,
                   std::size_t k, MatchMode mode) {
  if (gold.empty()) throw ValidationError("mask accuracy needs at least one gold unit");
  if (k == 0) throw ConfigError("k must be at least 1");
  if (k > predictions.k) {
    throw ConfigError("k=" + std::to_string(k) + " exceeds prediction depth " +
                      std::to_string(predictions.k));
  }
  auto in_top_k = [k](const std::vector<Candidate>& list, const std::string& piece) {
    const std::size_t depth = std::min(k, list.size());
    return std::any_of(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(depth),
                       [&](const Candidate& c) { return c.piece == piece; });
  };
  MaskHits hits;
  const auto& masks = predictions.per_mask;
  if (mode == MatchMode::any_token) {
    hits.total = masks.size();
    for (const auto& list : masks) {
      if (std::any_of(gold.begin(), gold.end(),
                      [&](const std::string& g) { return in_top_k(list, g); })) {
        ++hits.correct;
      }
    }
    return hits;
  }
  hits.total = std::max(masks.size(), gold.size());
  for (std::size_t i = 0; i < std::min(masks.size(), gold.size()); ++i) {
    if (in_top_k(masks[i], gold[i])) ++hits.correct;
  }
  return hits;
}

double mask_accuracy(const PredictionSet& predictions, const std::vector<std::string>& gold,
                     std::size_t k, MatchMode mode) {
  const MaskHits h = mask_hits(predictions, gold, k, mode);
  return h.total == 0 ? 0.0 : static_cast<double>(h.correct) / static_cast<double>(h.total);
}

std::vector<Candidate> OracleReranker::rerank_mask(std::size_t mask_index,
                                                   std::vector<Candidate> candidates) const {
  auto is_gold = [&](const Candidate& c) {
    if (mode_ == MatchMode::any_token) {
      return std::find(gold_.begin(), gold_.end(), c.piece) != gold_.end();
    }
    return mask_index < gold_.size() && c.piece == gold_[mask_index];
  };
  auto it = std::find_if(candidates.begin(), candidates.end(), is_gold);
  if (it != candidates.end()) std::rotate(candidates.begin(), it, it + 1);
  return candidates;
}

PredictionSet rerank(const PredictionSet& predictions, const Reranker& reranker) {
  PredictionSet out;
  out.k = predictions.k;
  out.per_mask.reserve(predictions.per_mask.size());
  for (std::size_t i = 0; i < predictions.per_mask.size(); ++i) {
    out.per_mask.push_back(reranker.rerank_mask(i, predictions.per_mask[i]));
  }
  return out;
}

std::string_view to_string(RerankKind kind) {
  return kind == RerankKind::identity ? "identity" : "oracle";
}

RerankKind parse_rerank(std::string_view name) {
  if (name == "identity" || name == "none") return RerankKind::identity;
  if (name == "oracle") return RerankKind::oracle;
  throw ConfigError("unknown reranker '" + std::string(name) + "'");
}

json EvalReport::to_json() const {
  json acc = json::object();
  for (const auto& [k, v] : acc_at) acc[std::to_string(k)] = v;
  return json{{"scheme", scheme},
              {"strategy", strategy},
              {"mode", mode},
              {"model_id", model_id},
              {"tp", tp},
              {"fp", fp},
              {"fn", fn},
              {"precision", precision},
              {"recall", recall},
              {"f_beta", f_beta},
              {"beta", beta},
              {"acc_at", acc},
              {"n_instances", n_instances},
              {"n_masks", n_masks},
              {"excluded_deletions", excluded_deletions}};
}

EvalReport EvalReport::from_json(const json& j) {
  EvalReport r;
  r.scheme = j.at("scheme").get<std::string>();
  r.strategy = j.at("strategy").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  r.model_id = j.at("model_id").get<std::string>();
  r.tp = j.at("tp").get<std::size_t>();
  r.fp = j.at("fp").get<std::size_t>();
  r.fn = j.at("fn").get<std::size_t>();
  r.precision = j.at("precision").get<double>();
  r.recall = j.at("recall").get<double>();
  r.f_beta = j.at("f_beta").get<double>();
  r.beta = j.at("beta").get<double>();
  for (const auto& [k, v] : j.at("acc_at").items()) r.acc_at[std::stoul(k)] = v.get<double>();
  r.n_instances = j.at("n_instances").get<std::size_t>();
  r.n_masks = j.at("n_masks").get<std::size_t>();
  r.excluded_deletions = j.at("excluded_deletions").get<std::size_t>();
  return r;
}

namespace {

struct Partial {
  EditCounts counts;
  std::vector<std::size_t> correct_at;  // index k-1
  std::size_t masks = 0;
  std::size_t scored = 0;
  std::size_t excluded = 0;

  explicit Partial(std::size_t k) : correct_at(k, 0) {}

  void merge(const Partial& o) {
    counts += o.counts;
    for (std::size_t i = 0; i < correct_at.size(); ++i) correct_at[i] += o.correct_at[i];
    masks += o.masks;
    scored += o.scored;
    excluded += o.excluded;
  }
};

void evaluate_one(const SingleEditInstance& inst, const EvalOptions& opt, MatchMode mode,
                  const FillModel& model, Partial& acc) {
  const EditSet gold({inst.residual});
  if (inst.is_deletion()) {
    if (!opt.include_deletions) {
      ++acc.excluded;
      return;
    }
    acc.counts += score_sentence(inst.source, apply_deletion(inst), gold, mode);
    ++acc.scored;
    return;
  }
  const MaskedInstance masked = mask_instance(inst, opt.strategy, model.segmenter());
  const PredictionSet raw = fill(model, masked, opt.k);
  const std::vector<std::string> units = masked.gold_units();
  const PredictionSet ranked = opt.rerank == RerankKind::oracle
                                   ? rerank(raw, OracleReranker(units, mode))
                                   : raw;
  std::size_t total = 0;
  for (std::size_t k = 1; k <= opt.k; ++k) {
    const MaskHits h = mask_hits(ranked, units, k, mode);
    acc.correct_at[k - 1] += h.correct;
    total = h.total;
  }
  acc.masks += total;
  acc.counts += score_sentence(inst.source, assemble_hypothesis(masked, ranked, 1), gold, mode);
  ++acc.scored;
}

}  // namespace

EvalReport evaluate_corpus(const std::vector<SingleEditInstance>& instances,
                           const EvalOptions& options, const FillModel& model) {
  if (options.k == 0) throw ConfigError("top-k must be at least 1");
  if (!(options.beta > 0)) throw ConfigError("beta must be positive");
  const MatchMode mode = options.effective_mode();
  const std::size_t jobs =
      std::max<std::size_t>(1, std::min(options.jobs, std::max<std::size_t>(1, instances.size())));

  Partial total(options.k);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  std::size_t failed_at = instances.size();

  auto worker = [&] {
    Partial local(options.k);
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) break;
      try {
        evaluate_one(instances[i], options, mode, model, local);
      } catch (const Error& e) {
        std::lock_guard lock(mu);
        // Report the lowest failing index so the error is deterministic.
        if (i < failed_at) {
          failed_at = i;
          failure = std::make_exception_ptr(InstanceError(instances[i].instance_id, e.what()));
        }
        next.store(instances.size());
        break;
      }
    }
    std::lock_guard lock(mu);
    total.merge(local);
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  EvalReport r;
  r.strategy = std::string(to_string(options.strategy));
  r.mode = std::string(to_string(mode));
  r.model_id = model.model_id();
  r.tp = total.counts.tp;
  r.fp = total.counts.fp;
  r.fn = total.counts.fn;
  const Scores s = prf(r.tp, r.fp, r.fn, options.beta);
  r.precision = s.precision;
  r.recall = s.recall;
  r.f_beta = s.f_beta;
  r.beta = options.beta;
  r.n_instances = total.scored;
  r.n_masks = total.masks;
  r.excluded_deletions = total.excluded;
  for (std::size_t k = 1; k <= options.k; ++k) {
    r.acc_at[k] = total.masks == 0 ? 0.0
                                   : static_cast<double>(total.correct_at[k - 1]) /
                                         static_cast<double>(total.masks);
  }
  return r;
}

std::vector<EvalReport> evaluate_grid(const std::vector<AnnotatedSentence>& corpus,
                                      const EvalOptions& options, const FillModel& model) {
  std::vector<EvalReport> out;
  for (Scheme scheme : {Scheme::each_edit, Scheme::last_edit}) {
    const auto instances = expand_corpus(corpus, scheme);
    for (MaskStrategy strategy :
         {MaskStrategy::origin_span, MaskStrategy::target_length, MaskStrategy::single}) {
      EvalOptions opt = options;
      opt.strategy = strategy;
      // A grid uses each strategy's own default pairing unless overridden.
      EvalReport r = evaluate_corpus(instances, opt, model);
      r.scheme = std::string(to_string(scheme));
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string render_tables(const std::vector<EvalReport>& reports) {
  std::vector<std::string> schemes;
  std::vector<std::string> strategies;
  for (const EvalReport& r : reports) {
    if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end()) {
      schemes.push_back(r.scheme);
    }
    if (std::find(strategies.begin(), strategies.end(), r.strategy) == strategies.end()) {
      strategies.push_back(r.strategy);
    }
  }
  auto find = [&](const std::string& scheme, const std::string& strategy) -> const EvalReport* {
    for (const EvalReport& r : reports) {
      if (r.scheme == scheme && r.strategy == strategy) return &r;
    }
    return nullptr;
  };
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);

  os << "Sentence-level (P@1 R@1 F0.5@1)\n";
  os << std::left << std::setw(10) << "strategy";
  for (const auto& s : schemes) os << " | " << std::setw(23) << s;
  os << "\n" << std::setw(10) << "";
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    os << " | " << std::setw(7) << "P@1" << std::setw(8) << "R@1" << std::setw(8) << "F0.5@1";
  }
  os << "\n";
  for (const auto& st : strategies) {
    os << std::setw(10) << st;
    for (const auto& sc : schemes) {
      const EvalReport* r = find(sc, st);
      os << " | ";
      if (!r) {
        os << std::setw(23) << "-";
        continue;
      }
      os << std::setw(7) << r->precision << std::setw(8) << r->recall << std::setw(8)
         << r->f_beta;
    }
    os << "\n";
  }

  std::size_t depth = 1;
  for (const EvalReport& r : reports) {
    if (!r.acc_at.empty()) depth = std::max(depth, r.acc_at.rbegin()->first);
  }
  const std::string top = "Acc@" + std::to_string(depth);
  os << "\nMask-level (Acc@1 " << top << ")\n";
  os << std::setw(10) << "strategy";
  for (const auto& s : schemes) os << " | " << std::setw(15) << s;
  os << "\n" << std::setw(10) << "";
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    os << " | " << std::setw(7) << "Acc@1" << std::setw(8) << top;
  }
  os << "\n";
  for (const auto& st : strategies) {
    os << std::setw(10) << st;
    for (const auto& sc : schemes) {
      const EvalReport* r = find(sc, st);
      os << " | ";
      if (!r || r->acc_at.empty()) {
        os << std::setw(15) << "-";
        continue;
      }
      os << std::setw(7) << r->acc_at.at(1) << std::setw(8) << r->acc_at.rbegin()->second;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace gecmf
