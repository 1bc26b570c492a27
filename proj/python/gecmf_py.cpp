// Python bindings. Token sequences cross the boundary as list[str] and edit
// sets as list[Edit]; enums are passed by their CLI spellings.

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gecmf/alignment.hpp"
#include "gecmf/error.hpp"
#include "gecmf/evaluation.hpp"
#include "gecmf/expansion.hpp"
#include "gecmf/fillmask.hpp"
#include "gecmf/m2.hpp"
#include "gecmf/masking.hpp"
#include "gecmf/mock_models.hpp"
#include "gecmf/pipeline.hpp"
#include "gecmf/remote_client.hpp"

namespace py = pybind11;

namespace pybind11::detail {

template <>
struct type_caster<gecmf::TokenSeq> {
  PYBIND11_TYPE_CASTER(gecmf::TokenSeq, const_name("list[str]"));

  bool load(handle src, bool convert) {
    if (py::isinstance<py::str>(src)) return false;
    make_caster<std::vector<std::string>> inner;
    if (!inner.load(src, convert)) return false;
    value = gecmf::TokenSeq(cast_op<std::vector<std::string>>(std::move(inner)));
    return true;
  }

  static handle cast(const gecmf::TokenSeq& seq, return_value_policy policy, handle parent) {
    return make_caster<std::vector<std::string>>::cast(seq.tokens(), policy, parent);
  }
};

template <>
struct type_caster<gecmf::EditSet> {
  PYBIND11_TYPE_CASTER(gecmf::EditSet, const_name("list[Edit]"));

  bool load(handle src, bool convert) {
    make_caster<std::vector<gecmf::Edit>> inner;
    if (!inner.load(src, convert)) return false;
    value = gecmf::EditSet(cast_op<std::vector<gecmf::Edit>>(std::move(inner)));
    return true;
  }

  static handle cast(const gecmf::EditSet& set, return_value_policy policy, handle parent) {
    return make_caster<std::vector<gecmf::Edit>>::cast(set.edits(), policy, parent);
  }
};

}  // namespace pybind11::detail

namespace {

using namespace gecmf;

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<std::vector<std::pair<std::string, double>>> to_lists(const PredictionSet& ps) {
  std::vector<std::vector<std::pair<std::string, double>>> out;
  for (const auto& list : ps.per_mask) {
    auto& row = out.emplace_back();
    for (const auto& c : list) row.emplace_back(c.piece, c.log_prob);
  }
  return out;
}

PredictionSet from_lists(const std::vector<std::vector<std::pair<std::string, double>>>& lists,
                         std::size_t k) {
  PredictionSet ps;
  ps.k = k;
  for (const auto& list : lists) {
    auto& row = ps.per_mask.emplace_back();
    for (const auto& [piece, lp] : list) row.push_back({piece, lp});
  }
  return ps;
}

std::optional<MatchMode> optional_mode(const std::optional<std::string>& name) {
  if (!name) return std::nullopt;
  return parse_match_mode(*name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mask-and-fill grammatical error correction evaluation toolkit";
  m.attr("__version__") = kVersion;
  m.attr("MASK") = std::string(kMaskToken);

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<StructuralError>(m, "StructuralError", error);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<ValidationError>(m, "ValidationError", error);
  py::register_exception<ConfigError>(m, "ConfigError", error);
  py::register_exception<DeletionResidualError>(m, "DeletionResidualError", error);
  py::register_exception<ResidualKindError>(m, "ResidualKindError", error);
  py::register_exception<MergeError>(m, "MergeError", error);
  py::register_exception<RankError>(m, "RankError", error);
  py::register_exception<TransportError>(m, "TransportError", error);
  py::register_exception<ProtocolError>(m, "ProtocolError", error);
  py::register_exception<InstanceError>(m, "InstanceError", error);

  py::class_<Edit>(m, "Edit")
      .def(py::init(&Edit::make), py::arg("start"), py::arg("end"), py::arg("replacement"))
      .def_readonly("start", &Edit::start)
      .def_readonly("end", &Edit::end)
      .def_readonly("replacement", &Edit::replacement)
      .def_property_readonly("kind", [](const Edit& e) { return std::string(to_string(e.kind())); })
      .def(py::self == py::self)
      .def("__repr__", [](const Edit& e) {
        return "Edit(" + std::to_string(e.start) + ", " + std::to_string(e.end) + ", '" +
               e.replacement.join() + "')";
      });

  py::class_<AnnotatedSentence>(m, "AnnotatedSentence")
      .def(py::init([](TokenSeq source, EditSet gold, int annotator_id) {
             return AnnotatedSentence{std::move(source), std::move(gold), annotator_id};
           }),
           py::arg("source"), py::arg("gold"), py::arg("annotator_id") = 0)
      .def_readonly("source", &AnnotatedSentence::source)
      .def_readonly("gold", &AnnotatedSentence::gold)
      .def_readonly("annotator_id", &AnnotatedSentence::annotator_id)
      .def("corrected", [](const AnnotatedSentence& s) { return corrected(s); })
      .def(py::self == py::self);

  py::class_<SingleEditInstance>(m, "SingleEditInstance")
      .def(py::init([](std::string id, TokenSeq source, Edit residual, std::string origin) {
             return SingleEditInstance{std::move(id), std::move(source), std::move(residual),
                                       std::move(origin)};
           }),
           py::arg("instance_id"), py::arg("source"), py::arg("residual"),
           py::arg("origin_sentence_id") = "")
      .def_readonly("instance_id", &SingleEditInstance::instance_id)
      .def_readonly("source", &SingleEditInstance::source)
      .def_readonly("residual", &SingleEditInstance::residual)
      .def_readonly("origin_sentence_id", &SingleEditInstance::origin_sentence_id)
      .def_property_readonly("is_deletion", &SingleEditInstance::is_deletion)
      .def("reference", &SingleEditInstance::reference);

  py::class_<MaskedInstance>(m, "MaskedInstance")
      .def_readonly("instance_id", &MaskedInstance::instance_id)
      .def_readonly("tokens", &MaskedInstance::tokens)
      .def_readonly("mask_positions", &MaskedInstance::mask_positions)
      .def_readonly("gold_replacement", &MaskedInstance::gold_replacement)
      .def_readonly("gold_pieces", &MaskedInstance::gold_pieces)
      .def("gold_units", &MaskedInstance::gold_units);

  m.def("apply_edits", &apply_edits, py::arg("source"), py::arg("edits"));
  m.def("parse_m2", &m2::parse, py::arg("text"));
  m.def("read_m2", &m2::read_file, py::arg("path"));
  m.def("serialize_m2", &m2::serialize, py::arg("sentences"));

  m.def(
      "align",
      [](const TokenSeq& s, const TokenSeq& t) {
        std::vector<std::tuple<std::string, std::optional<std::size_t>, std::optional<std::size_t>>>
            out;
        static const char* names[] = {"match", "substitute", "delete", "insert"};
        for (const auto& op : align(s, t)) {
          out.emplace_back(names[static_cast<int>(op.op)], op.src_index, op.tgt_index);
        }
        return out;
      },
      py::arg("source"), py::arg("target"));
  m.def("extract_edits", &extract_edits, py::arg("source"), py::arg("target"));

  m.def(
      "expand_each_edit",
      [](const AnnotatedSentence& s, const std::string& id) { return expand_each_edit(s, id); },
      py::arg("sentence"), py::arg("sentence_id") = "s0");
  m.def(
      "expand_last_edit",
      [](const AnnotatedSentence& s, const std::string& id) { return expand_last_edit(s, id); },
      py::arg("sentence"), py::arg("sentence_id") = "s0");
  m.def(
      "expand_corpus",
      [](const std::vector<AnnotatedSentence>& corpus, const std::string& scheme) {
        return expand_corpus(corpus, parse_scheme(scheme));
      },
      py::arg("corpus"), py::arg("scheme") = "each-edit");

  m.def(
      "mask_instance",
      [](const SingleEditInstance& inst, const std::string& strategy,
         std::optional<std::function<std::vector<std::string>(const TokenSeq&)>> segmenter) {
        return mask_instance(inst, parse_strategy(strategy),
                             segmenter ? PieceSegmenter(*segmenter) : PieceSegmenter{});
      },
      py::arg("instance"), py::arg("strategy") = "single", py::arg("segmenter") = py::none());
  m.def("apply_deletion", &apply_deletion, py::arg("instance"));
  m.def(
      "merge_pieces",
      [](const std::vector<std::string>& pieces) { return merge_pieces(pieces); },
      py::arg("pieces"));

  py::class_<FillModel>(m, "FillModel")
      .def("segment", &FillModel::segment, py::arg("tokens"))
      .def("count_pieces", &FillModel::count_pieces, py::arg("tokens"))
      .def_property_readonly("model_id", &FillModel::model_id);
  py::class_<GoldMock, FillModel>(m, "GoldMock")
      .def(py::init([](std::size_t rank) { return GoldMock(rank); }), py::arg("gold_rank") = 1);
  py::class_<LexiconMock, FillModel>(m, "LexiconMock")
      .def(py::init([](const std::vector<std::pair<std::string, double>>& counts) {
             return LexiconMock(counts);
           }),
           py::arg("counts"))
      .def_static("builtin", [] { return LexiconMock::builtin(); });
  py::class_<RemoteClient, FillModel>(m, "RemoteClient")
      .def(py::init([](std::string url, int timeout_ms, int retries, int max_in_flight) {
             RemoteConfig c;
             c.base_url = std::move(url);
             c.timeout = std::chrono::milliseconds(timeout_ms);
             c.retries = retries;
             c.max_in_flight = max_in_flight;
             return std::make_unique<RemoteClient>(c);
           }),
           py::arg("base_url"), py::arg("timeout_ms") = 30'000, py::arg("retries") = 2,
           py::arg("max_in_flight") = 8);

  m.def(
      "fill",
      [](const FillModel& model, const MaskedInstance& masked, std::size_t k) {
        PredictionSet ps;
        {
          py::gil_scoped_release release;
          ps = fill(model, masked, k);
        }
        return to_lists(ps);
      },
      py::arg("model"), py::arg("masked"), py::arg("k") = 5);
  m.def(
      "assemble_hypothesis",
      [](const MaskedInstance& masked,
         const std::vector<std::vector<std::pair<std::string, double>>>& predictions,
         std::size_t rank) {
        std::size_t depth = 0;
        for (const auto& l : predictions) depth = std::max(depth, l.size());
        return assemble_hypothesis(masked, from_lists(predictions, depth), rank);
      },
      py::arg("masked"), py::arg("predictions"), py::arg("rank") = 1);

  m.def(
      "score_sentence",
      [](const TokenSeq& source, const TokenSeq& hyp, const EditSet& gold,
         const std::string& mode) {
        auto c = score_sentence(source, hyp, gold, parse_match_mode(mode));
        return std::make_tuple(c.tp, c.fp, c.fn);
      },
      py::arg("source"), py::arg("hypothesis"), py::arg("gold"), py::arg("mode") = "exact");
  m.def(
      "prf",
      [](std::size_t tp, std::size_t fp, std::size_t fn, double beta) {
        auto s = prf(tp, fp, fn, beta);
        return std::make_tuple(s.precision, s.recall, s.f_beta);
      },
      py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("beta") = 0.5);
  m.def("f_beta", &f_beta, py::arg("precision"), py::arg("recall"), py::arg("beta") = 0.5);
  m.def(
      "mask_accuracy",
      [](const std::vector<std::vector<std::pair<std::string, double>>>& predictions,
         const std::vector<std::string>& gold, std::size_t k, const std::string& mode) {
        std::size_t depth = k;
        for (const auto& l : predictions) depth = std::max(depth, l.size());
        return mask_accuracy(from_lists(predictions, depth), gold, k, parse_match_mode(mode));
      },
      py::arg("predictions"), py::arg("gold"), py::arg("k"), py::arg("mode") = "exact");

  m.def(
      "evaluate_corpus",
      [](const std::vector<SingleEditInstance>& instances, const FillModel& model,
         const std::string& strategy, std::size_t k, std::optional<std::string> mode,
         bool include_deletions, const std::string& rerank, double beta, std::size_t jobs) {
        EvalOptions opt;
        opt.strategy = parse_strategy(strategy);
        opt.k = k;
        opt.mode = optional_mode(mode);
        opt.include_deletions = include_deletions;
        opt.rerank = parse_rerank(rerank);
        opt.beta = beta;
        opt.jobs = jobs;
        EvalReport r;
        {
          py::gil_scoped_release release;
          r = evaluate_corpus(instances, opt, model);
        }
        return json_to_py(r.to_json());
      },
      py::arg("instances"), py::arg("model"), py::arg("strategy") = "single", py::arg("k") = 5,
      py::arg("mode") = py::none(), py::arg("include_deletions") = false,
      py::arg("rerank") = "identity", py::arg("beta") = 0.5, py::arg("jobs") = 1);
}
