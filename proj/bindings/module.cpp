#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>

#include "forge/aligner.hpp"
#include "forge/bli.hpp"
#include "forge/corpus.hpp"
#include "forge/metrics.hpp"
#include "forge/pipeline.hpp"
#include "forge/revise.hpp"
#include "forge/scorer.hpp"
#include "forge/util.hpp"

namespace py = pybind11;
using namespace forge;

namespace {

NormalizeOptions norm_opts(bool lowercase) { return {.lowercase = lowercase}; }

LedSemantics led_sem(const std::string& name) {
  if (name == "set") return LedSemantics::Set;
  if (name == "multiset") return LedSemantics::Multiset;
  fail("unknown led semantics: " + name);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> link_list(const Alignment& a) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(a.links.size());
  for (const Link& l : a.links) out.emplace_back(l.src, l.tgt);
  return out;
}

Alignment make_alignment(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& links,
                         std::uint32_t src_len, std::uint32_t tgt_len) {
  Alignment a;
  a.src_len = src_len;
  a.tgt_len = tgt_len;
  for (const auto& [s, t] : links) a.links.push_back({s, t});
  std::sort(a.links.begin(), a.links.end());
  a.links.erase(std::unique(a.links.begin(), a.links.end()), a.links.end());
  return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bitext revision toolkit: selective replacement of mined bitext references "
            "with synthetic translations, word-alignment statistics, and lexicon induction.";

  py::register_exception<Error>(m, "ForgeError");

  // corpus
  py::class_<SentencePair>(m, "SentencePair")
      .def_readonly("id", &SentencePair::id)
      .def_readonly("src_raw", &SentencePair::src_raw)
      .def_readonly("tgt_raw", &SentencePair::tgt_raw)
      .def_readonly("src_tokens", &SentencePair::src_tokens)
      .def_readonly("tgt_tokens", &SentencePair::tgt_tokens)
      .def("__repr__", [](const SentencePair& p) {
        return "SentencePair(id=" + std::to_string(p.id) + ")";
      });

  py::class_<Bitext>(m, "Bitext")
      .def_readonly("pairs", &Bitext::pairs)
      .def_readonly("src_lang", &Bitext::src_lang)
      .def_readonly("tgt_lang", &Bitext::tgt_lang)
      .def("__len__", &Bitext::size)
      .def("__getitem__", [](const Bitext& b, std::size_t i) {
        if (i >= b.size()) throw py::index_error();
        return b.pairs[i];
      });

  py::class_<SkippedLine>(m, "SkippedLine")
      .def_readonly("line_no", &SkippedLine::line_no)
      .def_readonly("reason", &SkippedLine::reason);

  py::class_<LoadResult>(m, "LoadResult")
      .def_readonly("bitext", &LoadResult::bitext)
      .def_readonly("skipped", &LoadResult::skipped);

  py::class_<Vocabulary>(m, "Vocabulary")
      .def_readonly("counts", &Vocabulary::counts)
      .def("total", &Vocabulary::total)
      .def("types", &Vocabulary::types)
      .def("count", &Vocabulary::count);

  m.def(
      "normalize",
      [](const std::string& text, bool lowercase) { return normalize(text, norm_opts(lowercase)); },
      py::arg("text"), py::arg("lowercase") = true);
  m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
  m.def(
      "load_bitext",
      [](const std::filesystem::path& path, const std::string& src_lang,
         const std::string& tgt_lang, bool lowercase) {
        return load_bitext(path, src_lang, tgt_lang, norm_opts(lowercase));
      },
      py::arg("path"), py::arg("src_lang") = "src", py::arg("tgt_lang") = "tgt",
      py::arg("lowercase") = true);
  m.def(
      "parse_bitext",
      [](const std::string& tsv, const std::string& src_lang, const std::string& tgt_lang,
         bool lowercase) { return parse_bitext(tsv, src_lang, tgt_lang, norm_opts(lowercase)); },
      py::arg("tsv"), py::arg("src_lang") = "src", py::arg("tgt_lang") = "tgt",
      py::arg("lowercase") = true);
  m.def("to_tsv", &to_tsv, py::arg("bitext"));
  m.def(
      "vocabulary",
      [](const Bitext& b, const std::string& side) {
        return vocabulary(b, side == "src" ? Side::Src : Side::Tgt);
      },
      py::arg("bitext"), py::arg("side"));
  m.def(
      "frequency_bin",
      [](std::uint64_t count) { return to_string(frequency_bin(count)); }, py::arg("count"));

  // aligner
  py::enum_<Direction>(m, "Direction")
      .value("SRC_TO_TGT", Direction::SrcToTgt)
      .value("TGT_TO_SRC", Direction::TgtToSrc);

  py::class_<TranslationTable>(m, "TranslationTable")
      .def_static("from_rows", &TranslationTable::from_rows, py::arg("rows"),
                  py::arg("null_row") = std::map<std::string, double>{})
      .def("prob", &TranslationTable::prob)
      .def("null_prob", &TranslationTable::null_prob)
      .def("row", &TranslationTable::row)
      .def("row_sum", &TranslationTable::row_sum)
      .def("conditioning_types", &TranslationTable::conditioning_types);

  py::class_<AlignmentModel>(m, "AlignmentModel")
      .def_readonly("table", &AlignmentModel::table)
      .def_readonly("direction", &AlignmentModel::direction)
      .def_readonly("log_likelihood", &AlignmentModel::log_likelihood)
      .def_property_readonly("lambda_", [](const AlignmentModel& mdl) { return mdl.params.lambda; })
      .def_property_readonly("p_null", [](const AlignmentModel& mdl) { return mdl.params.p_null; });

  py::class_<Alignment>(m, "Alignment")
      .def(py::init(&make_alignment), py::arg("links"), py::arg("src_len"), py::arg("tgt_len"))
      .def_property_readonly("links", &link_list)
      .def_readonly("src_len", &Alignment::src_len)
      .def_readonly("tgt_len", &Alignment::tgt_len);

  m.def(
      "train_ibm1",
      [](const Bitext& b, int iterations, Direction d, double p_null) {
        return train_ibm1(b, iterations, d, p_null);
      },
      py::arg("bitext"), py::arg("iterations"), py::arg("direction") = Direction::SrcToTgt,
      py::arg("p_null") = DiagonalParams{}.p_null);
  m.def(
      "train_diag",
      [](const Bitext& b, int iterations, double lambda, double p_null, Direction d) {
        return train_diag(b, iterations, {.lambda = lambda, .p_null = p_null}, d);
      },
      py::arg("bitext"), py::arg("iterations"), py::arg("lambda_") = 4.0,
      py::arg("p_null") = 0.08, py::arg("direction") = Direction::SrcToTgt);
  m.def("viterbi_align", &viterbi_align, py::arg("model"), py::arg("pair"));
  m.def("align_corpus", &align_corpus, py::arg("model"), py::arg("bitext"));
  m.def("transpose", &transpose, py::arg("alignment"));
  m.def(
      "symmetrize",
      [](const Alignment& fwd, const Alignment& bwd, const std::string& heuristic) {
        return symmetrize(fwd, bwd, parse_sym_heuristic(heuristic));
      },
      py::arg("forward"), py::arg("backward_transposed"), py::arg("heuristic") = "grow-diag");
  m.def("coverage", py::overload_cast<const Alignment&>(&coverage), py::arg("alignment"));
  m.def("to_pharaoh", &to_pharaoh, py::arg("pair_id"), py::arg("alignment"));

  // metrics
  m.def(
      "led",
      [](const Tokens& a, const Tokens& b, const std::string& semantics) {
        return led(a, b, led_sem(semantics));
      },
      py::arg("s1"), py::arg("s2"), py::arg("semantics") = "set");
  m.def("corpus_complexity", &corpus_complexity, py::arg("table"), py::arg("vocab"));
  m.def("corpus_coverage", &corpus_coverage, py::arg("bitext"), py::arg("model"));
  m.def(
      "pronoun_counts",
      [](const Bitext& b, const std::string& side, const std::vector<std::string>& pronouns) {
        return pronoun_counts(b, side == "src" ? Side::Src : Side::Tgt, pronouns);
      },
      py::arg("bitext"), py::arg("side"), py::arg("pronouns"));
  m.def("kendall_tau", &kendall_tau, py::arg("r1"), py::arg("r2"));
  m.def(
      "led_histogram",
      [](const std::vector<std::tuple<Tokens, Tokens, bool>>& samples,
         const std::string& semantics) {
        std::vector<LedSample> converted;
        converted.reserve(samples.size());
        for (const auto& [orig, synth, replaced] : samples)
          converted.push_back({orig, synth, replaced});
        auto [replaced_hist, kept_hist] = led_histogram(converted, led_sem(semantics));
        return py::make_tuple(replaced_hist.counts, kept_hist.counts);
      },
      py::arg("samples"), py::arg("semantics") = "set",
      "Returns (replaced_counts, not_replaced_counts) over ten 0.1-wide bins.");

  // scorer
  py::enum_<Variant>(m, "Variant")
      .value("ORIGINAL", Variant::Original)
      .value("FORWARD", Variant::Forward)
      .value("BACKWARD", Variant::Backward);

  py::class_<Condition>(m, "Condition")
      .def_static("margin", &Condition::margin_condition, py::arg("margin") = 5.0)
      .def_static("ranking", &Condition::ranking)
      .def_static("thresholding", &Condition::thresholding, py::arg("margin"),
                  py::arg("threshold"))
      .def_readonly("margin_value", &Condition::margin)
      .def_readonly("threshold_value", &Condition::threshold);

  m.def("passes", &passes, py::arg("condition"), py::arg("d"), py::arg("candidate_score"));
  m.def(
      "delta_bin", [](double d) { return to_string(delta_bin(d)); }, py::arg("d"));
  m.def("surrogate_score", &surrogate_score, py::arg("src"), py::arg("tgt"), py::arg("table_fwd"),
        py::arg("table_bwd"));

  py::class_<ScorerBackend>(m, "ScorerBackend");
  py::class_<PrecomputedScorer, ScorerBackend>(m, "PrecomputedScorer")
      .def_static("from_file", &PrecomputedScorer::from_file, py::arg("path"))
      .def_static("from_string", &PrecomputedScorer::from_string, py::arg("tsv"))
      .def("score", &PrecomputedScorer::score, py::arg("pair_id"), py::arg("variant"),
           py::arg("src") = Tokens{}, py::arg("tgt") = Tokens{});
  py::class_<SurrogateScorer, ScorerBackend>(m, "SurrogateScorer")
      .def(py::init<TranslationTable, TranslationTable>(), py::arg("table_fwd"),
           py::arg("table_bwd"))
      .def("score", &SurrogateScorer::score, py::arg("pair_id"), py::arg("variant"),
           py::arg("src"), py::arg("tgt"));

  // revise
  py::class_<Candidate>(m, "Candidate")
      .def_readonly("raw", &Candidate::raw)
      .def_readonly("tokens", &Candidate::tokens);
  py::class_<CandidateSet>(m, "CandidateSet")
      .def_readonly("pair_id", &CandidateSet::pair_id)
      .def_readonly("forward", &CandidateSet::forward)
      .def_readonly("backward", &CandidateSet::backward);

  m.def(
      "load_candidates",
      [](const std::filesystem::path& path, bool lowercase) {
        return load_candidates(path, norm_opts(lowercase));
      },
      py::arg("path"), py::arg("lowercase") = true);
  m.def(
      "parse_candidates",
      [](const std::string& tsv, bool lowercase) {
        return parse_candidates(tsv, norm_opts(lowercase));
      },
      py::arg("tsv"), py::arg("lowercase") = true);

  py::class_<ScoreDelta>(m, "ScoreDelta")
      .def_readonly("score_orig", &ScoreDelta::score_orig)
      .def_readonly("score_f", &ScoreDelta::score_f)
      .def_readonly("score_b", &ScoreDelta::score_b)
      .def_readonly("d_f", &ScoreDelta::d_f)
      .def_readonly("d_b", &ScoreDelta::d_b);

  py::class_<RevisionRecord>(m, "RevisionRecord")
      .def_readonly("pair_id", &RevisionRecord::pair_id)
      .def_property_readonly("decision",
                             [](const RevisionRecord& r) { return to_string(r.decision); })
      .def_readonly("delta", &RevisionRecord::delta)
      .def_readonly("model_score", &RevisionRecord::model_score);

  py::class_<ReviseResult>(m, "ReviseResult")
      .def_readonly("revised", &ReviseResult::revised)
      .def_readonly("records", &ReviseResult::records);

  m.def(
      "revise",
      [](const Bitext& bitext, const CandidateMap& candidates, ScorerBackend& backend,
         const Condition& cond, const std::string& strategy, bool skip_identical) {
        return revise(bitext, candidates, backend, cond, Strategy{parse_strategy(strategy)},
                      {.skip_identical = skip_identical});
      },
      py::arg("bitext"), py::arg("candidates"), py::arg("backend"), py::arg("condition"),
      py::arg("strategy") = "both", py::arg("skip_identical") = true);
  m.def(
      "revise_all",
      [](const Bitext& bitext, const CandidateMap& candidates, const std::string& direction) {
        return revise_all(bitext, candidates, parse_candidate_direction(direction));
      },
      py::arg("bitext"), py::arg("candidates"), py::arg("direction"));
  m.def("rejuvenate", &rejuvenate, py::arg("bitext"), py::arg("candidates"),
        py::arg("model_scores"), py::arg("fraction") = 0.1);

  py::class_<ReplacementStats>(m, "ReplacementStats")
      .def_readonly("total", &ReplacementStats::total)
      .def_readonly("replaced", &ReplacementStats::replaced)
      .def_readonly("forward", &ReplacementStats::forward)
      .def_readonly("backward", &ReplacementStats::backward)
      .def_readonly("replaced_pct", &ReplacementStats::replaced_pct)
      .def_readonly("forward_pct", &ReplacementStats::forward_pct)
      .def_readonly("backward_pct", &ReplacementStats::backward_pct)
      .def_property_readonly("delta_histogram", [](const ReplacementStats& s) {
        std::map<std::string, std::uint64_t> out;
        for (const auto& [bin, count] : s.delta_histogram) out[to_string(bin)] = count;
        return out;
      });
  m.def("replacement_stats", &replacement_stats, py::arg("records"));
  m.def("records_to_jsonl", &records_to_jsonl, py::arg("records"));

  // bli
  py::class_<PairCounts>(m, "PairCounts")
      .def_readonly("count", &PairCounts::count)
      .def_readonly("src_marginal", &PairCounts::src_marginal)
      .def_readonly("tgt_marginal", &PairCounts::tgt_marginal);
  py::class_<LexiconEntry>(m, "LexiconEntry")
      .def_readonly("target", &LexiconEntry::target)
      .def_readonly("count", &LexiconEntry::count)
      .def_readonly("prob", &LexiconEntry::prob);
  py::class_<InducedLexicon>(m, "InducedLexicon").def_readonly("entries", &InducedLexicon::entries);
  py::class_<GoldDictionary>(m, "GoldDictionary").def_readonly("entries", &GoldDictionary::entries);

  py::class_<BliReport::BinStats>(m, "BliBinStats")
      .def_readonly("attempted", &BliReport::BinStats::attempted)
      .def_readonly("correct", &BliReport::BinStats::correct)
      .def_readonly("precision", &BliReport::BinStats::precision);
  py::class_<BliReport>(m, "BliReport")
      .def_readonly("gold_sources", &BliReport::gold_sources)
      .def_readonly("in_vocab", &BliReport::in_vocab)
      .def_readonly("attempted", &BliReport::attempted)
      .def_readonly("correct", &BliReport::correct)
      .def_readonly("precision", &BliReport::precision)
      .def_readonly("recall", &BliReport::recall)
      .def_readonly("f1", &BliReport::f1)
      .def_readonly("oov_rate", &BliReport::oov_rate)
      .def_property_readonly("precision_by_bin", [](const BliReport& r) {
        std::map<std::string, std::optional<double>> out;
        for (const auto& [bin, stats] : r.by_bin) out[to_string(bin)] = stats.precision;
        return out;
      });

  m.def("collect_pair_stats", &collect_pair_stats, py::arg("bitext"), py::arg("alignments"));
  m.def(
      "induce_lexicon",
      [](const PairCounts& counts, std::uint64_t min_count, double min_prob) {
        return induce_lexicon(counts, {.min_count = min_count, .min_prob = min_prob});
      },
      py::arg("counts"), py::arg("min_count") = 2, py::arg("min_prob") = 0.1);
  m.def("lexicon_dump", &lexicon_dump, py::arg("lexicon"));
  m.def(
      "load_gold",
      [](const std::filesystem::path& path, bool lowercase) {
        return load_gold(path, norm_opts(lowercase));
      },
      py::arg("path"), py::arg("lowercase") = true);
  m.def(
      "parse_gold",
      [](const std::string& text, bool lowercase) { return parse_gold(text, norm_opts(lowercase)); },
      py::arg("text"), py::arg("lowercase") = true);
  m.def("evaluate", &evaluate, py::arg("lexicon"), py::arg("gold"), py::arg("src_vocab"));

  m.attr("__version__") = "0.1.0";
}
