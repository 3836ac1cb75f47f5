#include "forge/pipeline.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "forge/report.hpp"
#include "forge/util.hpp"

namespace forge {

using json = nlohmann::json;

LedSemantics PipelineConfig::led() const {
  if (led_semantics == "set") return LedSemantics::Set;
  if (led_semantics == "multiset") return LedSemantics::Multiset;
  fail("unknown led semantics: " + led_semantics);
}

SymHeuristic PipelineConfig::sym() const { return parse_sym_heuristic(symmetrization); }

namespace {

void require_input(const std::filesystem::path& path, const std::string& flag) {
  if (path.empty()) fail("missing required option --" + flag);
  if (!std::filesystem::exists(path)) fail("--" + flag + ": no such file: " + path.string());
}

void report_skipped(const LoadResult& loaded, const std::string& name) {
  for (const SkippedLine& s : loaded.skipped)
    std::cerr << name << ": skipped line " << s.line_no << " (" << s.reason << ")\n";
}

void report_training(const AlignmentModel& model, const std::string& name) {
  std::cerr << name << " [" << to_string(model.direction) << "]:";
  for (std::size_t i = 0; i < model.log_likelihood.size(); ++i)
    std::cerr << " " << model.log_likelihood[i];
  std::cerr << " (log-likelihood per iteration)\n";
}

std::vector<std::string> load_pronouns(const std::filesystem::path& path,
                                       const NormalizeOptions& opts) {
  std::vector<std::string> pronouns;
  for (const std::string& line : split_lines(read_file(path))) {
    std::string norm = normalize(line, opts);
    if (!norm.empty()) pronouns.push_back(norm);
  }
  if (pronouns.empty()) fail("pronoun list is empty: " + path.string());
  return pronouns;
}

// Minimal records reader for analyze; the writer is records_to_jsonl.
std::vector<RevisionRecord> parse_records_jsonl(std::string_view text) {
  std::vector<RevisionRecord> records;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    if (line.empty()) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) fail("records line " + std::to_string(line_no) + ": bad JSON");
    RevisionRecord r;
    r.pair_id = obj.at("id").get<std::size_t>();
    std::string decision = obj.at("decision").get<std::string>();
    if (decision == "keep")
      r.decision = Decision::Keep;
    else if (decision == "replace-forward")
      r.decision = Decision::ReplaceForward;
    else if (decision == "replace-backward")
      r.decision = Decision::ReplaceBackward;
    else
      fail("records line " + std::to_string(line_no) + ": unknown decision " + decision);
    if (obj.contains("d_f") && !obj["d_f"].is_null()) {
      r.delta = r.delta.value_or(ScoreDelta{});
      r.delta->d_f = obj["d_f"].get<double>();
    }
    if (obj.contains("d_b") && !obj["d_b"].is_null()) {
      r.delta = r.delta.value_or(ScoreDelta{});
      r.delta->d_b = obj["d_b"].get<double>();
    }
    r.strategy.kind = parse_strategy(obj.value("strategy", "both"));
    if (obj.contains("model_score") && !obj["model_score"].is_null())
      r.model_score = obj["model_score"].get<double>();
    records.push_back(std::move(r));
  }
  return records;
}

// One LeD sample per scored candidate: synthetic vs the side it would
// replace, labeled by whether it won.
std::vector<LedSample> led_samples(const Bitext& bitext, const CandidateMap& candidates,
                                   const std::vector<RevisionRecord>& records) {
  std::vector<LedSample> samples;
  for (const RevisionRecord& r : records) {
    if (!r.delta || r.pair_id >= bitext.size()) continue;
    auto it = candidates.find(r.pair_id);
    if (it == candidates.end()) continue;
    const SentencePair& pair = bitext.pairs[r.pair_id];
    if (r.delta->d_f && it->second.forward)
      samples.push_back({pair.tgt_tokens, it->second.forward->tokens,
                         r.decision == Decision::ReplaceForward});
    if (r.delta->d_b && it->second.backward)
      samples.push_back({pair.src_tokens, it->second.backward->tokens,
                         r.decision == Decision::ReplaceBackward});
  }
  return samples;
}

std::unique_ptr<ScorerBackend> make_backend(const PipelineConfig& config, const Bitext& bitext) {
  if (!config.scores.empty()) return std::make_unique<PrecomputedScorer>(PrecomputedScorer::from_file(config.scores));
  if (!config.scorer_cmd.empty())
    return std::make_unique<SubprocessScorer>(config.scorer_cmd, config.timeout_ms);
  // Surrogate: alignment models trained on the corpus being revised.
  AlignmentModel fwd = train_diag(bitext, config.iterations, config.diagonal_params(), Direction::SrcToTgt);
  AlignmentModel bwd = train_diag(bitext, config.iterations, config.diagonal_params(), Direction::TgtToSrc);
  report_training(fwd, "surrogate aligner");
  report_training(bwd, "surrogate aligner");
  return std::make_unique<SurrogateScorer>(std::move(fwd.table), std::move(bwd.table));
}

int score_sources(const PipelineConfig& config) {
  return (config.scores.empty() ? 0 : 1) + (config.scorer_cmd.empty() ? 0 : 1) +
         (config.surrogate ? 1 : 0);
}

BliReport run_bli(const Bitext& bitext, const GoldDictionary& gold, const PipelineConfig& config,
                  InducedLexicon* lexicon_out, std::string* alignments_out) {
  AlignmentModel fwd = train_diag(bitext, config.iterations, config.diagonal_params(), Direction::SrcToTgt);
  AlignmentModel bwd = train_diag(bitext, config.iterations, config.diagonal_params(), Direction::TgtToSrc);
  std::vector<Alignment> fwd_al = align_corpus(fwd, bitext);
  std::vector<Alignment> bwd_al = align_corpus(bwd, bitext);

  std::map<std::size_t, Alignment> merged;
  for (std::size_t i = 0; i < bitext.size(); ++i)
    merged[i] = symmetrize(fwd_al[i], bwd_al[i], config.sym());

  PairCounts counts = collect_pair_stats(bitext, merged);
  InducedLexicon lexicon =
      induce_lexicon(counts, {.min_count = config.min_count, .min_prob = config.min_prob});
  Vocabulary src_vocab = vocabulary(bitext, Side::Src);
  BliReport report = evaluate(lexicon, gold, src_vocab);

  if (lexicon_out) *lexicon_out = std::move(lexicon);
  if (alignments_out) {
    std::vector<Alignment> ordered;
    ordered.reserve(bitext.size());
    for (std::size_t i = 0; i < bitext.size(); ++i) ordered.push_back(merged[i]);
    *alignments_out = alignment_dump(bitext, ordered);
  }
  return report;
}

}  // namespace

int cmd_revise(const PipelineConfig& config) {
  // Validation first: no partial outputs, no wasted training on a bad config.
  StrategyKind strategy = parse_strategy(config.strategy);
  Condition cond;
  switch (parse_condition_kind(config.condition)) {
    case ConditionKind::Margin: cond = Condition::margin_condition(config.margin); break;
    case ConditionKind::Ranking: cond = Condition::ranking(); break;
    case ConditionKind::Thresholding:
      cond = Condition::thresholding(config.margin, config.threshold);
      break;
  }
  const bool selective = strategy == StrategyKind::SelectiveBoth ||
                         strategy == StrategyKind::SelectiveForwardOnly ||
                         strategy == StrategyKind::SelectiveBackwardOnly;
  const int sources = score_sources(config);
  if (sources > 1) fail("choose exactly one of --scores, --scorer-cmd, --surrogate");
  if (selective && sources == 0)
    fail("strategy '" + config.strategy + "' needs one of --scores, --scorer-cmd, --surrogate");
  require_input(config.bitext, "bitext");
  require_input(config.candidates, "candidates");
  if (!config.scores.empty()) require_input(config.scores, "scores");
  if (strategy == StrategyKind::Rejuvenation) require_input(config.model_scores, "model-scores");
  if (config.out.empty()) fail("missing required option --out");

  std::filesystem::path records_path =
      config.records.empty() ? std::filesystem::path(config.out.string() + ".records.jsonl")
                             : config.records;
  std::filesystem::path stats_path =
      config.stats.empty() ? std::filesystem::path(config.out.string() + ".stats.json")
                           : config.stats;

  LoadResult loaded = load_bitext(config.bitext, config.src_lang, config.tgt_lang,
                                  config.normalize_options());
  report_skipped(loaded, config.bitext.string());
  CandidateMap candidates = load_candidates(config.candidates, config.normalize_options());

  ReviseResult result;
  if (selective) {
    std::unique_ptr<ScorerBackend> backend = make_backend(config, loaded.bitext);
    result = revise(loaded.bitext, candidates, *backend, cond, Strategy{strategy},
                    {.skip_identical = !config.keep_identical});
  } else if (strategy == StrategyKind::Rejuvenation) {
    result = rejuvenate(loaded.bitext, candidates, load_model_scores(config.model_scores),
                        config.fraction);
  } else {
    result = revise_all(loaded.bitext, candidates,
                        strategy == StrategyKind::ForwardAll ? CandidateDirection::Forward
                                                             : CandidateDirection::Backward);
  }

  ReplacementStats stats = replacement_stats(result.records);
  auto [led_replaced, led_kept] =
      led_histogram(led_samples(loaded.bitext, candidates, result.records), config.led());

  json stats_json = to_json(stats);
  stats_json["led_histograms"] =
      json{{"replaced", to_json(led_replaced)}, {"not_replaced", to_json(led_kept)}};

  atomic_write_file(config.out, to_tsv(result.revised));
  atomic_write_file(records_path, records_to_jsonl(result.records));
  atomic_write_file(stats_path, stats_json.dump(2) + "\n");
  std::cerr << "revised " << stats.replaced << "/" << stats.total << " pairs ("
            << stats.replaced_pct << "%)\n";
  return 0;
}

int cmd_analyze(const PipelineConfig& config) {
  require_input(config.original, "original");
  require_input(config.revised, "revised");
  if (!config.pronouns.empty()) require_input(config.pronouns, "pronouns");
  if (!config.candidates.empty()) require_input(config.candidates, "candidates");
  if (!config.records.empty()) require_input(config.records, "records");
  if (!config.gold.empty()) require_input(config.gold, "gold");
  if (config.out_dir.empty()) fail("missing required option --out-dir");
  if (config.candidates.empty() != config.records.empty())
    fail("--candidates and --records must be given together");
  Side pronoun_side;
  if (config.pronoun_side == "src")
    pronoun_side = Side::Src;
  else if (config.pronoun_side == "tgt")
    pronoun_side = Side::Tgt;
  else
    fail("unknown pronoun side: " + config.pronoun_side);

  LoadResult original = load_bitext(config.original, config.src_lang, config.tgt_lang,
                                    config.normalize_options());
  report_skipped(original, config.original.string());
  LoadResult revised = load_bitext(config.revised, config.src_lang, config.tgt_lang,
                                   config.normalize_options());
  report_skipped(revised, config.revised.string());

  CorpusStatsOptions opts;
  opts.iterations = config.iterations;
  opts.params = config.diagonal_params();
  opts.pronoun_side = pronoun_side;
  if (!config.pronouns.empty())
    opts.pronouns = load_pronouns(config.pronouns, config.normalize_options());

  RunReport report;
  report.before = corpus_stats(original.bitext, opts);
  report.after = corpus_stats(revised.bitext, opts);

  if (!config.candidates.empty()) {
    CandidateMap candidates = load_candidates(config.candidates, config.normalize_options());
    std::vector<RevisionRecord> records = parse_records_jsonl(read_file(config.records));
    report.replacement = replacement_stats(records);
    report.led = led_histogram(led_samples(original.bitext, candidates, records), config.led());
  }
  if (!config.gold.empty()) {
    GoldDictionary gold = load_gold(config.gold, config.normalize_options());
    report.bli_before = run_bli(original.bitext, gold, config, nullptr, nullptr);
    report.bli_after = run_bli(revised.bitext, gold, config, nullptr, nullptr);
  }

  atomic_write_file(config.out_dir / "report.json", to_json(report).dump(2) + "\n");
  atomic_write_file(config.out_dir / "report.md", to_markdown(report));
  std::cerr << "wrote " << (config.out_dir / "report.json").string() << "\n";
  return 0;
}

int cmd_bli(const PipelineConfig& config) {
  require_input(config.bitext, "bitext");
  require_input(config.gold, "gold");
  if (config.out_dir.empty()) fail("missing required option --out-dir");

  LoadResult loaded = load_bitext(config.bitext, config.src_lang, config.tgt_lang,
                                  config.normalize_options());
  report_skipped(loaded, config.bitext.string());
  if (loaded.bitext.empty()) fail("empty bitext: " + config.bitext.string());
  GoldDictionary gold = load_gold(config.gold, config.normalize_options());

  InducedLexicon lexicon;
  std::string alignments;
  BliReport report = run_bli(loaded.bitext, gold, config, &lexicon, &alignments);

  atomic_write_file(config.out_dir / "bli_report.json", to_json(report).dump(2) + "\n");
  atomic_write_file(config.out_dir / "bli_report.md", markdown_table(report));
  atomic_write_file(config.out_dir / "lexicon.tsv", lexicon_dump(lexicon));
  atomic_write_file(config.out_dir / "alignments.txt", alignments);
  std::cerr << "induced " << lexicon.entries.size() << " lexicon entries\n";
  return 0;
}

namespace {

struct ParsedUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // leading slash
};

ParsedUrl parse_url(const std::string& url) {
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) fail("endpoint must be an http(s) URL: " + url);
  std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

std::vector<std::string> fetch_translations(const PipelineConfig& config,
                                            const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  const bool forward = parse_candidate_direction(config.direction) == CandidateDirection::Forward;
  const std::string from_lang = forward ? config.src_lang : config.tgt_lang;
  const std::string to_lang = forward ? config.tgt_lang : config.src_lang;
  if (config.batch_size == 0) fail("batch size must be >= 1");

  ParsedUrl url = parse_url(config.endpoint);
  httplib::Client client(url.base);
  client.set_connection_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
  client.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);

  std::vector<std::string> translations;
  translations.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += config.batch_size) {
    const std::size_t end = std::min(texts.size(), start + config.batch_size);
    json body{{"src_lang", from_lang},
              {"tgt_lang", to_lang},
              {"texts", std::vector<std::string>(texts.begin() + static_cast<std::ptrdiff_t>(start),
                                                 texts.begin() + static_cast<std::ptrdiff_t>(end))}};
    const std::string payload = body.dump();
    const std::string range =
        "batch [" + std::to_string(start) + "," + std::to_string(end) + ")";

    json reply;
    bool ok = false;
    for (int attempt = 0; attempt < std::max(config.retries, 1); ++attempt) {
      if (attempt > 0)
        std::this_thread::sleep_for(
            std::chrono::milliseconds(config.backoff_ms * (1 << (attempt - 1))));
      httplib::Result res = client.Post(url.path, payload, "application/json");
      if (!res || res->status < 200 || res->status >= 300) continue;
      reply = json::parse(res->body, nullptr, false);
      if (reply.is_discarded() || !reply.contains("translations")) continue;
      ok = true;
      break;
    }
    if (!ok) fail("fetch-candidates: exhausted retries for " + range);
    const auto& arr = reply["translations"];
    if (!arr.is_array() || arr.size() != end - start)
      fail("fetch-candidates: response length mismatch for " + range);
    for (const auto& t : arr) translations.push_back(t.get<std::string>());
  }
  return translations;
}

int cmd_fetch_candidates(const PipelineConfig& config) {
  require_input(config.bitext, "bitext");
  if (config.endpoint.empty()) fail("missing required option --endpoint");
  if (config.out.empty()) fail("missing required option --out");
  const bool forward = parse_candidate_direction(config.direction) == CandidateDirection::Forward;

  LoadResult loaded = load_bitext(config.bitext, config.src_lang, config.tgt_lang,
                                  config.normalize_options());
  report_skipped(loaded, config.bitext.string());

  std::vector<std::string> texts;
  texts.reserve(loaded.bitext.size());
  for (const SentencePair& p : loaded.bitext.pairs)
    texts.push_back(forward ? p.src_raw : p.tgt_raw);

  std::vector<std::string> translations = fetch_translations(config, texts);

  std::string tsv;
  for (std::size_t i = 0; i < translations.size(); ++i) {
    tsv += std::to_string(loaded.bitext.pairs[i].id);
    tsv += '\t';
    tsv += config.direction;
    tsv += '\t';
    tsv += translations[i];
    tsv += '\n';
  }
  atomic_write_file(config.out, tsv);
  std::cerr << "fetched " << translations.size() << " candidates\n";
  return 0;
}

namespace {

// Flat JSON config files; command-line flags override file values.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json out = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable()) continue;
      std::string name = opt->get_single_name();
      if (name.empty()) continue;
      if (!opt->results().empty())
        out[name] = opt->results().size() == 1 ? json(opt->results().front()) : json(opt->results());
      else if (default_also)
        out[name] = opt->get_default_str();
    }
    return out.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json obj = json::parse(input, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      throw CLI::FileError("config file is not a flat JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : obj.items()) {
      CLI::ConfigItem item;
      item.name = key;
      if (value.is_array())
        for (const auto& v : value)
          item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      else
        item.inputs.push_back(value.is_string() ? value.get<std::string>() : value.dump());
      items.push_back(std::move(item));
    }
    return items;
  }
};

void add_corpus_options(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--src-lang", cfg.src_lang, "Source language code");
  sub->add_option("--tgt-lang", cfg.tgt_lang, "Target language code");
  sub->add_flag("--lowercase,!--no-lowercase", cfg.lowercase,
                "Lowercase during normalization (default on)");
}

void add_aligner_options(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--iterations", cfg.iterations, "EM iterations")->check(CLI::PositiveNumber);
  sub->add_option("--lambda", cfg.lambda, "Diagonal tension (0 = IBM1)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--p-null", cfg.p_null, "NULL alignment probability")
      ->check(CLI::Range(0.0, 0.999999));
  sub->add_option("--symmetrization", cfg.symmetrization, "intersection|union|grow-diag");
}

void finish_subcommand(CLI::App* sub) {
  sub->set_config("--config", "", "Flat JSON config; flags override file values");
  sub->config_formatter(std::make_shared<JsonConfig>());
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"bitext revision toolkit: selective replacement of bitext references "
               "with synthetic translations, plus corpus analysis and lexicon induction"};
  app.require_subcommand(1);

  PipelineConfig cfg;

  CLI::App* revise = app.add_subcommand("revise", "Selectively replace references with candidates");
  revise->add_option("--bitext", cfg.bitext, "Input bitext TSV");
  revise->add_option("--candidates", cfg.candidates, "Candidates TSV (pair_id, direction, text)");
  revise->add_option("--scores", cfg.scores, "Precomputed scores TSV");
  revise->add_option("--scorer-cmd", cfg.scorer_cmd, "Scorer subprocess command (JSONL protocol)");
  revise->add_flag("--surrogate", cfg.surrogate, "Alignment-based surrogate scorer");
  revise->add_option("--model-scores", cfg.model_scores, "Activity scores TSV (rejuvenate)");
  revise->add_option("--condition", cfg.condition, "margin|ranking|thresholding");
  revise->add_option("--margin", cfg.margin, "Margin on the score delta");
  revise->add_option("--threshold", cfg.threshold, "Score floor (thresholding)");
  revise->add_option("--strategy", cfg.strategy,
                     "both|forward|backward|forward-all|backward-all|rejuvenate");
  revise->add_option("--fraction", cfg.fraction, "Fraction to rejuvenate")
      ->check(CLI::Range(0.0, 1.0));
  revise->add_flag("--keep-identical", cfg.keep_identical,
                   "Allow candidates identical to the original to count as replacements");
  revise->add_option("--out", cfg.out, "Revised bitext TSV output");
  revise->add_option("--records", cfg.records, "Decision records JSONL output");
  revise->add_option("--stats", cfg.stats, "Replacement stats JSON output");
  revise->add_option("--led-semantics", cfg.led_semantics, "set|multiset");
  add_corpus_options(revise, cfg);
  add_aligner_options(revise, cfg);
  finish_subcommand(revise);
  revise->callback([&cfg] { cmd_revise(cfg); });

  CLI::App* analyze = app.add_subcommand("analyze", "Compare original and revised corpora");
  analyze->add_option("--original", cfg.original, "Original bitext TSV");
  analyze->add_option("--revised", cfg.revised, "Revised bitext TSV");
  analyze->add_option("--pronouns", cfg.pronouns, "Pronoun list, one per line");
  analyze->add_option("--pronoun-side", cfg.pronoun_side, "src|tgt");
  analyze->add_option("--candidates", cfg.candidates, "Candidates TSV (enables LeD histograms)");
  analyze->add_option("--records", cfg.records, "Records JSONL from revise");
  analyze->add_option("--gold", cfg.gold, "Gold dictionary (enables BLI before/after)");
  analyze->add_option("--min-count", cfg.min_count, "Lexicon count threshold");
  analyze->add_option("--min-prob", cfg.min_prob, "Lexicon probability threshold");
  analyze->add_option("--led-semantics", cfg.led_semantics, "set|multiset");
  analyze->add_option("--out-dir", cfg.out_dir, "Report directory");
  add_corpus_options(analyze, cfg);
  add_aligner_options(analyze, cfg);
  finish_subcommand(analyze);
  analyze->callback([&cfg] { cmd_analyze(cfg); });

  CLI::App* bli = app.add_subcommand("bli", "Induce and evaluate a bilingual lexicon");
  bli->add_option("--bitext", cfg.bitext, "Input bitext TSV");
  bli->add_option("--gold", cfg.gold, "MUSE-format gold dictionary");
  bli->add_option("--min-count", cfg.min_count, "Lexicon count threshold");
  bli->add_option("--min-prob", cfg.min_prob, "Lexicon probability threshold")
      ->check(CLI::Range(0.0, 1.0));
  bli->add_option("--out-dir", cfg.out_dir, "Report directory");
  add_corpus_options(bli, cfg);
  add_aligner_options(bli, cfg);
  finish_subcommand(bli);
  bli->callback([&cfg] { cmd_bli(cfg); });

  CLI::App* fetch = app.add_subcommand("fetch-candidates", "Fetch candidates from an MT endpoint");
  fetch->add_option("--bitext", cfg.bitext, "Input bitext TSV");
  fetch->add_option("--endpoint", cfg.endpoint, "MT service URL");
  fetch->add_option("--direction", cfg.direction, "forward|backward");
  fetch->add_option("--batch-size", cfg.batch_size, "Sentences per request")
      ->check(CLI::PositiveNumber);
  fetch->add_option("--retries", cfg.retries, "Attempts per batch")->check(CLI::PositiveNumber);
  fetch->add_option("--backoff-ms", cfg.backoff_ms, "Base retry backoff");
  fetch->add_option("--timeout-ms", cfg.timeout_ms, "Request timeout");
  fetch->add_option("--out", cfg.out, "Candidates TSV output");
  add_corpus_options(fetch, cfg);
  finish_subcommand(fetch);
  fetch->callback([&cfg] { cmd_fetch_candidates(cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "bitext-forge: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "bitext-forge: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace forge
