#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "forge/aligner.hpp"
#include "forge/bli.hpp"
#include "forge/metrics.hpp"
#include "forge/revise.hpp"
#include "forge/scorer.hpp"

namespace forge {

// Flat run configuration; every field maps to a CLI flag of the same name
// and to a key in the JSON config file.
struct PipelineConfig {
  // inputs
  std::filesystem::path bitext;
  std::filesystem::path candidates;
  std::filesystem::path scores;        // precomputed scores TSV
  std::string scorer_cmd;              // subprocess scorer command
  bool surrogate = false;              // alignment-based scorer
  std::filesystem::path model_scores;  // rejuvenation activity scores
  std::filesystem::path gold;          // MUSE dictionary
  std::filesystem::path original;      // analyze: pre-revision corpus
  std::filesystem::path revised;       // analyze: post-revision corpus
  std::filesystem::path pronouns;      // one pronoun per line
  std::string pronoun_side = "tgt";

  // outputs
  std::filesystem::path out;
  std::filesystem::path records;
  std::filesystem::path stats;  // defaults to <out>.stats.json
  std::filesystem::path out_dir;

  // replacement policy
  std::string condition = "margin";
  double margin = 5.0;
  double threshold = 0.0;
  std::string strategy = "both";
  double fraction = 0.1;
  bool keep_identical = false;  // disables the identical-candidate Keep rule

  // corpus + aligner settings
  std::string src_lang = "src";
  std::string tgt_lang = "tgt";
  bool lowercase = true;
  std::string led_semantics = "set";
  int iterations = 5;
  double lambda = 4.0;
  double p_null = 0.08;
  std::string symmetrization = "grow-diag";

  // BLI thresholds
  std::uint64_t min_count = 2;
  double min_prob = 0.1;

  // MT client
  std::string endpoint;
  std::string direction = "forward";
  std::size_t batch_size = 64;
  int retries = 3;
  int backoff_ms = 200;
  int timeout_ms = 60000;

  NormalizeOptions normalize_options() const { return {.lowercase = lowercase}; }
  LedSemantics led() const;
  SymHeuristic sym() const;
  DiagonalParams diagonal_params() const { return {.lambda = lambda, .p_null = p_null}; }
};

// Subcommand drivers. Validation happens before any expensive work and all
// outputs are written atomically, so failures leave no partial artifacts.
int cmd_revise(const PipelineConfig& config);
int cmd_analyze(const PipelineConfig& config);
int cmd_bli(const PipelineConfig& config);
int cmd_fetch_candidates(const PipelineConfig& config);

// Batched POST client for an external MT endpoint; returns one translation
// per input text, in order.
std::vector<std::string> fetch_translations(const PipelineConfig& config,
                                            const std::vector<std::string>& texts);

// Full CLI: `bitext-forge <revise|analyze|bli|fetch-candidates> ...`.
int run_cli(int argc, const char* const* argv);

}  // namespace forge
