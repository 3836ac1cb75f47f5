#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/scorer.hpp"

namespace forge {

struct Candidate {
  std::string raw;  // normalized candidate sentence
  Tokens tokens;
};

// Forward (M_{S->T}(S_i)) and backward (M_{T->S}(T_i)) synthetic candidates
// for one pair. A pair with neither candidate is never replaced.
struct CandidateSet {
  std::size_t pair_id = 0;
  std::optional<Candidate> forward;
  std::optional<Candidate> backward;
};

using CandidateMap = std::map<std::size_t, CandidateSet>;

enum class CandidateDirection { Forward, Backward };

CandidateDirection parse_candidate_direction(const std::string& name);

// Candidates TSV: `pair_id<TAB>direction<TAB>text<LF>`; text is normalized
// and tokenized on load with the corpus settings.
CandidateMap load_candidates(const std::filesystem::path& path, const NormalizeOptions& opts = {});
CandidateMap parse_candidates(std::string_view tsv, const NormalizeOptions& opts = {});

enum class Decision { Keep, ReplaceForward, ReplaceBackward };

std::string to_string(Decision d);

enum class StrategyKind {
  SelectiveBoth,
  SelectiveForwardOnly,
  SelectiveBackwardOnly,
  ForwardAll,
  BackwardAll,
  Rejuvenation,
};

struct Strategy {
  StrategyKind kind = StrategyKind::SelectiveBoth;
  double fraction = 0.1;  // Rejuvenation only

  static Strategy selective_both() { return {StrategyKind::SelectiveBoth}; }
  static Strategy selective_forward() { return {StrategyKind::SelectiveForwardOnly}; }
  static Strategy selective_backward() { return {StrategyKind::SelectiveBackwardOnly}; }
  static Strategy rejuvenation(double fraction) { return {StrategyKind::Rejuvenation, fraction}; }
};

std::string to_string(StrategyKind k);
StrategyKind parse_strategy(const std::string& name);

struct RevisionRecord {
  std::size_t pair_id = 0;
  Decision decision = Decision::Keep;
  std::optional<ScoreDelta> delta;
  Strategy strategy;
  std::optional<double> model_score;  // rejuvenation activity score
};

struct ReviseOptions {
  // Candidates token-identical to the side they would replace are kept, so
  // replacement statistics only count real revisions. Configurable off.
  bool skip_identical = true;
};

struct ReviseResult {
  Bitext revised;
  std::vector<RevisionRecord> records;  // one per pair, in pair-id order
};

// Selective replacement: per pair, score the available candidates allowed by
// the strategy, filter with the condition, and swap in the passing candidate
// with the higher score (tie -> forward). Never reorders, adds, or drops
// pairs.
ReviseResult revise(const Bitext& bitext, const CandidateMap& candidates, ScorerBackend& backend,
                    const Condition& cond, Strategy strategy, const ReviseOptions& opts = {});

// Unconditional replacement of one side; every pair must have the candidate.
ReviseResult revise_all(const Bitext& bitext, const CandidateMap& candidates,
                        CandidateDirection direction);

// Model-scores TSV: `pair_id<TAB>score<LF>`.
std::map<std::size_t, double> load_model_scores(const std::filesystem::path& path);
std::map<std::size_t, double> parse_model_scores(std::string_view tsv);

// Replaces the ceil(fraction*N) least active pairs (lowest model score, ties
// to the lower pair id) with their forward candidates.
ReviseResult rejuvenate(const Bitext& bitext, const CandidateMap& candidates,
                        const std::map<std::size_t, double>& model_scores, double fraction);

struct ReplacementStats {
  std::uint64_t total = 0;
  std::uint64_t replaced = 0;
  std::uint64_t forward = 0;
  std::uint64_t backward = 0;
  double replaced_pct = 0.0;
  double forward_pct = 0.0;
  double backward_pct = 0.0;
  // Every available candidate delta (d_f and d_b), binned per delta_bin.
  std::map<DeltaBin, std::uint64_t> delta_histogram;
};

ReplacementStats replacement_stats(const std::vector<RevisionRecord>& records);

// Records as JSON lines: {"id","decision","d_f","d_b","strategy"[, "model_score"]}.
std::string records_to_jsonl(const std::vector<RevisionRecord>& records);

}  // namespace forge
