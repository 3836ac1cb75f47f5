#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forge/aligner.hpp"
#include "forge/corpus.hpp"

namespace forge {

enum class Variant { Original, Forward, Backward };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct ScoreRequest {
  std::size_t pair_id;
  Variant variant;
  Tokens src;
  Tokens tgt;
};

// Divergence scores R(S,T): higher = more semantically equivalent. Backends
// must return finite values; anything else is an error at ingestion.
class ScorerBackend {
 public:
  virtual ~ScorerBackend() = default;

  virtual double score(std::size_t pair_id, Variant variant, const Tokens& src,
                       const Tokens& tgt) = 0;

  // Batched warm-up; backends that talk to an external process use it to
  // amortize round trips. Default is a no-op.
  virtual void prime(const std::vector<ScoreRequest>& requests);
};

// Scores TSV: `pair_id<TAB>variant<TAB>score<LF>`.
class PrecomputedScorer : public ScorerBackend {
 public:
  static PrecomputedScorer from_file(const std::filesystem::path& path);
  static PrecomputedScorer from_string(std::string_view tsv);

  double score(std::size_t pair_id, Variant variant, const Tokens& src,
               const Tokens& tgt) override;

  void insert(std::size_t pair_id, Variant variant, double value);

 private:
  std::map<std::pair<std::size_t, Variant>, double> scores_;
};

// Coverage-based stand-in scorer on [0, 100]: 100 * sqrt(cov_f * cov_b),
// where cov_f is the fraction of target tokens y with
// max over x in src+NULL of t(y|x) above 1/(|src|+1), and cov_b is the
// mirror image under the backward table.
double surrogate_score(const Tokens& src, const Tokens& tgt, const TranslationTable& table_fwd,
                       const TranslationTable& table_bwd);

class SurrogateScorer : public ScorerBackend {
 public:
  SurrogateScorer(TranslationTable table_fwd, TranslationTable table_bwd)
      : fwd_(std::move(table_fwd)), bwd_(std::move(table_bwd)) {}

  double score(std::size_t pair_id, Variant variant, const Tokens& src,
               const Tokens& tgt) override;

 private:
  TranslationTable fwd_, bwd_;
};

// Line-delimited JSON protocol with a child process: one
// {"id","src","tgt"} request per line on its stdin, one {"id","score"}
// reply per line on its stdout, order-free; EOF terminates the child.
// Results are cached per (pair id, variant) so each key is scored once.
class SubprocessScorer : public ScorerBackend {
 public:
  explicit SubprocessScorer(const std::string& command, int timeout_ms = 60000);
  ~SubprocessScorer() override;

  SubprocessScorer(const SubprocessScorer&) = delete;
  SubprocessScorer& operator=(const SubprocessScorer&) = delete;

  double score(std::size_t pair_id, Variant variant, const Tokens& src,
               const Tokens& tgt) override;
  void prime(const std::vector<ScoreRequest>& requests) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ScoreDelta {
  double score_orig = 0.0;
  std::optional<double> score_f;
  std::optional<double> score_b;
  std::optional<double> d_f;  // score_f - score_orig
  std::optional<double> d_b;  // score_b - score_orig
};

struct CandidateSet;  // revise.hpp

// Scores the original pair plus whichever candidates are present, lazily.
ScoreDelta deltas(ScorerBackend& backend, const SentencePair& pair,
                  const std::optional<Tokens>& fwd_candidate,
                  const std::optional<Tokens>& bwd_candidate);

enum class ConditionKind { Margin, Ranking, Thresholding };

ConditionKind parse_condition_kind(const std::string& name);
std::string to_string(ConditionKind k);

// Replacement conditions on score deltas. Ranking is Margin with margin 0;
// Thresholding adds a floor on the candidate's absolute score. All
// inequalities are strict, so a zero delta keeps the original.
struct Condition {
  ConditionKind kind = ConditionKind::Margin;
  double margin = 5.0;
  double threshold = 0.0;

  static Condition margin_condition(double margin = 5.0);
  static Condition ranking();
  static Condition thresholding(double margin, double threshold);
};

bool passes(const Condition& cond, double d, double candidate_score);

// Human-evaluation bins over d: d < 0, 0 <= d <= 5, d > 5.
enum class DeltaBin { Negative, SmallPositive, LargeEquivalence };

DeltaBin delta_bin(double d, double boundary = 5.0);
std::string to_string(DeltaBin bin);

}  // namespace forge
