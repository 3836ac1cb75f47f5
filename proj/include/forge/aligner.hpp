#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/corpus.hpp"

namespace forge {

enum class Direction { SrcToTgt, TgtToSrc };

std::string to_string(Direction d);

// Lexical translation table t(f|e) with a distinguished NULL conditioning
// type. Rows are stochastic (sum 1 within 1e-6) after every M-step.
class TranslationTable {
 public:
  static constexpr std::uint32_t kNullId = 0;

  TranslationTable() = default;

  // Hand-built tables for tests and the surrogate scorer.
  static TranslationTable from_rows(
      const std::map<std::string, std::map<std::string, double>>& rows,
      const std::map<std::string, double>& null_row = {});

  double prob(const std::string& e, const std::string& f) const;
  double null_prob(const std::string& f) const;

  bool has_row(const std::string& e) const;
  std::size_t rows() const { return table_.size(); }  // includes the NULL row

  // Row contents as (target type, probability), sorted by target type.
  std::vector<std::pair<std::string, double>> row(const std::string& e) const;
  std::vector<std::pair<std::string, double>> null_row() const;

  double row_sum(const std::string& e) const;
  std::vector<std::string> conditioning_types() const;  // excludes NULL

 private:
  friend class EmTrainer;

  std::optional<std::uint32_t> cond_id(const std::string& e) const;
  std::optional<std::uint32_t> gen_id(const std::string& f) const;
  std::vector<std::pair<std::string, double>> row_by_id(std::uint32_t e) const;

  // cond id 0 is NULL; real types start at 1.
  std::unordered_map<std::string, std::uint32_t> cond_ids_;
  std::vector<std::string> cond_types_;  // [0] = "" placeholder for NULL
  std::unordered_map<std::string, std::uint32_t> gen_ids_;
  std::vector<std::string> gen_types_;
  std::vector<std::unordered_map<std::uint32_t, double>> table_;  // by cond id
};

struct DiagonalParams {
  double lambda = 4.0;  // diagonal tension, >= 0; 0 = flat prior
  double p_null = 0.08;
};

struct AlignmentModel {
  TranslationTable table;
  DiagonalParams params;
  Direction direction = Direction::SrcToTgt;
  std::vector<double> log_likelihood;  // corpus log-likelihood per EM iteration
};

// EM from uniform initialization with a NULL token prepended to the
// conditioning side. Alignment prior: p_null for NULL and, for real links,
// (1 - p_null) * exp(-lambda * |i/n - j/m|) normalized over i. IBM Model 1
// is the lambda = 0 case. Results are bit-identical across thread counts.
AlignmentModel train_diag(const Bitext& bitext, int iterations,
                          const DiagonalParams& params, Direction direction);

AlignmentModel train_ibm1(const Bitext& bitext, int iterations, Direction direction,
                          double p_null = DiagonalParams{}.p_null);

struct Link {
  std::uint32_t src = 0;
  std::uint32_t tgt = 0;
  auto operator<=>(const Link&) const = default;
};

// Word links for one sentence pair, in (src index, tgt index) space
// regardless of the model direction that produced them.
struct Alignment {
  std::vector<Link> links;  // sorted, unique
  std::uint32_t src_len = 0;
  std::uint32_t tgt_len = 0;
};

Alignment transpose(const Alignment& a);

// Each generated-side token goes to its argmax conditioning token; NULL wins
// ties against real tokens and yields no link; real-token ties go to the
// lowest index.
Alignment viterbi_align(const AlignmentModel& model, const SentencePair& pair);

enum class SymHeuristic { Intersection, Union, GrowDiag };

SymHeuristic parse_sym_heuristic(const std::string& name);

// Both inputs must be in (src, tgt) index space over the same pair, i.e. the
// backward alignment is transposed first.
Alignment symmetrize(const Alignment& fwd, const Alignment& bwd_transposed,
                     SymHeuristic heuristic);

// Fraction of source positions that appear in at least one link.
double coverage(const Alignment& alignment);
double coverage(const SentencePair& pair, const Alignment& alignment);

// Pharaoh dump line: `id<TAB>i-j i-j ...`, bare `id<TAB>` when empty.
std::string to_pharaoh(std::size_t pair_id, const Alignment& alignment);

// One pharaoh line per pair, in bitext order.
std::string alignment_dump(const Bitext& bitext, const std::vector<Alignment>& alignments);

// Viterbi-aligns every pair; deterministic, parallel over pairs.
std::vector<Alignment> align_corpus(const AlignmentModel& model, const Bitext& bitext);

}  // namespace forge
