#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forge/aligner.hpp"
#include "forge/corpus.hpp"

namespace forge {

enum class LedSemantics { Set, Multiset };

// Lexical difference: 0.5 * (|S1\S2|/|S1| + |S2\S1|/|S2|). Set semantics
// compares token types; multiset keeps repetitions. Symmetric, in [0,1].
double led(const Tokens& s1, const Tokens& s2, LedSemantics semantics = LedSemantics::Set);

// The two difference ratios as exact integer fractions (num, den); used for
// exact histogram binning.
struct LedParts {
  std::int64_t num1, den1;
  std::int64_t num2, den2;
};
LedParts led_parts(const Tokens& s1, const Tokens& s2, LedSemantics semantics);

// Mean over source types of H(target | source) in bits, from a trained
// translation table; the NULL row is excluded. Errors if a vocab type has no
// table row (training/vocab mismatch).
double corpus_complexity(const TranslationTable& table, const Vocabulary& vocab);

// Mean per-pair coverage under the model's own direction: the fraction of
// conditioning-side words that receive links.
double corpus_coverage(const Bitext& bitext, const AlignmentModel& model);

std::map<std::string, std::uint64_t> pronoun_counts(const Bitext& bitext, Side side,
                                                    const std::vector<std::string>& pronouns);

struct LedHistogram {
  std::string population;            // "replaced" or "not_replaced"
  std::array<std::uint64_t, 10> counts{};  // [0,0.1) ... [0.9,1.0]

  std::uint64_t total() const;
};

struct LedSample {
  Tokens original;
  Tokens synthetic;
  bool replaced;
};

// Histograms of led(original, synthetic) split by replaced/not-replaced;
// 0.1-wide bins, value 1.0 in the last bin. Binning is exact (integer
// fraction arithmetic), so every value lands in exactly one bin.
std::pair<LedHistogram, LedHistogram> led_histogram(const std::vector<LedSample>& samples,
                                                    LedSemantics semantics = LedSemantics::Set);

// Kendall's tau-b (tie-corrected). Errors on length mismatch, length < 2,
// or an all-tied input (zero denominator).
double kendall_tau(const std::vector<double>& r1, const std::vector<double>& r2);

struct CorpusStats {
  double complexity_src_to_tgt = 0.0;  // bits
  double complexity_tgt_to_src = 0.0;
  double coverage_src_to_tgt = 0.0;
  double coverage_tgt_to_src = 0.0;
  std::uint64_t src_types = 0;
  std::uint64_t tgt_types = 0;
  std::uint64_t src_tokens = 0;
  std::uint64_t tgt_tokens = 0;
  std::map<std::string, std::uint64_t> pronoun_counts;
};

struct CorpusStatsOptions {
  int iterations = 5;
  DiagonalParams params;
  std::vector<std::string> pronouns;
  Side pronoun_side = Side::Tgt;
};

// Trains fresh aligners in both directions and assembles the full stats
// block for one corpus.
CorpusStats corpus_stats(const Bitext& bitext, const CorpusStatsOptions& opts);

}  // namespace forge
