#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/aligner.hpp"
#include "forge/corpus.hpp"

namespace forge {

// Co-alignment counts of (source type, target type) plus marginals.
struct PairCounts {
  std::map<std::pair<std::string, std::string>, std::uint64_t> count;
  std::map<std::string, std::uint64_t> src_marginal;
  std::map<std::string, std::uint64_t> tgt_marginal;
};

// One count per link (i,j): (src token i, tgt token j). Alignment ids must
// exist in the bitext and links must be in bounds.
PairCounts collect_pair_stats(const Bitext& bitext,
                              const std::map<std::size_t, Alignment>& alignments);

struct LexiconEntry {
  std::string target;
  std::uint64_t count = 0;
  double prob = 0.0;  // count / src marginal
};

// One-best lexicon: src type -> argmax-count target type (ties to the
// lexicographically smallest), filtered by min_count and min_prob.
struct InducedLexicon {
  std::map<std::string, LexiconEntry> entries;
};

struct InduceOptions {
  std::uint64_t min_count = 2;
  double min_prob = 0.1;
};

InducedLexicon induce_lexicon(const PairCounts& counts, const InduceOptions& opts = {});

// `src<TAB>tgt<TAB>count<TAB>prob<LF>` sorted by src.
std::string lexicon_dump(const InducedLexicon& lexicon);

struct GoldDictionary {
  std::map<std::string, std::set<std::string>> entries;
};

// MUSE plain text: one `src tgt` pair per line (tab or space separated),
// aggregated over repeated sources, normalized like the corpus.
GoldDictionary load_gold(const std::filesystem::path& path, const NormalizeOptions& opts = {});
GoldDictionary parse_gold(std::string_view text, const NormalizeOptions& opts = {});

struct BliReport {
  std::uint64_t gold_sources = 0;
  std::uint64_t in_vocab = 0;    // gold sources present in the corpus vocab
  std::uint64_t attempted = 0;   // in-vocab sources with a lexicon entry
  std::uint64_t correct = 0;

  std::optional<double> precision;  // percentages; absent on empty denominators
  std::optional<double> recall;
  std::optional<double> f1;
  double oov_rate = 0.0;

  struct BinStats {
    std::uint64_t attempted = 0;
    std::uint64_t correct = 0;
    std::optional<double> precision;
  };
  std::map<FrequencyBin, BinStats> by_bin;
};

// Evaluation restricted to gold sources present in src_vocab: precision over
// attempted entries, recall over the in-vocab gold set, OOV rate over all
// gold sources, and per-frequency-bin precision.
BliReport evaluate(const InducedLexicon& lexicon, const GoldDictionary& gold,
                   const Vocabulary& src_vocab);

}  // namespace forge
