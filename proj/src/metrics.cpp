#include "forge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "forge/util.hpp"

namespace forge {

namespace {

// |a \ b| under multiset semantics.
std::int64_t multiset_diff(const Tokens& a, const Tokens& b) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& t : a) ++counts[t];
  for (const auto& t : b) --counts[t];
  std::int64_t diff = 0;
  for (const auto& [tok, c] : counts)
    if (c > 0) diff += c;
  return diff;
}

}  // namespace

LedParts led_parts(const Tokens& s1, const Tokens& s2, LedSemantics semantics) {
  if (s1.empty() || s2.empty()) fail("led: empty token sequence");
  if (semantics == LedSemantics::Multiset) {
    return {multiset_diff(s1, s2), static_cast<std::int64_t>(s1.size()),
            multiset_diff(s2, s1), static_cast<std::int64_t>(s2.size())};
  }
  std::set<std::string> t1(s1.begin(), s1.end());
  std::set<std::string> t2(s2.begin(), s2.end());
  std::int64_t only1 = 0, only2 = 0;
  for (const auto& t : t1) only1 += t2.count(t) == 0;
  for (const auto& t : t2) only2 += t1.count(t) == 0;
  return {only1, static_cast<std::int64_t>(t1.size()), only2, static_cast<std::int64_t>(t2.size())};
}

double led(const Tokens& s1, const Tokens& s2, LedSemantics semantics) {
  LedParts p = led_parts(s1, s2, semantics);
  return 0.5 * (static_cast<double>(p.num1) / static_cast<double>(p.den1) +
                static_cast<double>(p.num2) / static_cast<double>(p.den2));
}

double corpus_complexity(const TranslationTable& table, const Vocabulary& vocab) {
  if (vocab.counts.empty()) fail("corpus_complexity: empty vocabulary");
  double sum = 0.0;
  for (const auto& [type, n] : vocab.counts) {
    if (!table.has_row(type))
      fail("corpus_complexity: vocabulary type missing from table: " + type);
    double h = 0.0;
    for (const auto& [target, p] : table.row(type))
      if (p > 0.0) h -= p * std::log2(p);
    sum += h;
  }
  return sum / static_cast<double>(vocab.counts.size());
}

double corpus_coverage(const Bitext& bitext, const AlignmentModel& model) {
  if (bitext.empty()) fail("corpus_coverage: empty bitext");
  std::vector<Alignment> alignments = align_corpus(model, bitext);
  double sum = 0.0;
  for (const Alignment& a : alignments) {
    // Coverage is over the model's conditioning side.
    sum += model.direction == Direction::SrcToTgt ? coverage(a) : coverage(transpose(a));
  }
  return sum / static_cast<double>(bitext.size());
}

std::map<std::string, std::uint64_t> pronoun_counts(const Bitext& bitext, Side side,
                                                    const std::vector<std::string>& pronouns) {
  if (pronouns.empty()) fail("pronoun_counts: empty pronoun list");
  std::map<std::string, std::uint64_t> counts;
  for (const std::string& p : pronouns) counts[p] = 0;
  for (const SentencePair& pair : bitext.pairs)
    for (const std::string& tok : pair.tokens(side)) {
      auto it = counts.find(tok);
      if (it != counts.end()) ++it->second;
    }
  return counts;
}

std::uint64_t LedHistogram::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::pair<LedHistogram, LedHistogram> led_histogram(const std::vector<LedSample>& samples,
                                                    LedSemantics semantics) {
  LedHistogram replaced{.population = "replaced"};
  LedHistogram kept{.population = "not_replaced"};
  for (const LedSample& s : samples) {
    LedParts p = led_parts(s.original, s.synthetic, semantics);
    // bin = floor(10 * led) in exact integer arithmetic:
    // led = (num1*den2 + num2*den1) / (2*den1*den2)
    std::int64_t num = 10 * (p.num1 * p.den2 + p.num2 * p.den1);
    std::int64_t den = 2 * p.den1 * p.den2;
    std::int64_t bin = num / den;  // non-negative operands
    if (bin > 9) bin = 9;          // led == 1.0 goes to the last bin
    ++(s.replaced ? replaced : kept).counts[static_cast<std::size_t>(bin)];
  }
  return {replaced, kept};
}

double kendall_tau(const std::vector<double>& r1, const std::vector<double>& r2) {
  if (r1.size() != r2.size()) fail("kendall_tau: length mismatch");
  const std::size_t n = r1.size();
  if (n < 2) fail("kendall_tau: need at least 2 observations");

  std::int64_t concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = r1[i] - r1[j];
      double dy = r2[i] - r2[j];
      if (dx == 0.0 || dy == 0.0) continue;  // ties enter through n1/n2 only
      if ((dx > 0.0) == (dy > 0.0))
        ++concordant;
      else
        ++discordant;
    }

  // n1/n2 from tie-group sizes.
  const auto tie_pairs = [](const std::vector<double>& r) {
    std::map<double, std::int64_t> groups;
    for (double v : r) ++groups[v];
    std::int64_t t = 0;
    for (const auto& [v, c] : groups) t += c * (c - 1) / 2;
    return t;
  };
  const std::int64_t n0 = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
  const std::int64_t n1 = tie_pairs(r1);
  const std::int64_t n2 = tie_pairs(r2);
  if (n0 == n1 || n0 == n2) fail("kendall_tau: all-tied ranking has undefined tau-b");

  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
}

CorpusStats corpus_stats(const Bitext& bitext, const CorpusStatsOptions& opts) {
  if (bitext.empty()) fail("corpus_stats: empty bitext");
  CorpusStats stats;

  Vocabulary src_vocab = vocabulary(bitext, Side::Src);
  Vocabulary tgt_vocab = vocabulary(bitext, Side::Tgt);
  stats.src_types = src_vocab.types();
  stats.tgt_types = tgt_vocab.types();
  stats.src_tokens = src_vocab.total();
  stats.tgt_tokens = tgt_vocab.total();

  AlignmentModel fwd = train_diag(bitext, opts.iterations, opts.params, Direction::SrcToTgt);
  AlignmentModel bwd = train_diag(bitext, opts.iterations, opts.params, Direction::TgtToSrc);
  stats.complexity_src_to_tgt = corpus_complexity(fwd.table, src_vocab);
  stats.complexity_tgt_to_src = corpus_complexity(bwd.table, tgt_vocab);
  stats.coverage_src_to_tgt = corpus_coverage(bitext, fwd);
  stats.coverage_tgt_to_src = corpus_coverage(bitext, bwd);

  if (!opts.pronouns.empty())
    stats.pronoun_counts = pronoun_counts(bitext, opts.pronoun_side, opts.pronouns);
  return stats;
}

}  // namespace forge
