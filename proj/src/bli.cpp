#include "forge/bli.hpp"

#include <algorithm>

#include "forge/util.hpp"

namespace forge {

PairCounts collect_pair_stats(const Bitext& bitext,
                              const std::map<std::size_t, Alignment>& alignments) {
  PairCounts counts;
  for (const auto& [id, alignment] : alignments) {
    if (id >= bitext.size()) fail("collect_pair_stats: unknown pair id " + std::to_string(id));
    const SentencePair& pair = bitext.pairs[id];
    for (const Link& link : alignment.links) {
      if (link.src >= pair.src_tokens.size() || link.tgt >= pair.tgt_tokens.size())
        fail("collect_pair_stats: out-of-bounds link in pair " + std::to_string(id));
      const std::string& src = pair.src_tokens[link.src];
      const std::string& tgt = pair.tgt_tokens[link.tgt];
      ++counts.count[{src, tgt}];
      ++counts.src_marginal[src];
      ++counts.tgt_marginal[tgt];
    }
  }
  return counts;
}

InducedLexicon induce_lexicon(const PairCounts& counts, const InduceOptions& opts) {
  InducedLexicon lexicon;
  // counts are keyed (src, tgt) in lexicographic order, so the first maximum
  // seen per src is already the tie-break winner.
  for (auto it = counts.count.begin(); it != counts.count.end();) {
    const std::string& src = it->first.first;
    const std::string* best_tgt = nullptr;
    std::uint64_t best_count = 0;
    auto row_end = it;
    while (row_end != counts.count.end() && row_end->first.first == src) {
      if (row_end->second > best_count) {
        best_count = row_end->second;
        best_tgt = &row_end->first.second;
      }
      ++row_end;
    }
    it = row_end;
    if (best_tgt == nullptr) continue;
    const std::uint64_t marginal = counts.src_marginal.at(src);
    const double prob = static_cast<double>(best_count) / static_cast<double>(marginal);
    if (best_count >= opts.min_count && prob >= opts.min_prob)
      lexicon.entries[src] = {*best_tgt, best_count, prob};
  }
  return lexicon;
}

std::string lexicon_dump(const InducedLexicon& lexicon) {
  std::string out;
  for (const auto& [src, entry] : lexicon.entries) {
    out += src;
    out += '\t';
    out += entry.target;
    out += '\t';
    out += std::to_string(entry.count);
    out += '\t';
    out += format_double(entry.prob);
    out += '\n';
  }
  return out;
}

GoldDictionary parse_gold(std::string_view text, const NormalizeOptions& opts) {
  GoldDictionary gold;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    if (!valid_utf8(line)) fail("gold dictionary line " + std::to_string(line_no) + ": invalid UTF-8");
    // Tab or space separated. Normalization collapses the separator to one
    // space; words keep their punctuation (no tokenize here).
    std::string norm = normalize(line, opts);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start < norm.size()) {
      std::size_t sp = norm.find(' ', start);
      if (sp == std::string::npos) {
        fields.push_back(norm.substr(start));
        break;
      }
      if (sp > start) fields.push_back(norm.substr(start, sp - start));
      start = sp + 1;
    }
    if (fields.size() != 2)
      fail("gold dictionary line " + std::to_string(line_no) + ": expected `src tgt`");
    gold.entries[fields[0]].insert(fields[1]);
  }
  if (gold.entries.empty()) fail("gold dictionary is empty");
  return gold;
}

GoldDictionary load_gold(const std::filesystem::path& path, const NormalizeOptions& opts) {
  return parse_gold(read_file(path), opts);
}

BliReport evaluate(const InducedLexicon& lexicon, const GoldDictionary& gold,
                   const Vocabulary& src_vocab) {
  BliReport report;
  report.gold_sources = gold.entries.size();
  report.by_bin = {{FrequencyBin::Low, {}}, {FrequencyBin::Medium, {}}, {FrequencyBin::High, {}}};

  std::uint64_t oov = 0;
  for (const auto& [src, translations] : gold.entries) {
    const std::uint64_t freq = src_vocab.count(src);
    if (freq == 0) {
      ++oov;
      continue;
    }
    ++report.in_vocab;
    auto it = lexicon.entries.find(src);
    if (it == lexicon.entries.end()) continue;
    ++report.attempted;
    const bool correct = translations.count(it->second.target) > 0;
    BliReport::BinStats& bin = report.by_bin[frequency_bin(freq)];
    ++bin.attempted;
    if (correct) {
      ++report.correct;
      ++bin.correct;
    }
  }

  if (report.gold_sources > 0)
    report.oov_rate = 100.0 * static_cast<double>(oov) / static_cast<double>(report.gold_sources);
  if (report.attempted > 0)
    report.precision = 100.0 * static_cast<double>(report.correct) / static_cast<double>(report.attempted);
  if (report.in_vocab > 0)
    report.recall = 100.0 * static_cast<double>(report.correct) / static_cast<double>(report.in_vocab);
  if (report.precision && report.recall) {
    const double p = *report.precision, r = *report.recall;
    report.f1 = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
  for (auto& [bin, stats] : report.by_bin)
    if (stats.attempted > 0)
      stats.precision = 100.0 * static_cast<double>(stats.correct) / static_cast<double>(stats.attempted);
  return report;
}

}  // namespace forge
