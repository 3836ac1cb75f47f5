#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace forge {

using Tokens = std::vector<std::string>;

enum class Side { Src, Tgt };

struct NormalizeOptions {
  bool lowercase = true;  // stands in for true-casing; see README
};

// NFC, curly quotes -> ASCII, en/em dashes -> "-", whitespace collapsed to
// one space, trimmed; lowercased when the flag is on. Total on valid UTF-8.
std::string normalize(std::string_view text, const NormalizeOptions& opts = {});

// Whitespace split, then leading/trailing Unicode punctuation (P*) peeled
// off as single-character tokens. Interior punctuation stays attached.
Tokens tokenize(std::string_view normalized);

struct SentencePair {
  std::size_t id = 0;
  std::string src_raw;  // admitted line content, byte-for-byte
  std::string tgt_raw;
  Tokens src_tokens;  // tokenize(normalize(raw))
  Tokens tgt_tokens;

  const std::string& raw(Side s) const { return s == Side::Src ? src_raw : tgt_raw; }
  const Tokens& tokens(Side s) const { return s == Side::Src ? src_tokens : tgt_tokens; }
};

struct Bitext {
  std::vector<SentencePair> pairs;
  std::string src_lang = "src";
  std::string tgt_lang = "tgt";

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

struct SkippedLine {
  std::size_t line_no;  // 1-based input line number
  std::string reason;
};

struct LoadResult {
  Bitext bitext;
  std::vector<SkippedLine> skipped;
};

// TSV loader: `source<TAB>target<LF>`, no header, no escaping. Lines whose
// either side normalizes+tokenizes to empty are skipped and reported; a line
// without exactly one tab or with invalid UTF-8 is an error. Admitted pairs
// get ids 0..N-1 in file order.
LoadResult load_bitext(const std::filesystem::path& path,
                       const std::string& src_lang = "src",
                       const std::string& tgt_lang = "tgt",
                       const NormalizeOptions& opts = {});

LoadResult parse_bitext(std::string_view tsv,
                        const std::string& src_lang = "src",
                        const std::string& tgt_lang = "tgt",
                        const NormalizeOptions& opts = {});

// Raw strings back to TSV; round-trips the admitted lines byte-for-byte.
std::string to_tsv(const Bitext& bitext);

struct Vocabulary {
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t total() const;
  std::size_t types() const { return counts.size(); }
  std::uint64_t count(const std::string& token) const;
  bool contains(const std::string& token) const { return counts.count(token) > 0; }
};

Vocabulary vocabulary(const Bitext& bitext, Side side);

// Frequency bins from the BLI evaluation tables: [1,5), [5,100), >=100.
enum class FrequencyBin { Low, Medium, High };

FrequencyBin frequency_bin(std::uint64_t count);

std::string to_string(FrequencyBin bin);

}  // namespace forge
