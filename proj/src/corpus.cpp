#include "forge/corpus.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <numeric>

#include "forge/util.hpp"

namespace forge {

namespace {

const icu::Normalizer2& nfc() {
  UErrorCode ec = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(ec);
  if (U_FAILURE(ec) || n == nullptr) fail("ICU NFC normalizer unavailable");
  return *n;
}

std::u32string to_utf32(const icu::UnicodeString& s) {
  std::u32string out;
  out.resize(static_cast<std::size_t>(s.countChar32()));
  UErrorCode ec = U_ZERO_ERROR;
  s.toUTF32(reinterpret_cast<UChar32*>(out.data()), static_cast<int32_t>(out.size()), ec);
  if (U_FAILURE(ec)) fail("UTF-32 conversion failed");
  return out;
}

std::string to_utf8(std::u32string_view cps) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(cps.data()), static_cast<int32_t>(cps.size()));
  std::string out;
  s.toUTF8String(out);
  return out;
}

bool is_space(char32_t c) {
  return u_hasBinaryProperty(static_cast<UChar32>(c), UCHAR_WHITE_SPACE);
}

bool is_punct(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

}  // namespace

std::string normalize(std::string_view text, const NormalizeOptions& opts) {
  if (!valid_utf8(text)) fail("invalid UTF-8 input");

  UErrorCode ec = U_ZERO_ERROR;
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s = nfc().normalize(s, ec);
  if (U_FAILURE(ec)) fail("NFC normalization failed");

  std::u32string cps = to_utf32(s);
  std::u32string out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    switch (c) {
      case U'“':
      case U'”':
        c = U'"';
        break;
      case U'‘':
      case U'’':
        c = U'\'';
        break;
      case U'–':
      case U'—':
        c = U'-';
        break;
      default:
        break;
    }
    if (is_space(c)) {
      if (!out.empty() && out.back() != U' ') out.push_back(U' ');
    } else {
      out.push_back(c);
    }
  }
  while (!out.empty() && out.back() == U' ') out.pop_back();

  if (!opts.lowercase) return to_utf8(out);

  icu::UnicodeString lowered = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(out.data()), static_cast<int32_t>(out.size()));
  lowered.toLower(icu::Locale::getRoot());
  // toLower can denormalize in corner cases; re-NFC keeps the output stable
  // under repeated normalization.
  ec = U_ZERO_ERROR;
  lowered = nfc().normalize(lowered, ec);
  if (U_FAILURE(ec)) fail("NFC normalization failed");
  std::string result;
  lowered.toUTF8String(result);
  return result;
}

Tokens tokenize(std::string_view normalized) {
  if (!valid_utf8(normalized)) fail("invalid UTF-8 input");
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(normalized.data(), static_cast<int32_t>(normalized.size())));
  std::u32string cps = to_utf32(s);

  Tokens tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) ++i;
    std::size_t chunk_end = i;
    while (chunk_end < cps.size() && !is_space(cps[chunk_end])) ++chunk_end;
    if (chunk_end == i) break;

    std::size_t lo = i, hi = chunk_end;
    while (lo < hi && is_punct(cps[lo])) {
      tokens.push_back(to_utf8(std::u32string_view(&cps[lo], 1)));
      ++lo;
    }
    std::vector<std::string> trailing;
    while (hi > lo && is_punct(cps[hi - 1])) {
      trailing.push_back(to_utf8(std::u32string_view(&cps[hi - 1], 1)));
      --hi;
    }
    if (hi > lo) tokens.push_back(to_utf8(std::u32string_view(&cps[lo], hi - lo)));
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
    i = chunk_end;
  }
  return tokens;
}

LoadResult parse_bitext(std::string_view tsv, const std::string& src_lang,
                        const std::string& tgt_lang, const NormalizeOptions& opts) {
  LoadResult result;
  result.bitext.src_lang = src_lang;
  result.bitext.tgt_lang = tgt_lang;

  std::size_t line_no = 0;
  for (const std::string& line : split_lines(tsv)) {
    ++line_no;
    if (!valid_utf8(line)) fail("invalid UTF-8 at line " + std::to_string(line_no));
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      fail("malformed line " + std::to_string(line_no) + ": expected exactly one tab");

    std::string src_raw = line.substr(0, tab);
    std::string tgt_raw = line.substr(tab + 1);
    Tokens src_tokens = tokenize(normalize(src_raw, opts));
    Tokens tgt_tokens = tokenize(normalize(tgt_raw, opts));
    if (src_tokens.empty() || tgt_tokens.empty()) {
      result.skipped.push_back(
          {line_no, src_tokens.empty() ? "empty source side" : "empty target side"});
      continue;
    }
    SentencePair pair;
    pair.id = result.bitext.pairs.size();
    pair.src_raw = std::move(src_raw);
    pair.tgt_raw = std::move(tgt_raw);
    pair.src_tokens = std::move(src_tokens);
    pair.tgt_tokens = std::move(tgt_tokens);
    result.bitext.pairs.push_back(std::move(pair));
  }
  return result;
}

LoadResult load_bitext(const std::filesystem::path& path, const std::string& src_lang,
                       const std::string& tgt_lang, const NormalizeOptions& opts) {
  return parse_bitext(read_file(path), src_lang, tgt_lang, opts);
}

std::string to_tsv(const Bitext& bitext) {
  std::string out;
  for (const SentencePair& p : bitext.pairs) {
    out += p.src_raw;
    out += '\t';
    out += p.tgt_raw;
    out += '\n';
  }
  return out;
}

std::uint64_t Vocabulary::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

std::uint64_t Vocabulary::count(const std::string& token) const {
  auto it = counts.find(token);
  return it == counts.end() ? 0 : it->second;
}

Vocabulary vocabulary(const Bitext& bitext, Side side) {
  Vocabulary vocab;
  for (const SentencePair& p : bitext.pairs)
    for (const std::string& tok : p.tokens(side)) ++vocab.counts[tok];
  return vocab;
}

FrequencyBin frequency_bin(std::uint64_t count) {
  if (count == 0) fail("frequency_bin: count must be >= 1 (unseen words are OOV, not binned)");
  if (count < 5) return FrequencyBin::Low;
  if (count < 100) return FrequencyBin::Medium;
  return FrequencyBin::High;
}

std::string to_string(FrequencyBin bin) {
  switch (bin) {
    case FrequencyBin::Low: return "low";
    case FrequencyBin::Medium: return "medium";
    case FrequencyBin::High: return "high";
  }
  return "?";
}

}  // namespace forge
