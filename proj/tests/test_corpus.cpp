#include "forge/corpus.hpp"

#include <doctest.h>

#include <random>

#include "forge/util.hpp"
#include "helpers.hpp"

using namespace forge;

TEST_CASE("normalize applies the fixed rule set") {
  CHECK(normalize("“Hi”  there") == "\"hi\" there");
  CHECK(normalize("abc") == "abc");
  CHECK(normalize("  a\t b ") == "a b");
  CHECK(normalize("‘quoted’") == "'quoted'");
  CHECK(normalize("en–dash em—dash") == "en-dash em-dash");
  CHECK(normalize("Café") == "café");  // NFC composes e + combining acute
  CHECK(normalize("MiXeD", {.lowercase = false}) == "MiXeD");
  CHECK(normalize("") == "");
  CHECK(normalize(" \t\n ") == "");
}

TEST_CASE("normalize rejects invalid UTF-8") {
  CHECK_THROWS_AS(normalize("ok\xffnope"), Error);
  CHECK_THROWS_AS(normalize("\xC0\x80"), Error);  // overlong
}

TEST_CASE("tokenize splits edge punctuation only") {
  CHECK(tokenize("hello, world!") == Tokens{"hello", ",", "world", "!"});
  CHECK(tokenize("") == Tokens{});
  CHECK(tokenize("state-of-the-art") == Tokens{"state-of-the-art"});
  CHECK(tokenize("don't stop") == Tokens{"don't", "stop"});
  CHECK(tokenize("((nested))") == Tokens{"(", "(", "nested", ")", ")"});
  CHECK(tokenize("...") == Tokens{".", ".", "."});
  CHECK(tokenize("«quoted»") == Tokens{"«", "quoted", "»"});
}

TEST_CASE("tokenize(normalize()) is idempotent on its own joined output") {
  std::mt19937 rng(7);
  const std::string alphabet = "abcXYZ.,!-'éας \t";
  std::vector<std::string> chars;
  for (std::size_t i = 0; i < alphabet.size();) {
    unsigned char c = alphabet[i];
    std::size_t len = c < 0x80 ? 1 : (c < 0xE0 ? 2 : 3);
    chars.push_back(alphabet.substr(i, len));
    i += len;
  }
  std::uniform_int_distribution<std::size_t> len_dist(0, 30);
  std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
  for (int round = 0; round < 500; ++round) {
    std::string text;
    std::size_t len = len_dist(rng);
    for (std::size_t i = 0; i < len; ++i) text += chars[pick(rng)];
    Tokens first = tokenize(normalize(text));
    std::string joined;
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (i) joined += ' ';
      joined += first[i];
    }
    CHECK(tokenize(normalize(joined)) == first);
  }
}

TEST_CASE("load_bitext assigns ids and skips empty sides") {
  test::TempDir dir;

  SUBCASE("single well-formed line") {
    LoadResult r = load_bitext(dir.file("a.tsv", "hello\tγεια\n"));
    REQUIRE(r.bitext.size() == 1);
    CHECK(r.bitext.pairs[0].id == 0);
    CHECK(r.bitext.pairs[0].src_tokens == Tokens{"hello"});
    CHECK(r.skipped.empty());
  }

  SUBCASE("missing tab is an error naming the line") {
    auto p = dir.file("b.tsv", "no tab here\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_bitext(p)),
                         doctest::Contains("line 1"), Error);
  }

  SUBCASE("two tabs is an error") {
    auto p = dir.file("b2.tsv", "a\tb\tc\n");
    CHECK_THROWS_AS(static_cast<void>(load_bitext(p)), Error);
  }

  SUBCASE("empty side is skipped and reported, ids reassigned") {
    LoadResult r = load_bitext(dir.file("c.tsv", "a\tb\n\tx\nc\td\n"));
    REQUIRE(r.bitext.size() == 2);
    CHECK(r.bitext.pairs[0].src_raw == "a");
    CHECK(r.bitext.pairs[1].src_raw == "c");
    CHECK(r.bitext.pairs[0].id == 0);
    CHECK(r.bitext.pairs[1].id == 1);
    REQUIRE(r.skipped.size() == 1);
    CHECK(r.skipped[0].line_no == 2);
  }

  SUBCASE("punctuation-only side still tokenizes as non-empty") {
    LoadResult r = load_bitext(dir.file("d.tsv", "...\tx\n"));
    CHECK(r.bitext.size() == 1);
  }

  SUBCASE("invalid UTF-8 errors with the line number") {
    auto p = dir.file("e.tsv", "ok\tok\nbad\xff\tx\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(load_bitext(p)),
                         doctest::Contains("line 2"), Error);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(static_cast<void>(load_bitext(dir.path / "nope.tsv")), Error);
  }
}

TEST_CASE("bitext round-trips byte-for-byte through TSV") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> n_pairs(0, 20);
  for (int round = 0; round < 100; ++round) {
    std::string tsv;
    int n = n_pairs(rng);
    for (int i = 0; i < n; ++i) {
      auto src = test::random_tokens(rng, 1, 6, 40);
      auto tgt = test::random_tokens(rng, 1, 6, 40);
      for (std::size_t k = 0; k < src.size(); ++k) tsv += (k ? " " : "") + src[k];
      tsv += '\t';
      for (std::size_t k = 0; k < tgt.size(); ++k) tsv += (k ? " " : "") + tgt[k];
      tsv += '\n';
    }
    LoadResult r = parse_bitext(tsv);
    CHECK(to_tsv(r.bitext) == tsv);
  }
}

TEST_CASE("vocabulary counts tokens per side") {
  LoadResult r = parse_bitext("a b\tx\na\ty\n");
  Vocabulary src = vocabulary(r.bitext, Side::Src);
  CHECK(src.counts == std::map<std::string, std::uint64_t>{{"a", 2}, {"b", 1}});
  Vocabulary tgt = vocabulary(r.bitext, Side::Tgt);
  CHECK(tgt.counts == std::map<std::string, std::uint64_t>{{"x", 1}, {"y", 1}});
  CHECK(vocabulary(Bitext{}, Side::Src).counts.empty());
}

TEST_CASE("vocabulary totals equal token counts") {
  std::mt19937 rng(99);
  for (int round = 0; round < 50; ++round) {
    std::string tsv;
    std::uniform_int_distribution<int> n_pairs(1, 15);
    int n = n_pairs(rng);
    for (int i = 0; i < n; ++i) {
      auto src = test::random_tokens(rng, 1, 8, 10);
      auto tgt = test::random_tokens(rng, 1, 8, 10);
      for (std::size_t k = 0; k < src.size(); ++k) tsv += (k ? " " : "") + src[k];
      tsv += '\t';
      for (std::size_t k = 0; k < tgt.size(); ++k) tsv += (k ? " " : "") + tgt[k];
      tsv += '\n';
    }
    LoadResult r = parse_bitext(tsv);
    std::size_t src_tokens = 0, tgt_tokens = 0;
    for (const auto& p : r.bitext.pairs) {
      src_tokens += p.src_tokens.size();
      tgt_tokens += p.tgt_tokens.size();
    }
    CHECK(vocabulary(r.bitext, Side::Src).total() == src_tokens);
    CHECK(vocabulary(r.bitext, Side::Tgt).total() == tgt_tokens);
  }
}

TEST_CASE("frequency bins partition counts >= 1") {
  CHECK(frequency_bin(1) == FrequencyBin::Low);
  CHECK(frequency_bin(4) == FrequencyBin::Low);
  CHECK(frequency_bin(5) == FrequencyBin::Medium);
  CHECK(frequency_bin(99) == FrequencyBin::Medium);
  CHECK(frequency_bin(100) == FrequencyBin::High);
  CHECK(frequency_bin(1'000'000) == FrequencyBin::High);
  CHECK_THROWS_AS(static_cast<void>(frequency_bin(0)), Error);
}
