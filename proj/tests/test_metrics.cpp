#include "forge/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

#include "forge/util.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace forge;

TEST_CASE("led measures lexical difference") {
  CHECK(led({"a", "b"}, {"a", "b"}) == 0.0);
  CHECK(led({"a", "b"}, {"c", "d"}) == 1.0);
  CHECK(led({"a", "b", "c"}, {"a", "b", "d"}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(static_cast<void>(led({}, {"a"})), Error);
  CHECK_THROWS_AS(static_cast<void>(led({"a"}, {})), Error);
}

TEST_CASE("led set vs multiset semantics") {
  // repeated token: set semantics collapses, multiset keeps counts
  Tokens a{"w", "w", "v"};
  Tokens b{"w", "v"};
  CHECK(led(a, b, LedSemantics::Set) == 0.0);
  CHECK(led(a, b, LedSemantics::Multiset) == doctest::Approx(0.5 * (1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("led is symmetric, bounded, and zero on identity") {
  std::mt19937 rng(3);
  for (int round = 0; round < 10000; ++round) {
    Tokens a = test::random_tokens(rng, 1, 8, 6);
    Tokens b = test::random_tokens(rng, 1, 8, 6);
    LedSemantics sem = round % 2 == 0 ? LedSemantics::Set : LedSemantics::Multiset;
    double ab = led(a, b, sem);
    CHECK(ab == led(b, a, sem));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(led(a, a, sem) == 0.0);
  }
}

TEST_CASE("corpus complexity in bits") {
  Vocabulary vocab;
  SUBCASE("deterministic mapping has zero entropy") {
    TranslationTable t = TranslationTable::from_rows({{"a", {{"x", 1.0}}}, {"b", {{"y", 1.0}}}});
    vocab.counts = {{"a", 3}, {"b", 1}};
    CHECK(corpus_complexity(t, vocab) == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("uniform over two targets is one bit") {
    TranslationTable t = TranslationTable::from_rows({{"a", {{"x", 0.5}, {"y", 0.5}}}});
    vocab.counts = {{"a", 10}};
    CHECK(corpus_complexity(t, vocab) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("unweighted mean over types") {
    TranslationTable t = TranslationTable::from_rows(
        {{"a", {{"x", 1.0}}}, {"b", {{"x", 0.5}, {"y", 0.5}}}});
    vocab.counts = {{"a", 100}, {"b", 1}};  // counts must not weight the mean
    CHECK(corpus_complexity(t, vocab) == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("vocab type missing from the table is an error") {
    TranslationTable t = TranslationTable::from_rows({{"a", {{"x", 1.0}}}});
    vocab.counts = {{"a", 1}, {"zzz", 1}};
    CHECK_THROWS_AS(static_cast<void>(corpus_complexity(t, vocab)), Error);
  }
}

TEST_CASE("corpus coverage averages per-pair coverage") {
  // b: both sides one token -> always fully covered after training
  Bitext b = parse_bitext("a\tx\na a\tx\n").bitext;
  AlignmentModel m = train_ibm1(b, 10, Direction::SrcToTgt);
  double cov = corpus_coverage(b, m);
  // pair 0 covers 1/1; pair 1 covers 1/2 (one x aligns one of two a's)
  CHECK(cov == doctest::Approx(0.75).epsilon(1e-9));
  CHECK_THROWS_AS(static_cast<void>(corpus_coverage(Bitext{}, m)), Error);

  Bitext single = parse_bitext("a\tx\n").bitext;
  CHECK(corpus_coverage(single, m) == 1.0);
}

TEST_CASE("pronoun counts are exact token matches") {
  Bitext b = parse_bitext("he saw her .\the saw her .\n").bitext;
  auto counts = pronoun_counts(b, Side::Src, {"he", "she"});
  CHECK(counts.at("he") == 1);
  CHECK(counts.at("she") == 0);

  Bitext empty;
  auto zero = pronoun_counts(empty, Side::Src, {"he"});
  CHECK(zero.at("he") == 0);

  Bitext twice = parse_bitext("he likes he\tx\n").bitext;
  CHECK(pronoun_counts(twice, Side::Src, {"he"}).at("he") == 2);

  CHECK_THROWS_AS(static_cast<void>(pronoun_counts(b, Side::Src, {})), Error);
}

TEST_CASE("led histograms bin by population") {
  SUBCASE("identical pairs mass in the first bin") {
    std::vector<LedSample> samples(5, {{"a"}, {"a"}, true});
    auto [replaced, kept] = led_histogram(samples);
    CHECK(replaced.counts[0] == 5);
    CHECK(replaced.total() == 5);
    CHECK(kept.total() == 0);
  }
  SUBCASE("led 1/3 lands in [0.3,0.4)") {
    auto [replaced, kept] = led_histogram({{{"a", "b", "c"}, {"a", "b", "d"}, false}});
    CHECK(kept.counts[3] == 1);
    CHECK(replaced.total() == 0);
  }
  SUBCASE("led exactly 0.3 lands in [0.3,0.4) despite float rounding") {
    // |S1\S2|/|S1| = 3/5, |S2\S1|/|S2| = 0/2 -> led = 0.3
    Tokens s1{"a", "b", "c", "d", "e"};
    Tokens s2{"a", "b"};
    auto [replaced, kept] = led_histogram({{s1, s2, true}});
    CHECK(replaced.counts[3] == 1);
  }
  SUBCASE("led 1.0 lands in the last bin") {
    auto [replaced, kept] = led_histogram({{{"a"}, {"b"}, true}});
    CHECK(replaced.counts[9] == 1);
  }
  SUBCASE("empty input gives two empty histograms") {
    auto [replaced, kept] = led_histogram({});
    CHECK(replaced.total() == 0);
    CHECK(kept.total() == 0);
  }
  SUBCASE("counts sum to the input size; each value in exactly one bin") {
    std::mt19937 rng(11);
    std::vector<LedSample> samples;
    for (int i = 0; i < 500; ++i)
      samples.push_back(
          {test::random_tokens(rng, 1, 6, 5), test::random_tokens(rng, 1, 6, 5), i % 3 == 0});
    auto [replaced, kept] = led_histogram(samples);
    CHECK(replaced.total() + kept.total() == samples.size());
  }
}

TEST_CASE("kendall tau-b") {
  CHECK(kendall_tau({1, 2, 3, 4}, {1, 2, 3, 4}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kendall_tau({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(kendall_tau({1, 2, 3}, {1, 3, 2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  SUBCASE("errors") {
    CHECK_THROWS_AS(static_cast<void>(kendall_tau({1, 2}, {1})), Error);
    CHECK_THROWS_AS(static_cast<void>(kendall_tau({1}, {1})), Error);
    CHECK_THROWS_AS(static_cast<void>(kendall_tau({2, 2, 2}, {1, 2, 3})), Error);
  }

  SUBCASE("ties agree with the definition-based oracle") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> val(0, 4);  // forces ties
    for (int round = 0; round < 200; ++round) {
      std::vector<double> x(10), y(10);
      for (auto& v : x) v = val(rng);
      for (auto& v : y) v = val(rng);
      const auto all_same = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [&](double a) { return a == v[0]; });
      };
      if (all_same(x) || all_same(y)) continue;
      CHECK(kendall_tau(x, y) == doctest::Approx(test::naive_tau_b(x, y)).epsilon(1e-12));
    }
  }

  SUBCASE("identity and reversal properties on random tie-free data") {
    std::mt19937 rng(29);
    for (int round = 0; round < 100; ++round) {
      std::vector<double> r(12);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<double>(i);
      std::shuffle(r.begin(), r.end(), rng);
      std::vector<double> rev(r.rbegin(), r.rend());
      CHECK(kendall_tau(r, r) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(kendall_tau(r, rev) == doctest::Approx(-1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("corpus_stats assembles both directions") {
  Bitext b = parse_bitext("a b\tx y\nb c\ty z\na\tx\n").bitext;
  CorpusStatsOptions opts;
  opts.iterations = 8;
  opts.pronouns = {"a"};
  opts.pronoun_side = Side::Src;
  CorpusStats stats = corpus_stats(b, opts);
  CHECK(stats.src_types == 3);
  CHECK(stats.tgt_types == 3);
  CHECK(stats.src_tokens == 5);
  CHECK(stats.tgt_tokens == 5);
  CHECK(stats.coverage_src_to_tgt > 0.0);
  CHECK(stats.coverage_src_to_tgt <= 1.0);
  CHECK(stats.coverage_tgt_to_src > 0.0);
  CHECK(stats.complexity_src_to_tgt >= 0.0);
  CHECK(stats.pronoun_counts.at("a") == 2);
}
