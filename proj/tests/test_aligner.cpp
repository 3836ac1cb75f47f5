#include "forge/aligner.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "forge/util.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

Bitext toy3() { return parse_bitext("a\tx\na b\tx y\nb\ty\n").bitext; }

Bitext random_bitext(std::mt19937& rng, int max_pairs = 12, std::size_t vocab = 8) {
  std::uniform_int_distribution<int> n_pairs(1, max_pairs);
  std::string tsv;
  int n = n_pairs(rng);
  for (int i = 0; i < n; ++i) {
    auto src = test::random_tokens(rng, 1, 5, vocab);
    auto tgt = test::random_tokens(rng, 1, 5, vocab);
    for (std::size_t k = 0; k < src.size(); ++k) tsv += (k ? " " : "") + src[k];
    tsv += '\t';
    for (std::size_t k = 0; k < tgt.size(); ++k) tsv += (k ? " " : "") + tgt[k];
    tsv += '\n';
  }
  return parse_bitext(tsv).bitext;
}

std::vector<test::StrPair> as_pairs(const Bitext& b) {
  std::vector<test::StrPair> out;
  for (const auto& p : b.pairs) out.push_back({p.src_tokens, p.tgt_tokens});
  return out;
}

}  // namespace

TEST_CASE("ibm1 on a single pair concentrates on the only candidate") {
  Bitext b = parse_bitext("a\tx\n").bitext;
  AlignmentModel m = train_ibm1(b, 5, Direction::SrcToTgt);
  CHECK(m.table.prob("a", "x") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(m.table.prob("a", "x") > 0.9);
}

TEST_CASE("ibm1 matches the dense EM oracle on the toy corpus") {
  Bitext b = toy3();
  AlignmentModel m = train_ibm1(b, 20, Direction::SrcToTgt);
  test::NaiveEm oracle = test::naive_em(as_pairs(b), 20, 0.0, DiagonalParams{}.p_null);

  for (const auto& [e, row] : oracle.t) {
    for (const auto& [f, p] : row) {
      double actual = e.empty() ? m.table.null_prob(f) : m.table.prob(e, f);
      CHECK(actual == doctest::Approx(p).epsilon(1e-9));
    }
  }
  for (std::size_t i = 0; i < oracle.log_likelihood.size(); ++i)
    CHECK(m.log_likelihood[i] == doctest::Approx(oracle.log_likelihood[i]).epsilon(1e-9));

  // argmax rows settle on the unambiguous mapping
  auto row_a = m.table.row("a");
  auto row_b = m.table.row("b");
  auto argmax = [](const std::vector<std::pair<std::string, double>>& row) {
    std::string best;
    double best_p = -1;
    for (const auto& [f, p] : row)
      if (p > best_p) {
        best_p = p;
        best = f;
      }
    return best;
  };
  CHECK(argmax(row_a) == "x");
  CHECK(argmax(row_b) == "y");
}

TEST_CASE("diag EM matches the dense oracle with lambda > 0") {
  std::mt19937 rng(21);
  for (int round = 0; round < 10; ++round) {
    Bitext b = random_bitext(rng);
    DiagonalParams params{.lambda = 4.0, .p_null = 0.08};
    AlignmentModel m = train_diag(b, 5, params, Direction::SrcToTgt);
    test::NaiveEm oracle = test::naive_em(as_pairs(b), 5, 4.0, 0.08);
    for (const auto& [e, row] : oracle.t)
      for (const auto& [f, p] : row) {
        double actual = e.empty() ? m.table.null_prob(f) : m.table.prob(e, f);
        CHECK(actual == doctest::Approx(p).epsilon(1e-9));
      }
  }
}

TEST_CASE("training on an empty bitext is an error") {
  CHECK_THROWS_AS(static_cast<void>(train_ibm1(Bitext{}, 5, Direction::SrcToTgt)), Error);
  CHECK_THROWS_AS(static_cast<void>(train_diag(toy3(), 0, {}, Direction::SrcToTgt)), Error);
}

TEST_CASE("negative lambda is rejected") {
  CHECK_THROWS_AS(static_cast<void>(train_diag(toy3(), 3, {.lambda = -1.0}, Direction::SrcToTgt)),
                  Error);
}

TEST_CASE("log-likelihood is non-decreasing and rows stay stochastic") {
  std::mt19937 rng(5);
  for (int round = 0; round < 20; ++round) {
    Bitext b = random_bitext(rng);
    double lambda = round % 2 == 0 ? 0.0 : 4.0;
    AlignmentModel m = train_diag(b, 8, {.lambda = lambda, .p_null = 0.08}, Direction::SrcToTgt);
    for (std::size_t i = 1; i < m.log_likelihood.size(); ++i)
      CHECK(m.log_likelihood[i] >= m.log_likelihood[i - 1] - 1e-9);
    for (const std::string& e : m.table.conditioning_types())
      CHECK(m.table.row_sum(e) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("lambda=0 viterbi agrees with ibm1 viterbi") {
  std::mt19937 rng(31);
  for (int round = 0; round < 10; ++round) {
    Bitext b = random_bitext(rng);
    AlignmentModel ibm1 = train_ibm1(b, 6, Direction::SrcToTgt);
    AlignmentModel diag0 = train_diag(b, 6, {.lambda = 0.0, .p_null = 0.08}, Direction::SrcToTgt);
    for (const auto& pair : b.pairs)
      CHECK(viterbi_align(ibm1, pair).links == viterbi_align(diag0, pair).links);
  }
}

TEST_CASE("diagonal prior dominates on a monotone corpus") {
  std::string tsv;
  for (int i = 0; i < 50; ++i) tsv += "a b c\tx y z\n";
  Bitext b = parse_bitext(tsv).bitext;
  AlignmentModel m = train_diag(b, 10, {.lambda = 4.0, .p_null = 0.08}, Direction::SrcToTgt);
  Alignment al = viterbi_align(m, b.pairs[0]);
  CHECK(al.links == std::vector<Link>{{0, 0}, {1, 1}, {2, 2}});
}

TEST_CASE("viterbi alignment details") {
  SUBCASE("deterministic table gives the single link") {
    AlignmentModel m;
    m.table = TranslationTable::from_rows({{"a", {{"x", 1.0}}}});
    m.params = {.lambda = 0.0, .p_null = 0.08};
    SentencePair pair{.id = 0, .src_tokens = {"a"}, .tgt_tokens = {"x"}};
    CHECK(viterbi_align(m, pair).links == std::vector<Link>{{0, 0}});
  }

  SUBCASE("unseen target token gets no link") {
    Bitext b = toy3();
    AlignmentModel m = train_ibm1(b, 5, Direction::SrcToTgt);
    SentencePair pair{.id = 0, .src_tokens = {"a"}, .tgt_tokens = {"zzz"}};
    CHECK(viterbi_align(m, pair).links.empty());
  }

  SUBCASE("ties break to the lowest source index") {
    AlignmentModel m;
    m.table = TranslationTable::from_rows({{"a", {{"x", 0.5}}}, {"b", {{"x", 0.5}}}});
    m.params = {.lambda = 0.0, .p_null = 0.08};
    SentencePair pair{.id = 0, .src_tokens = {"a", "b"}, .tgt_tokens = {"x"}};
    CHECK(viterbi_align(m, pair).links == std::vector<Link>{{0, 0}});
  }

  SUBCASE("links stay in bounds with at most one link per target index") {
    std::mt19937 rng(17);
    for (int round = 0; round < 20; ++round) {
      Bitext b = random_bitext(rng);
      AlignmentModel m = train_diag(b, 4, {}, Direction::SrcToTgt);
      for (const auto& pair : b.pairs) {
        Alignment al = viterbi_align(m, pair);
        std::set<std::uint32_t> tgt_seen;
        for (const Link& l : al.links) {
          CHECK(l.src < pair.src_tokens.size());
          CHECK(l.tgt < pair.tgt_tokens.size());
          CHECK(tgt_seen.insert(l.tgt).second);
        }
      }
    }
  }

  SUBCASE("tgt->src models emit links in (src,tgt) space") {
    Bitext b = toy3();
    AlignmentModel m = train_ibm1(b, 10, Direction::TgtToSrc);
    Alignment al = viterbi_align(m, b.pairs[1]);  // "a b" / "x y"
    for (const Link& l : al.links) {
      CHECK(l.src < 2);
      CHECK(l.tgt < 2);
    }
    CHECK(al.src_len == 2);
    CHECK(al.tgt_len == 2);
  }
}

TEST_CASE("symmetrize combines alignments") {
  const auto mk = [](std::vector<Link> links, std::uint32_t s, std::uint32_t t) {
    Alignment a;
    a.links = std::move(links);
    a.src_len = s;
    a.tgt_len = t;
    return a;
  };

  SUBCASE("intersection") {
    Alignment out = symmetrize(mk({{0, 0}}, 1, 1), mk({{0, 0}}, 1, 1), SymHeuristic::Intersection);
    CHECK(out.links == std::vector<Link>{{0, 0}});
  }

  SUBCASE("union") {
    Alignment out = symmetrize(mk({{0, 0}}, 2, 1), mk({{1, 0}}, 2, 1), SymHeuristic::Union);
    CHECK(out.links == std::vector<Link>{{0, 0}, {1, 0}});
  }

  SUBCASE("grow-diag adds adjacent union links") {
    Alignment out =
        symmetrize(mk({{0, 0}, {1, 1}}, 2, 2), mk({{0, 0}}, 2, 2), SymHeuristic::GrowDiag);
    CHECK(out.links == std::vector<Link>{{0, 0}, {1, 1}});
  }

  SUBCASE("grow-diag does not add non-adjacent links") {
    Alignment out =
        symmetrize(mk({{0, 0}, {3, 3}}, 4, 4), mk({{0, 0}}, 4, 4), SymHeuristic::GrowDiag);
    CHECK(out.links == std::vector<Link>{{0, 0}});
  }

  SUBCASE("index-range mismatch is an error") {
    CHECK_THROWS_AS(
        static_cast<void>(symmetrize(mk({}, 2, 2), mk({}, 3, 2), SymHeuristic::Union)), Error);
  }

  SUBCASE("set relations hold on random alignments") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<std::uint32_t> dim(1, 6);
    std::uniform_int_distribution<int> n_links(0, 8);
    for (int round = 0; round < 200; ++round) {
      std::uint32_t s = dim(rng), t = dim(rng);
      const auto random_alignment = [&] {
        Alignment a;
        a.src_len = s;
        a.tgt_len = t;
        std::set<Link> links;
        int n = n_links(rng);
        for (int i = 0; i < n; ++i)
          links.insert({std::uniform_int_distribution<std::uint32_t>(0, s - 1)(rng),
                        std::uniform_int_distribution<std::uint32_t>(0, t - 1)(rng)});
        a.links.assign(links.begin(), links.end());
        return a;
      };
      Alignment fwd = random_alignment(), bwd = random_alignment();
      Alignment inter = symmetrize(fwd, bwd, SymHeuristic::Intersection);
      Alignment uni = symmetrize(fwd, bwd, SymHeuristic::Union);
      Alignment grow = symmetrize(fwd, bwd, SymHeuristic::GrowDiag);

      const auto subset = [](const std::vector<Link>& a, const std::vector<Link>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
      };
      CHECK(subset(inter.links, fwd.links));
      CHECK(subset(inter.links, bwd.links));
      CHECK(subset(fwd.links, uni.links));
      CHECK(subset(bwd.links, uni.links));
      CHECK(subset(inter.links, grow.links));
      CHECK(subset(grow.links, uni.links));
    }
  }
}

TEST_CASE("coverage counts distinct linked source positions") {
  Alignment a;
  a.src_len = 4;
  a.tgt_len = 4;
  a.links = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  CHECK(coverage(a) == 1.0);
  a.links = {{0, 0}, {1, 1}, {2, 2}, {2, 3}};
  CHECK(coverage(a) == 0.75);
  a.links = {};
  CHECK(coverage(a) == 0.0);
}

TEST_CASE("pharaoh dump format") {
  Alignment a;
  a.src_len = 2;
  a.tgt_len = 2;
  a.links = {{0, 0}, {1, 1}};
  CHECK(to_pharaoh(3, a) == "3\t0-0 1-1");
  a.links = {};
  CHECK(to_pharaoh(7, a) == "7\t");

  Bitext b = parse_bitext("a\tx\nb\ty\n").bitext;
  std::vector<Alignment> als(2);
  als[0].src_len = als[0].tgt_len = 1;
  als[0].links = {{0, 0}};
  als[1].src_len = als[1].tgt_len = 1;
  CHECK(alignment_dump(b, als) == "0\t0-0\n1\t\n");
}

TEST_CASE("training is bit-identical across thread counts") {
  std::mt19937 rng(61);
  std::string tsv;
  for (int i = 0; i < 700; ++i) {  // several reduction chunks
    auto src = test::random_tokens(rng, 2, 7, 30);
    auto tgt = test::random_tokens(rng, 2, 7, 30);
    for (std::size_t k = 0; k < src.size(); ++k) tsv += (k ? " " : "") + src[k];
    tsv += '\t';
    for (std::size_t k = 0; k < tgt.size(); ++k) tsv += (k ? " " : "") + tgt[k];
    tsv += '\n';
  }
  Bitext b = parse_bitext(tsv).bitext;

  const auto train_with = [&](const char* threads) {
    setenv("BITEXT_FORGE_THREADS", threads, 1);
    AlignmentModel m = train_diag(b, 3, {.lambda = 4.0, .p_null = 0.08}, Direction::SrcToTgt);
    unsetenv("BITEXT_FORGE_THREADS");
    return m;
  };
  AlignmentModel one = train_with("1");
  AlignmentModel eight = train_with("8");

  REQUIRE(one.log_likelihood.size() == eight.log_likelihood.size());
  for (std::size_t i = 0; i < one.log_likelihood.size(); ++i)
    CHECK(one.log_likelihood[i] == eight.log_likelihood[i]);  // exact
  for (const std::string& e : one.table.conditioning_types()) {
    auto r1 = one.table.row(e);
    auto r8 = eight.table.row(e);
    REQUIRE(r1.size() == r8.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
      CHECK(r1[i].first == r8[i].first);
      CHECK(r1[i].second == r8[i].second);  // exact
    }
  }
}
