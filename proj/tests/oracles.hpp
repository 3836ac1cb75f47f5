#pragma once

// Independent reference implementations used to freeze expected values.
// Everything here recomputes results from first principles with dense maps
// and plain loops, sharing no code with the library paths under test.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace forge::test {

using StrPair = std::pair<std::vector<std::string>, std::vector<std::string>>;

struct NaiveEm {
  // t[e][f]; e = "" is the NULL token.
  std::map<std::string, std::map<std::string, double>> t;
  std::vector<double> log_likelihood;
};

// Dense EM with the same model family: prior p_null for NULL and
// (1-p_null) * exp(-lambda*|i/n - j/m|) normalized over i for real links.
inline NaiveEm naive_em(const std::vector<StrPair>& pairs, int iterations, double lambda,
                        double p_null) {
  std::set<std::string> gen_vocab;
  for (const auto& [cond, gen] : pairs)
    for (const auto& f : gen) gen_vocab.insert(f);

  NaiveEm result;
  const double uniform = 1.0 / static_cast<double>(gen_vocab.size());
  const auto trans = [&](const std::string& e, const std::string& f, bool first) {
    if (first) return uniform;
    auto row = result.t.find(e);
    if (row == result.t.end()) return 0.0;
    auto it = row->second.find(f);
    return it == row->second.end() ? 0.0 : it->second;
  };

  for (int iter = 0; iter < iterations; ++iter) {
    const bool first = iter == 0;
    std::map<std::string, std::map<std::string, double>> counts;
    double loglik = 0.0;
    for (const auto& [cond, gen] : pairs) {
      const std::size_t n = cond.size(), m = gen.size();
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> w(n);
        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          double di = static_cast<double>(i + 1) / static_cast<double>(n);
          double dj = static_cast<double>(j + 1) / static_cast<double>(m);
          w[i] = std::exp(-lambda * std::abs(di - dj));
          z += w[i];
        }
        double total = p_null * trans("", gen[j], first);
        for (std::size_t i = 0; i < n; ++i)
          total += (1.0 - p_null) * w[i] / z * trans(cond[i], gen[j], first);
        loglik += std::log(total);
        counts[""][gen[j]] += p_null * trans("", gen[j], first) / total;
        for (std::size_t i = 0; i < n; ++i)
          counts[cond[i]][gen[j]] +=
              (1.0 - p_null) * w[i] / z * trans(cond[i], gen[j], first) / total;
      }
    }
    result.log_likelihood.push_back(loglik);

    result.t.clear();
    for (const auto& [e, row] : counts) {
      double sum = 0.0;
      for (const auto& [f, c] : row) sum += c;
      if (sum <= 0.0) continue;
      double floored = 0.0;
      for (const auto& [f, c] : row) {
        double p = std::max(c / sum, 1e-12);
        result.t[e][f] = p;
        floored += p;
      }
      for (auto& [f, p] : result.t[e]) p /= floored;
    }
  }
  return result;
}

struct BliOracle {
  std::size_t gold_sources = 0;
  std::size_t oov = 0;
  std::size_t in_vocab = 0;
  std::size_t attempted = 0;
  std::size_t correct = 0;
  // keyed "low"/"medium"/"high"
  std::map<std::string, std::pair<std::size_t, std::size_t>> bins;  // attempted, correct

  double precision() const { return 100.0 * double(correct) / double(attempted); }
  double recall() const { return 100.0 * double(correct) / double(in_vocab); }
  double f1() const {
    double p = precision(), r = recall();
    return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
  }
  double oov_rate() const { return 100.0 * double(oov) / double(gold_sources); }
};

// Brute-force recount of the BLI evaluation sets from raw inputs.
inline BliOracle bli_recount(const std::map<std::string, std::string>& one_best,
                             const std::map<std::string, std::set<std::string>>& gold,
                             const std::map<std::string, std::uint64_t>& vocab_counts) {
  BliOracle o;
  o.gold_sources = gold.size();
  for (const auto& [src, translations] : gold) {
    auto v = vocab_counts.find(src);
    if (v == vocab_counts.end() || v->second == 0) {
      ++o.oov;
      continue;
    }
    ++o.in_vocab;
    auto it = one_best.find(src);
    if (it == one_best.end()) continue;
    ++o.attempted;
    std::string bin = v->second < 5 ? "low" : (v->second < 100 ? "medium" : "high");
    ++o.bins[bin].first;
    if (translations.count(it->second)) {
      ++o.correct;
      ++o.bins[bin].second;
    }
  }
  return o;
}

// Kendall tau-b straight from the textbook definition over tie groups.
inline double naive_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double c = 0, d = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = (x[i] - x[j]) * (y[i] - y[j]);
      if (s > 0) ++c;
      if (s < 0) ++d;
    }
  auto tie_term = [](const std::vector<double>& v) {
    std::map<double, double> g;
    for (double t : v) ++g[t];
    double sum = 0;
    for (auto& [_, k] : g) sum += k * (k - 1) / 2;
    return sum;
  };
  double n0 = double(n) * (n - 1) / 2;
  return (c - d) / std::sqrt((n0 - tie_term(x)) * (n0 - tie_term(y)));
}

}  // namespace forge::test
