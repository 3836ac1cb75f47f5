#include "forge/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "forge/util.hpp"

namespace forge {

namespace {

constexpr double kProbFloor = 1e-12;

// Pairs re-expressed as (conditioning side, generated side) id sequences.
struct EncodedCorpus {
  std::vector<std::vector<std::uint32_t>> cond;  // ids >= 1; 0 is NULL
  std::vector<std::vector<std::uint32_t>> gen;
  std::vector<std::string> cond_types;  // [0] unused (NULL)
  std::vector<std::string> gen_types;
  std::unordered_map<std::string, std::uint32_t> cond_ids;
  std::unordered_map<std::string, std::uint32_t> gen_ids;
};

EncodedCorpus encode(const Bitext& bitext, Direction direction) {
  EncodedCorpus corpus;
  corpus.cond_types.emplace_back();  // NULL placeholder
  corpus.cond.reserve(bitext.size());
  corpus.gen.reserve(bitext.size());
  const auto intern = [](const std::string& tok, auto& ids, auto& types) {
    auto [it, inserted] = ids.emplace(tok, static_cast<std::uint32_t>(types.size()));
    if (inserted) types.push_back(tok);
    return it->second;
  };
  for (const SentencePair& p : bitext.pairs) {
    const Tokens& cond_toks = direction == Direction::SrcToTgt ? p.src_tokens : p.tgt_tokens;
    const Tokens& gen_toks = direction == Direction::SrcToTgt ? p.tgt_tokens : p.src_tokens;
    std::vector<std::uint32_t> c, g;
    c.reserve(cond_toks.size());
    g.reserve(gen_toks.size());
    for (const std::string& t : cond_toks) c.push_back(intern(t, corpus.cond_ids, corpus.cond_types));
    for (const std::string& t : gen_toks) g.push_back(intern(t, corpus.gen_ids, corpus.gen_types));
    corpus.cond.push_back(std::move(c));
    corpus.gen.push_back(std::move(g));
  }
  return corpus;
}

// Diagonal prior weight for conditioning position i and generated position j
// (0-based), before normalization over i.
inline double diag_weight(std::size_t i, std::size_t j, std::size_t n, std::size_t m,
                          double lambda) {
  if (lambda == 0.0) return 1.0;
  double di = static_cast<double>(i + 1) / static_cast<double>(n);
  double dj = static_cast<double>(j + 1) / static_cast<double>(m);
  return std::exp(-lambda * std::abs(di - dj));
}

using CountTable = std::vector<std::unordered_map<std::uint32_t, double>>;

struct ChunkResult {
  CountTable counts;
  double log_likelihood = 0.0;
};

// Fixed chunk grain: the reduction tree is a function of the corpus alone,
// so tables are bit-identical for any thread count.
constexpr std::size_t kChunkPairs = 256;

}  // namespace

class EmTrainer {
 public:
  EmTrainer(const Bitext& bitext, const DiagonalParams& params, Direction direction)
      : corpus_(encode(bitext, direction)), params_(params), direction_(direction) {
    if (bitext.empty()) fail("train: empty bitext");
    if (params.lambda < 0.0) fail("train: lambda must be >= 0");
    if (params.p_null < 0.0 || params.p_null >= 1.0) fail("train: p_null must be in [0,1)");
  }

  AlignmentModel run(int iterations) {
    if (iterations < 1) fail("train: iterations must be >= 1");
    const std::size_t cond_vocab = corpus_.cond_types.size();
    table_.assign(cond_vocab, {});
    uniform_ = 1.0 / static_cast<double>(corpus_.gen_types.size());

    AlignmentModel model;
    model.params = params_;
    model.direction = direction_;
    for (int iter = 0; iter < iterations; ++iter) {
      bool first = iter == 0;
      model.log_likelihood.push_back(em_iteration(first));
    }
    model.table = export_table();
    return model;
  }

 private:
  double t(std::uint32_t e, std::uint32_t f, bool uniform) const {
    if (uniform) return uniform_;
    const auto& row = table_[e];
    auto it = row.find(f);
    return it == row.end() ? 0.0 : it->second;
  }

  void accumulate_pair(std::size_t p, bool uniform, CountTable& counts, double& loglik) const {
    const auto& cond = corpus_.cond[p];
    const auto& gen = corpus_.gen[p];
    const std::size_t n = cond.size(), m = gen.size();
    const double p_null = params_.p_null;

    std::vector<double> prior(n);
    for (std::size_t j = 0; j < m; ++j) {
      double z = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        prior[i] = diag_weight(i, j, n, m, params_.lambda);
        z += prior[i];
      }
      const double scale = (1.0 - p_null) / z;

      double sum = p_null * t(0, gen[j], uniform);
      for (std::size_t i = 0; i < n; ++i) sum += scale * prior[i] * t(cond[i], gen[j], uniform);
      loglik += std::log(sum);

      const double inv = 1.0 / sum;
      counts[0][gen[j]] += p_null * t(0, gen[j], uniform) * inv;
      for (std::size_t i = 0; i < n; ++i)
        counts[cond[i]][gen[j]] += scale * prior[i] * t(cond[i], gen[j], uniform) * inv;
    }
  }

  double em_iteration(bool uniform) {
    const std::size_t pairs = corpus_.cond.size();
    const std::size_t chunks = (pairs + kChunkPairs - 1) / kChunkPairs;
    const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(chunks));

    CountTable total(table_.size());
    double loglik = 0.0;

    // Waves of `threads` chunks keep memory bounded; merging stays in chunk
    // order either way.
    std::vector<ChunkResult> wave(threads);
    for (std::size_t wave_start = 0; wave_start < chunks; wave_start += threads) {
      const std::size_t wave_end = std::min(chunks, wave_start + threads);
      std::vector<std::thread> workers;
      for (std::size_t c = wave_start; c < wave_end; ++c) {
        ChunkResult& slot = wave[c - wave_start];
        slot.counts.assign(table_.size(), {});
        slot.log_likelihood = 0.0;
        workers.emplace_back([this, c, pairs, uniform, &slot] {
          const std::size_t lo = c * kChunkPairs;
          const std::size_t hi = std::min(pairs, lo + kChunkPairs);
          for (std::size_t p = lo; p < hi; ++p)
            accumulate_pair(p, uniform, slot.counts, slot.log_likelihood);
        });
      }
      for (auto& w : workers) w.join();
      for (std::size_t c = wave_start; c < wave_end; ++c) {
        ChunkResult& slot = wave[c - wave_start];
        loglik += slot.log_likelihood;
        for (std::size_t e = 0; e < total.size(); ++e)
          for (const auto& [f, v] : slot.counts[e]) total[e][f] += v;
      }
    }

    m_step(total);
    return loglik;
  }

  void m_step(const CountTable& counts) {
    for (std::size_t e = 0; e < table_.size(); ++e) {
      double sum = 0.0;
      for (const auto& [f, v] : counts[e]) sum += v;
      auto& row = table_[e];
      row.clear();
      if (sum <= 0.0) continue;
      double floored_sum = 0.0;
      for (const auto& [f, v] : counts[e]) {
        double p = std::max(v / sum, kProbFloor);
        row[f] = p;
        floored_sum += p;
      }
      if (floored_sum != 1.0)
        for (auto& [f, p] : row) p /= floored_sum;
    }
  }

  TranslationTable export_table() const {
    TranslationTable out;
    out.cond_types_ = corpus_.cond_types;
    out.cond_ids_ = corpus_.cond_ids;
    out.gen_types_ = corpus_.gen_types;
    out.gen_ids_ = corpus_.gen_ids;
    out.table_ = table_;
    return out;
  }

  EncodedCorpus corpus_;
  DiagonalParams params_;
  Direction direction_;
  CountTable table_;
  double uniform_ = 0.0;
};

AlignmentModel train_diag(const Bitext& bitext, int iterations, const DiagonalParams& params,
                          Direction direction) {
  return EmTrainer(bitext, params, direction).run(iterations);
}

AlignmentModel train_ibm1(const Bitext& bitext, int iterations, Direction direction,
                          double p_null) {
  return train_diag(bitext, iterations, {.lambda = 0.0, .p_null = p_null}, direction);
}

std::string to_string(Direction d) {
  return d == Direction::SrcToTgt ? "src-tgt" : "tgt-src";
}

TranslationTable TranslationTable::from_rows(
    const std::map<std::string, std::map<std::string, double>>& rows,
    const std::map<std::string, double>& null_row) {
  TranslationTable out;
  out.cond_types_.emplace_back();
  out.table_.emplace_back();
  const auto gen_intern = [&out](const std::string& f) {
    auto [it, inserted] = out.gen_ids_.emplace(f, static_cast<std::uint32_t>(out.gen_types_.size()));
    if (inserted) out.gen_types_.push_back(f);
    return it->second;
  };
  for (const auto& [f, p] : null_row) out.table_[0][gen_intern(f)] = p;
  for (const auto& [e, row] : rows) {
    std::uint32_t id = static_cast<std::uint32_t>(out.cond_types_.size());
    out.cond_ids_.emplace(e, id);
    out.cond_types_.push_back(e);
    out.table_.emplace_back();
    for (const auto& [f, p] : row) out.table_[id][gen_intern(f)] = p;
  }
  return out;
}

std::optional<std::uint32_t> TranslationTable::cond_id(const std::string& e) const {
  auto it = cond_ids_.find(e);
  if (it == cond_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> TranslationTable::gen_id(const std::string& f) const {
  auto it = gen_ids_.find(f);
  if (it == gen_ids_.end()) return std::nullopt;
  return it->second;
}

double TranslationTable::prob(const std::string& e, const std::string& f) const {
  auto ei = cond_id(e);
  auto fi = gen_id(f);
  if (!ei || !fi) return 0.0;
  const auto& row = table_[*ei];
  auto it = row.find(*fi);
  return it == row.end() ? 0.0 : it->second;
}

double TranslationTable::null_prob(const std::string& f) const {
  auto fi = gen_id(f);
  if (!fi) return 0.0;
  const auto& row = table_[kNullId];
  auto it = row.find(*fi);
  return it == row.end() ? 0.0 : it->second;
}

bool TranslationTable::has_row(const std::string& e) const { return cond_id(e).has_value(); }

std::vector<std::pair<std::string, double>> TranslationTable::row_by_id(std::uint32_t e) const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(table_[e].size());
  for (const auto& [f, p] : table_[e]) out.emplace_back(gen_types_[f], p);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::string, double>> TranslationTable::row(const std::string& e) const {
  auto ei = cond_id(e);
  if (!ei) fail("translation table has no row for type: " + e);
  return row_by_id(*ei);
}

std::vector<std::pair<std::string, double>> TranslationTable::null_row() const {
  return row_by_id(kNullId);
}

double TranslationTable::row_sum(const std::string& e) const {
  auto ei = cond_id(e);
  if (!ei) fail("translation table has no row for type: " + e);
  double sum = 0.0;
  for (const auto& [f, p] : table_[*ei]) sum += p;
  return sum;
}

std::vector<std::string> TranslationTable::conditioning_types() const {
  std::vector<std::string> out(cond_types_.begin() + 1, cond_types_.end());
  std::sort(out.begin(), out.end());
  return out;
}

Alignment transpose(const Alignment& a) {
  Alignment out;
  out.src_len = a.tgt_len;
  out.tgt_len = a.src_len;
  out.links.reserve(a.links.size());
  for (const Link& l : a.links) out.links.push_back({l.tgt, l.src});
  std::sort(out.links.begin(), out.links.end());
  return out;
}

Alignment viterbi_align(const AlignmentModel& model, const SentencePair& pair) {
  const bool fwd = model.direction == Direction::SrcToTgt;
  const Tokens& cond = fwd ? pair.src_tokens : pair.tgt_tokens;
  const Tokens& gen = fwd ? pair.tgt_tokens : pair.src_tokens;
  if (cond.empty() || gen.empty()) fail("viterbi_align: empty token sequence");

  const std::size_t n = cond.size(), m = gen.size();
  const double p_null = model.params.p_null;

  Alignment out;
  out.src_len = static_cast<std::uint32_t>(pair.src_tokens.size());
  out.tgt_len = static_cast<std::uint32_t>(pair.tgt_tokens.size());

  std::vector<double> prior(n);
  for (std::size_t j = 0; j < m; ++j) {
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      prior[i] = diag_weight(i, j, n, m, model.params.lambda);
      z += prior[i];
    }
    const double scale = (1.0 - p_null) / z;

    double best = p_null * model.table.null_prob(gen[j]);  // NULL wins ties
    std::ptrdiff_t best_i = -1;
    for (std::size_t i = 0; i < n; ++i) {
      double w = scale * prior[i] * model.table.prob(cond[i], gen[j]);
      if (w > best) {
        best = w;
        best_i = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (best_i >= 0) {
      std::uint32_t ci = static_cast<std::uint32_t>(best_i);
      std::uint32_t gi = static_cast<std::uint32_t>(j);
      out.links.push_back(fwd ? Link{ci, gi} : Link{gi, ci});
    }
  }
  std::sort(out.links.begin(), out.links.end());
  return out;
}

SymHeuristic parse_sym_heuristic(const std::string& name) {
  if (name == "intersection") return SymHeuristic::Intersection;
  if (name == "union") return SymHeuristic::Union;
  if (name == "grow-diag") return SymHeuristic::GrowDiag;
  fail("unknown symmetrization heuristic: " + name);
}

Alignment symmetrize(const Alignment& fwd, const Alignment& bwd_transposed,
                     SymHeuristic heuristic) {
  if (fwd.src_len != bwd_transposed.src_len || fwd.tgt_len != bwd_transposed.tgt_len)
    fail("symmetrize: index-range mismatch between alignments");

  std::set<Link> a(fwd.links.begin(), fwd.links.end());
  std::set<Link> b(bwd_transposed.links.begin(), bwd_transposed.links.end());

  std::set<Link> result;
  switch (heuristic) {
    case SymHeuristic::Intersection:
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::inserter(result, result.end()));
      break;
    case SymHeuristic::Union:
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(result, result.end()));
      break;
    case SymHeuristic::GrowDiag: {
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::inserter(result, result.end()));
      std::set<Link> uni;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(uni, uni.end()));
      bool grew = true;
      while (grew) {
        grew = false;
        for (const Link& l : uni) {  // (src,tgt) lexicographic scan
          if (result.count(l)) continue;
          bool adjacent = false;
          for (int di = -1; di <= 1 && !adjacent; ++di)
            for (int dj = -1; dj <= 1 && !adjacent; ++dj) {
              if (di == 0 && dj == 0) continue;
              std::int64_t ni = static_cast<std::int64_t>(l.src) + di;
              std::int64_t nj = static_cast<std::int64_t>(l.tgt) + dj;
              if (ni < 0 || nj < 0) continue;
              adjacent = result.count(
                  {static_cast<std::uint32_t>(ni), static_cast<std::uint32_t>(nj)}) > 0;
            }
          if (adjacent) {
            result.insert(l);
            grew = true;
          }
        }
      }
      break;
    }
  }

  Alignment out;
  out.src_len = fwd.src_len;
  out.tgt_len = fwd.tgt_len;
  out.links.assign(result.begin(), result.end());
  return out;
}

double coverage(const Alignment& alignment) {
  if (alignment.src_len == 0) return 0.0;
  std::set<std::uint32_t> covered;
  for (const Link& l : alignment.links) covered.insert(l.src);
  return static_cast<double>(covered.size()) / static_cast<double>(alignment.src_len);
}

double coverage(const SentencePair& pair, const Alignment& alignment) {
  if (alignment.src_len != pair.src_tokens.size() || alignment.tgt_len != pair.tgt_tokens.size())
    fail("coverage: alignment does not match pair " + std::to_string(pair.id));
  return coverage(alignment);
}

std::string to_pharaoh(std::size_t pair_id, const Alignment& alignment) {
  std::string out = std::to_string(pair_id);
  out += '\t';
  bool first = true;
  for (const Link& l : alignment.links) {
    if (!first) out += ' ';
    out += std::to_string(l.src);
    out += '-';
    out += std::to_string(l.tgt);
    first = false;
  }
  return out;
}

std::string alignment_dump(const Bitext& bitext, const std::vector<Alignment>& alignments) {
  if (bitext.size() != alignments.size()) fail("alignment_dump: size mismatch");
  std::string out;
  for (std::size_t i = 0; i < alignments.size(); ++i) {
    out += to_pharaoh(bitext.pairs[i].id, alignments[i]);
    out += '\n';
  }
  return out;
}

std::vector<Alignment> align_corpus(const AlignmentModel& model, const Bitext& bitext) {
  std::vector<Alignment> out(bitext.size());
  const unsigned threads =
      std::min<unsigned>(worker_threads(), static_cast<unsigned>(std::max<std::size_t>(bitext.size(), 1)));
  std::vector<std::thread> workers;
  std::size_t per = (bitext.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * per, hi = std::min(bitext.size(), lo + per);
    if (lo >= hi) break;
    workers.emplace_back([&, lo, hi] {
      for (std::size_t p = lo; p < hi; ++p) out[p] = viterbi_align(model, bitext.pairs[p]);
    });
  }
  for (auto& w : workers) w.join();
  return out;
}

}  // namespace forge
