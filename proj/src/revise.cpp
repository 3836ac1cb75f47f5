#include "forge/revise.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "forge/util.hpp"

namespace forge {

using json = nlohmann::json;

CandidateDirection parse_candidate_direction(const std::string& name) {
  if (name == "forward") return CandidateDirection::Forward;
  if (name == "backward") return CandidateDirection::Backward;
  fail("unknown candidate direction: " + name);
}

CandidateMap parse_candidates(std::string_view tsv, const NormalizeOptions& opts) {
  CandidateMap out;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(tsv)) {
    ++line_no;
    if (line.empty()) continue;
    if (!valid_utf8(line)) fail("candidates line " + std::to_string(line_no) + ": invalid UTF-8");
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      fail("candidates line " + std::to_string(line_no) +
           ": expected pair_id<TAB>direction<TAB>text");
    std::size_t pair_id = 0;
    try {
      pair_id = std::stoull(line.substr(0, t1));
    } catch (const std::exception&) {
      fail("candidates line " + std::to_string(line_no) + ": bad pair id");
    }
    CandidateDirection dir = parse_candidate_direction(line.substr(t1 + 1, t2 - t1 - 1));
    Candidate cand;
    cand.raw = normalize(line.substr(t2 + 1), opts);
    cand.tokens = tokenize(cand.raw);
    if (cand.tokens.empty())
      fail("candidates line " + std::to_string(line_no) + ": empty candidate text");
    CandidateSet& set = out[pair_id];
    set.pair_id = pair_id;
    (dir == CandidateDirection::Forward ? set.forward : set.backward) = std::move(cand);
  }
  return out;
}

CandidateMap load_candidates(const std::filesystem::path& path, const NormalizeOptions& opts) {
  return parse_candidates(read_file(path), opts);
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Keep: return "keep";
    case Decision::ReplaceForward: return "replace-forward";
    case Decision::ReplaceBackward: return "replace-backward";
  }
  return "?";
}

std::string to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::SelectiveBoth: return "both";
    case StrategyKind::SelectiveForwardOnly: return "forward";
    case StrategyKind::SelectiveBackwardOnly: return "backward";
    case StrategyKind::ForwardAll: return "forward-all";
    case StrategyKind::BackwardAll: return "backward-all";
    case StrategyKind::Rejuvenation: return "rejuvenate";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& name) {
  if (name == "both") return StrategyKind::SelectiveBoth;
  if (name == "forward") return StrategyKind::SelectiveForwardOnly;
  if (name == "backward") return StrategyKind::SelectiveBackwardOnly;
  if (name == "forward-all") return StrategyKind::ForwardAll;
  if (name == "backward-all") return StrategyKind::BackwardAll;
  if (name == "rejuvenate") return StrategyKind::Rejuvenation;
  fail("unknown strategy: " + name);
}

namespace {

void check_candidate_ids(const Bitext& bitext, const CandidateMap& candidates) {
  for (const auto& [id, set] : candidates)
    if (id >= bitext.size()) fail("candidates reference unknown pair id " + std::to_string(id));
}

SentencePair replaced_pair(const SentencePair& original, const Candidate& cand,
                           Decision decision) {
  SentencePair out = original;
  if (decision == Decision::ReplaceForward) {
    out.tgt_raw = cand.raw;
    out.tgt_tokens = cand.tokens;
  } else {
    out.src_raw = cand.raw;
    out.src_tokens = cand.tokens;
  }
  return out;
}

}  // namespace

ReviseResult revise(const Bitext& bitext, const CandidateMap& candidates, ScorerBackend& backend,
                    const Condition& cond, Strategy strategy, const ReviseOptions& opts) {
  if (strategy.kind != StrategyKind::SelectiveBoth &&
      strategy.kind != StrategyKind::SelectiveForwardOnly &&
      strategy.kind != StrategyKind::SelectiveBackwardOnly)
    fail("revise: strategy must be one of the selective kinds");
  check_candidate_ids(bitext, candidates);
  const bool use_fwd = strategy.kind != StrategyKind::SelectiveBackwardOnly;
  const bool use_bwd = strategy.kind != StrategyKind::SelectiveForwardOnly;

  // Batch the scorer warm-up so external backends see one round trip.
  std::vector<ScoreRequest> requests;
  for (const SentencePair& pair : bitext.pairs) {
    auto it = candidates.find(pair.id);
    if (it == candidates.end()) continue;
    const CandidateSet& set = it->second;
    const bool fwd = use_fwd && set.forward.has_value();
    const bool bwd = use_bwd && set.backward.has_value();
    if (!fwd && !bwd) continue;
    requests.push_back({pair.id, Variant::Original, pair.src_tokens, pair.tgt_tokens});
    if (fwd) requests.push_back({pair.id, Variant::Forward, pair.src_tokens, set.forward->tokens});
    if (bwd) requests.push_back({pair.id, Variant::Backward, set.backward->tokens, pair.tgt_tokens});
  }
  backend.prime(requests);

  ReviseResult result;
  result.revised.src_lang = bitext.src_lang;
  result.revised.tgt_lang = bitext.tgt_lang;
  result.revised.pairs.reserve(bitext.size());
  result.records.reserve(bitext.size());

  for (const SentencePair& pair : bitext.pairs) {
    RevisionRecord record;
    record.pair_id = pair.id;
    record.strategy = strategy;

    const CandidateSet* set = nullptr;
    if (auto it = candidates.find(pair.id); it != candidates.end()) set = &it->second;
    std::optional<Tokens> fwd_tokens, bwd_tokens;
    if (set && use_fwd && set->forward) fwd_tokens = set->forward->tokens;
    if (set && use_bwd && set->backward) bwd_tokens = set->backward->tokens;

    if (!fwd_tokens && !bwd_tokens) {
      result.revised.pairs.push_back(pair);
      result.records.push_back(std::move(record));
      continue;
    }

    ScoreDelta delta = deltas(backend, pair, fwd_tokens, bwd_tokens);
    record.delta = delta;

    bool fwd_passes = delta.d_f && passes(cond, *delta.d_f, *delta.score_f) &&
                      !(opts.skip_identical && *fwd_tokens == pair.tgt_tokens);
    bool bwd_passes = delta.d_b && passes(cond, *delta.d_b, *delta.score_b) &&
                      !(opts.skip_identical && *bwd_tokens == pair.src_tokens);

    Decision decision = Decision::Keep;
    if (fwd_passes && bwd_passes)
      // Highest-scoring synthetic sample wins; tie goes forward.
      decision = *delta.score_b > *delta.score_f ? Decision::ReplaceBackward
                                                 : Decision::ReplaceForward;
    else if (fwd_passes)
      decision = Decision::ReplaceForward;
    else if (bwd_passes)
      decision = Decision::ReplaceBackward;

    record.decision = decision;
    if (decision == Decision::Keep)
      result.revised.pairs.push_back(pair);
    else
      result.revised.pairs.push_back(replaced_pair(
          pair, decision == Decision::ReplaceForward ? *set->forward : *set->backward, decision));
    result.records.push_back(std::move(record));
  }
  return result;
}

ReviseResult revise_all(const Bitext& bitext, const CandidateMap& candidates,
                        CandidateDirection direction) {
  check_candidate_ids(bitext, candidates);
  ReviseResult result;
  result.revised.src_lang = bitext.src_lang;
  result.revised.tgt_lang = bitext.tgt_lang;
  result.revised.pairs.reserve(bitext.size());
  const bool forward = direction == CandidateDirection::Forward;
  const Decision decision = forward ? Decision::ReplaceForward : Decision::ReplaceBackward;

  for (const SentencePair& pair : bitext.pairs) {
    auto it = candidates.find(pair.id);
    const std::optional<Candidate>* cand = nullptr;
    if (it != candidates.end()) cand = forward ? &it->second.forward : &it->second.backward;
    if (cand == nullptr || !cand->has_value())
      fail("revise_all: missing " + std::string(forward ? "forward" : "backward") +
           " candidate for pair " + std::to_string(pair.id));
    result.revised.pairs.push_back(replaced_pair(pair, **cand, decision));
    RevisionRecord record;
    record.pair_id = pair.id;
    record.decision = decision;
    record.strategy = {forward ? StrategyKind::ForwardAll : StrategyKind::BackwardAll};
    result.records.push_back(std::move(record));
  }
  return result;
}

std::map<std::size_t, double> parse_model_scores(std::string_view tsv) {
  std::map<std::size_t, double> out;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(tsv)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      fail("model scores line " + std::to_string(line_no) + ": expected pair_id<TAB>score");
    try {
      out[std::stoull(line.substr(0, tab))] = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      fail("model scores line " + std::to_string(line_no) + ": parse error");
    }
  }
  return out;
}

std::map<std::size_t, double> load_model_scores(const std::filesystem::path& path) {
  return parse_model_scores(read_file(path));
}

ReviseResult rejuvenate(const Bitext& bitext, const CandidateMap& candidates,
                        const std::map<std::size_t, double>& model_scores, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) fail("rejuvenate: fraction must be in (0,1]");
  check_candidate_ids(bitext, candidates);
  for (const SentencePair& pair : bitext.pairs)
    if (!model_scores.count(pair.id))
      fail("rejuvenate: missing model score for pair " + std::to_string(pair.id));

  const std::size_t n = bitext.size();
  const std::size_t k =
      static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));

  // Least active first; ties at the cutoff go to the lower pair id.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double sa = model_scores.at(a), sb = model_scores.at(b);
    return sa != sb ? sa < sb : a < b;
  });
  std::vector<bool> selected(n, false);
  for (std::size_t i = 0; i < k && i < n; ++i) selected[order[i]] = true;

  ReviseResult result;
  result.revised.src_lang = bitext.src_lang;
  result.revised.tgt_lang = bitext.tgt_lang;
  result.revised.pairs.reserve(n);
  for (const SentencePair& pair : bitext.pairs) {
    RevisionRecord record;
    record.pair_id = pair.id;
    record.strategy = Strategy::rejuvenation(fraction);
    record.model_score = model_scores.at(pair.id);
    if (selected[pair.id]) {
      auto it = candidates.find(pair.id);
      if (it == candidates.end() || !it->second.forward)
        fail("rejuvenate: missing forward candidate for selected pair " +
             std::to_string(pair.id));
      record.decision = Decision::ReplaceForward;
      result.revised.pairs.push_back(
          replaced_pair(pair, *it->second.forward, Decision::ReplaceForward));
    } else {
      record.decision = Decision::Keep;
      result.revised.pairs.push_back(pair);
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

ReplacementStats replacement_stats(const std::vector<RevisionRecord>& records) {
  ReplacementStats stats;
  stats.total = records.size();
  stats.delta_histogram = {{DeltaBin::Negative, 0},
                           {DeltaBin::SmallPositive, 0},
                           {DeltaBin::LargeEquivalence, 0}};
  for (const RevisionRecord& r : records) {
    if (r.decision == Decision::ReplaceForward) ++stats.forward;
    if (r.decision == Decision::ReplaceBackward) ++stats.backward;
    if (r.delta) {
      if (r.delta->d_f) ++stats.delta_histogram[delta_bin(*r.delta->d_f)];
      if (r.delta->d_b) ++stats.delta_histogram[delta_bin(*r.delta->d_b)];
    }
  }
  stats.replaced = stats.forward + stats.backward;
  if (stats.total > 0) {
    stats.replaced_pct = 100.0 * static_cast<double>(stats.replaced) / static_cast<double>(stats.total);
    stats.forward_pct = 100.0 * static_cast<double>(stats.forward) / static_cast<double>(stats.total);
    stats.backward_pct = 100.0 * static_cast<double>(stats.backward) / static_cast<double>(stats.total);
  }
  return stats;
}

std::string records_to_jsonl(const std::vector<RevisionRecord>& records) {
  std::string out;
  for (const RevisionRecord& r : records) {
    json obj;
    obj["id"] = r.pair_id;
    obj["decision"] = to_string(r.decision);
    obj["d_f"] = r.delta && r.delta->d_f ? json(*r.delta->d_f) : json(nullptr);
    obj["d_b"] = r.delta && r.delta->d_b ? json(*r.delta->d_b) : json(nullptr);
    obj["strategy"] = to_string(r.strategy.kind);
    if (r.model_score) obj["model_score"] = *r.model_score;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace forge
