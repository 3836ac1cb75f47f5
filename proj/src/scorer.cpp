#include "forge/scorer.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "forge/util.hpp"

namespace forge {

using json = nlohmann::json;

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Original: return "original";
    case Variant::Forward: return "forward";
    case Variant::Backward: return "backward";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "original") return Variant::Original;
  if (name == "forward") return Variant::Forward;
  if (name == "backward") return Variant::Backward;
  fail("unknown score variant: " + name);
}

void ScorerBackend::prime(const std::vector<ScoreRequest>&) {}

namespace {

std::string score_key(std::size_t pair_id, Variant v) {
  return std::to_string(pair_id) + "/" + to_string(v);
}

double checked_finite(double value, std::size_t pair_id, Variant v) {
  if (!std::isfinite(value)) fail("non-finite score for " + score_key(pair_id, v));
  return value;
}

}  // namespace

PrecomputedScorer PrecomputedScorer::from_file(const std::filesystem::path& path) {
  return from_string(read_file(path));
}

PrecomputedScorer PrecomputedScorer::from_string(std::string_view tsv) {
  PrecomputedScorer scorer;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(tsv)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      fail("scores line " + std::to_string(line_no) + ": expected pair_id<TAB>variant<TAB>score");
    std::size_t pair_id = 0;
    try {
      pair_id = std::stoull(line.substr(0, t1));
    } catch (const std::exception&) {
      fail("scores line " + std::to_string(line_no) + ": bad pair id");
    }
    Variant variant = parse_variant(line.substr(t1 + 1, t2 - t1 - 1));
    double value = 0.0;
    try {
      value = std::stod(line.substr(t2 + 1));
    } catch (const std::exception&) {
      fail("scores line " + std::to_string(line_no) + ": bad score");
    }
    scorer.insert(pair_id, variant, checked_finite(value, pair_id, variant));
  }
  return scorer;
}

void PrecomputedScorer::insert(std::size_t pair_id, Variant variant, double value) {
  scores_[{pair_id, variant}] = checked_finite(value, pair_id, variant);
}

double PrecomputedScorer::score(std::size_t pair_id, Variant variant, const Tokens&,
                                const Tokens&) {
  auto it = scores_.find({pair_id, variant});
  if (it == scores_.end()) fail("missing score " + score_key(pair_id, variant));
  return it->second;
}

double surrogate_score(const Tokens& src, const Tokens& tgt, const TranslationTable& table_fwd,
                       const TranslationTable& table_bwd) {
  if (src.empty() || tgt.empty()) fail("surrogate_score: empty token sequence");

  const auto directional = [](const Tokens& cond, const Tokens& gen, const TranslationTable& t) {
    const double threshold = 1.0 / static_cast<double>(cond.size() + 1);
    std::size_t aligned = 0;
    for (const std::string& g : gen) {
      double best = t.null_prob(g);
      for (const std::string& c : cond) best = std::max(best, t.prob(c, g));
      if (best > threshold) ++aligned;
    }
    return static_cast<double>(aligned) / static_cast<double>(gen.size());
  };

  const double cov_f = directional(src, tgt, table_fwd);
  const double cov_b = directional(tgt, src, table_bwd);
  return 100.0 * std::sqrt(cov_f * cov_b);
}

double SurrogateScorer::score(std::size_t, Variant, const Tokens& src, const Tokens& tgt) {
  return surrogate_score(src, tgt, fwd_, bwd_);
}

// --- subprocess backend -----------------------------------------------------

struct SubprocessScorer::Impl {
  std::string command;
  int timeout_ms;
  pid_t child = -1;
  int to_child = -1;    // child stdin
  int from_child = -1;  // child stdout
  std::string read_buf;
  std::unordered_map<std::string, double> cache;

  explicit Impl(std::string cmd, int timeout) : command(std::move(cmd)), timeout_ms(timeout) {}

  ~Impl() { shutdown(); }

  void spawn() {
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) fail("scorer subprocess: pipe failed");
    child = fork();
    if (child < 0) fail("scorer subprocess: fork failed");
    if (child == 0) {
      dup2(in_pipe[0], STDIN_FILENO);
      dup2(out_pipe[1], STDOUT_FILENO);
      close(in_pipe[0]);
      close(in_pipe[1]);
      close(out_pipe[0]);
      close(out_pipe[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    to_child = in_pipe[1];
    from_child = out_pipe[0];
  }

  void shutdown() {
    if (to_child >= 0) {
      close(to_child);  // EOF terminates the child
      to_child = -1;
    }
    if (from_child >= 0) {
      close(from_child);
      from_child = -1;
    }
    if (child > 0) {
      int status = 0;
      if (waitpid(child, &status, WNOHANG) == 0) {
        // Give it a moment to exit on EOF before killing.
        for (int i = 0; i < 50 && waitpid(child, &status, WNOHANG) == 0; ++i)
          std::this_thread::sleep_for(std::chrono::milliseconds(10));
        if (waitpid(child, &status, WNOHANG) == 0) {
          kill(child, SIGKILL);
          waitpid(child, &status, 0);
        }
      }
      child = -1;
    }
  }

  void ensure_running() {
    if (child < 0) {
      signal(SIGPIPE, SIG_IGN);  // a dead child must surface as an error, not kill us
      spawn();
    }
  }

  // One line per pending request; responses may arrive in any order.
  void run_batch(const std::vector<ScoreRequest>& requests) {
    ensure_running();
    std::unordered_map<std::string, bool> wanted;
    std::string payload;
    for (const ScoreRequest& r : requests) {
      std::string key = score_key(r.pair_id, r.variant);
      if (cache.count(key) || wanted.count(key)) continue;
      json obj{{"id", key}, {"src", join(r.src)}, {"tgt", join(r.tgt)}};
      payload += obj.dump();
      payload += '\n';
      wanted.emplace(std::move(key), true);
    }
    if (wanted.empty()) return;

    // Writer thread avoids a pipe-buffer deadlock with chatty children.
    std::thread writer([this, payload = std::move(payload)] {
      std::size_t off = 0;
      while (off < payload.size()) {
        ssize_t n = write(to_child, payload.data() + off, payload.size() - off);
        if (n <= 0) break;  // reader reports the broken pipe
        off += static_cast<std::size_t>(n);
      }
    });

    std::size_t remaining = wanted.size();
    std::string error;
    while (remaining > 0) {
      std::string line;
      if (!read_line(line)) {
        error = "scorer subprocess exited before answering all requests";
        break;
      }
      json reply = json::parse(line, nullptr, false);
      if (reply.is_discarded() || !reply.contains("id") || !reply.contains("score")) {
        error = "scorer subprocess: malformed reply: " + line;
        break;
      }
      std::string id = reply["id"].get<std::string>();
      double value = reply["score"].get<double>();
      if (!std::isfinite(value)) {
        error = "scorer subprocess: non-finite score for " + id;
        break;
      }
      cache[id] = value;
      auto it = wanted.find(id);
      if (it != wanted.end() && it->second) {
        it->second = false;
        --remaining;
      }
    }
    writer.join();
    if (!error.empty()) fail(error);
  }

  bool read_line(std::string& line) {
    while (true) {
      std::size_t nl = read_buf.find('\n');
      if (nl != std::string::npos) {
        line = read_buf.substr(0, nl);
        read_buf.erase(0, nl + 1);
        return true;
      }
      pollfd pfd{from_child, POLLIN, 0};
      int r = poll(&pfd, 1, timeout_ms);
      if (r == 0) fail("scorer subprocess: timeout after " + std::to_string(timeout_ms) + " ms");
      if (r < 0) fail("scorer subprocess: poll failed");
      char buf[4096];
      ssize_t n = read(from_child, buf, sizeof(buf));
      if (n < 0) fail("scorer subprocess: read failed");
      if (n == 0) return false;  // EOF
      read_buf.append(buf, static_cast<std::size_t>(n));
    }
  }

  static std::string join(const Tokens& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) out += ' ';
      out += tokens[i];
    }
    return out;
  }
};

SubprocessScorer::SubprocessScorer(const std::string& command, int timeout_ms)
    : impl_(std::make_unique<Impl>(command, timeout_ms)) {}

SubprocessScorer::~SubprocessScorer() = default;

double SubprocessScorer::score(std::size_t pair_id, Variant variant, const Tokens& src,
                               const Tokens& tgt) {
  std::string key = score_key(pair_id, variant);
  auto it = impl_->cache.find(key);
  if (it == impl_->cache.end()) {
    impl_->run_batch({{pair_id, variant, src, tgt}});
    it = impl_->cache.find(key);
    if (it == impl_->cache.end()) fail("scorer subprocess returned no score for " + key);
  }
  return it->second;
}

void SubprocessScorer::prime(const std::vector<ScoreRequest>& requests) {
  impl_->run_batch(requests);
}

// --- deltas and conditions ---------------------------------------------------

ScoreDelta deltas(ScorerBackend& backend, const SentencePair& pair,
                  const std::optional<Tokens>& fwd_candidate,
                  const std::optional<Tokens>& bwd_candidate) {
  ScoreDelta d;
  d.score_orig = checked_finite(
      backend.score(pair.id, Variant::Original, pair.src_tokens, pair.tgt_tokens), pair.id,
      Variant::Original);
  if (fwd_candidate) {
    d.score_f = checked_finite(
        backend.score(pair.id, Variant::Forward, pair.src_tokens, *fwd_candidate), pair.id,
        Variant::Forward);
    d.d_f = *d.score_f - d.score_orig;
  }
  if (bwd_candidate) {
    d.score_b = checked_finite(
        backend.score(pair.id, Variant::Backward, *bwd_candidate, pair.tgt_tokens), pair.id,
        Variant::Backward);
    d.d_b = *d.score_b - d.score_orig;
  }
  return d;
}

ConditionKind parse_condition_kind(const std::string& name) {
  if (name == "margin") return ConditionKind::Margin;
  if (name == "ranking") return ConditionKind::Ranking;
  if (name == "thresholding") return ConditionKind::Thresholding;
  fail("unknown condition: " + name);
}

std::string to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::Margin: return "margin";
    case ConditionKind::Ranking: return "ranking";
    case ConditionKind::Thresholding: return "thresholding";
  }
  return "?";
}

Condition Condition::margin_condition(double margin) {
  return {ConditionKind::Margin, margin, 0.0};
}

Condition Condition::ranking() { return {ConditionKind::Ranking, 0.0, 0.0}; }

Condition Condition::thresholding(double margin, double threshold) {
  return {ConditionKind::Thresholding, margin, threshold};
}

bool passes(const Condition& cond, double d, double candidate_score) {
  switch (cond.kind) {
    case ConditionKind::Margin: return d > cond.margin;
    case ConditionKind::Ranking: return d > 0.0;
    case ConditionKind::Thresholding: return d > cond.margin && candidate_score > cond.threshold;
  }
  return false;
}

DeltaBin delta_bin(double d, double boundary) {
  if (d < 0.0) return DeltaBin::Negative;
  if (d <= boundary) return DeltaBin::SmallPositive;
  return DeltaBin::LargeEquivalence;
}

std::string to_string(DeltaBin bin) {
  switch (bin) {
    case DeltaBin::Negative: return "d<0";
    case DeltaBin::SmallPositive: return "0<=d<=5";
    case DeltaBin::LargeEquivalence: return "d>5";
  }
  return "?";
}

}  // namespace forge
