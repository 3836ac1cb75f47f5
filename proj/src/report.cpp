#include "forge/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "forge/util.hpp"

namespace forge {

using json = nlohmann::json;

namespace {

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return std::move(out).str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string("-"); }

}  // namespace

json to_json(const CorpusStats& stats) {
  return json{{"complexity_src_to_tgt", stats.complexity_src_to_tgt},
              {"complexity_tgt_to_src", stats.complexity_tgt_to_src},
              {"coverage_src_to_tgt", stats.coverage_src_to_tgt},
              {"coverage_tgt_to_src", stats.coverage_tgt_to_src},
              {"src_types", stats.src_types},
              {"tgt_types", stats.tgt_types},
              {"src_tokens", stats.src_tokens},
              {"tgt_tokens", stats.tgt_tokens},
              {"pronoun_counts", stats.pronoun_counts}};
}

json to_json(const ReplacementStats& stats) {
  json bins;
  for (const auto& [bin, count] : stats.delta_histogram) bins[to_string(bin)] = count;
  return json{{"total", stats.total},
              {"replaced", stats.replaced},
              {"forward", stats.forward},
              {"backward", stats.backward},
              {"replaced_pct", stats.replaced_pct},
              {"forward_pct", stats.forward_pct},
              {"backward_pct", stats.backward_pct},
              {"delta_histogram", bins}};
}

json to_json(const LedHistogram& hist) {
  json bins = json::array();
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    double lo = static_cast<double>(i) / 10.0;
    double hi = static_cast<double>(i + 1) / 10.0;
    bins.push_back(json{{"lo", lo}, {"hi", hi}, {"count", hist.counts[i]}});
  }
  return json{{"population", hist.population}, {"bins", bins}, {"total", hist.total()}};
}

json to_json(const BliReport& report) {
  json by_bin;
  for (const auto& [bin, stats] : report.by_bin)
    by_bin[to_string(bin)] = json{{"attempted", stats.attempted},
                                  {"correct", stats.correct},
                                  {"precision", opt_json(stats.precision)}};
  return json{{"gold_sources", report.gold_sources},
              {"in_vocab", report.in_vocab},
              {"attempted", report.attempted},
              {"correct", report.correct},
              {"precision", opt_json(report.precision)},
              {"recall", opt_json(report.recall)},
              {"f1", opt_json(report.f1)},
              {"oov_rate", report.oov_rate},
              {"precision_by_bin", by_bin}};
}

std::string markdown_table(const CorpusStats& before, const CorpusStats& after) {
  std::ostringstream out;
  out << "| statistic | original | revised |\n";
  out << "|---|---|---|\n";
  const auto row = [&out](const std::string& name, const std::string& b, const std::string& a) {
    out << "| " << name << " | " << b << " | " << a << " |\n";
  };
  row("complexity src->tgt (bits)", fmt(before.complexity_src_to_tgt), fmt(after.complexity_src_to_tgt));
  row("complexity tgt->src (bits)", fmt(before.complexity_tgt_to_src), fmt(after.complexity_tgt_to_src));
  row("coverage src->tgt", fmt(before.coverage_src_to_tgt), fmt(after.coverage_src_to_tgt));
  row("coverage tgt->src", fmt(before.coverage_tgt_to_src), fmt(after.coverage_tgt_to_src));
  row("src types", std::to_string(before.src_types), std::to_string(after.src_types));
  row("tgt types", std::to_string(before.tgt_types), std::to_string(after.tgt_types));
  row("src tokens", std::to_string(before.src_tokens), std::to_string(after.src_tokens));
  row("tgt tokens", std::to_string(before.tgt_tokens), std::to_string(after.tgt_tokens));
  for (const auto& [pronoun, count] : before.pronoun_counts) {
    auto it = after.pronoun_counts.find(pronoun);
    row("# " + pronoun, std::to_string(count),
        it == after.pronoun_counts.end() ? "-" : std::to_string(it->second));
  }
  return std::move(out).str();
}

std::string markdown_table(const BliReport& report) {
  std::ostringstream out;
  out << "| precision | recall | f1 | oov rate | low | medium | high |\n";
  out << "|---|---|---|---|---|---|---|\n";
  out << "| " << fmt(report.precision) << " | " << fmt(report.recall) << " | " << fmt(report.f1)
      << " | " << fmt(report.oov_rate) << "%";
  for (const auto& [bin, stats] : report.by_bin) out << " | " << fmt(stats.precision);
  out << " |\n";
  return std::move(out).str();
}

std::string markdown_table(const ReplacementStats& stats) {
  std::ostringstream out;
  out << "| total | replaced % | forward % | backward % |\n";
  out << "|---|---|---|---|\n";
  out << "| " << stats.total << " | " << fmt(stats.replaced_pct) << " | " << fmt(stats.forward_pct)
      << " | " << fmt(stats.backward_pct) << " |\n\n";
  out << "| delta bin | candidates |\n";
  out << "|---|---|\n";
  for (const auto& [bin, count] : stats.delta_histogram)
    out << "| " << to_string(bin) << " | " << count << " |\n";
  return std::move(out).str();
}

json to_json(const RunReport& report) {
  json out{{"before", to_json(report.before)}, {"after", to_json(report.after)}};
  if (report.replacement) out["replacement"] = to_json(*report.replacement);
  if (report.led) {
    out["led_histograms"] =
        json{{"replaced", to_json(report.led->first)}, {"not_replaced", to_json(report.led->second)}};
  }
  if (report.bli_before) out["bli_before"] = to_json(*report.bli_before);
  if (report.bli_after) out["bli_after"] = to_json(*report.bli_after);
  return out;
}

std::string to_markdown(const RunReport& report) {
  std::ostringstream out;
  out << "# Corpus statistics\n\n" << markdown_table(report.before, report.after) << "\n";
  if (report.replacement) out << "# Replacements\n\n" << markdown_table(*report.replacement) << "\n";
  if (report.led) {
    out << "# Lexical difference histograms\n\n";
    out << "| bin | replaced | not replaced |\n|---|---|---|\n";
    for (std::size_t i = 0; i < 10; ++i) {
      out << "| [" << fmt(i / 10.0) << ", " << fmt((i + 1) / 10.0) << (i == 9 ? "]" : ")") << " | "
          << report.led->first.counts[i] << " | " << report.led->second.counts[i] << " |\n";
    }
    out << "\n";
  }
  if (report.bli_before) out << "# BLI (original)\n\n" << markdown_table(*report.bli_before) << "\n";
  if (report.bli_after) out << "# BLI (revised)\n\n" << markdown_table(*report.bli_after) << "\n";
  return std::move(out).str();
}

}  // namespace forge
