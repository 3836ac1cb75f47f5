#pragma once

#include <optional>
#include <string>

#include "forge/bli.hpp"
#include "forge/metrics.hpp"
#include "forge/revise.hpp"

#include <nlohmann/json_fwd.hpp>

namespace forge {

nlohmann::json to_json(const CorpusStats& stats);
nlohmann::json to_json(const ReplacementStats& stats);
nlohmann::json to_json(const LedHistogram& hist);
nlohmann::json to_json(const BliReport& report);

std::string markdown_table(const CorpusStats& before, const CorpusStats& after);
std::string markdown_table(const BliReport& report);
std::string markdown_table(const ReplacementStats& stats);

// Everything one analyze/revise run reports: corpus stats before/after plus
// the optional replacement, LeD, and BLI sections.
struct RunReport {
  CorpusStats before;
  CorpusStats after;
  std::optional<ReplacementStats> replacement;
  std::optional<std::pair<LedHistogram, LedHistogram>> led;
  std::optional<BliReport> bli_before;
  std::optional<BliReport> bli_after;
};

nlohmann::json to_json(const RunReport& report);
std::string to_markdown(const RunReport& report);

}  // namespace forge
