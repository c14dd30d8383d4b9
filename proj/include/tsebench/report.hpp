#pragma once

#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "tsebench/metrics.hpp"

namespace tsebench::metrics {

struct ScoreReport {
  TargetReport target;
  StanceReport stance;
  TseReport tse;
  std::optional<LangMatchReport> lang_match;
};

// Per-fold reports combined by averaging every score over the folds that
// report it; counts are summed.
ScoreReport mean_over_folds(std::span<const ScoreReport> folds);

nlohmann::ordered_json to_json(const TargetReport& report);
nlohmann::ordered_json to_json(const StanceReport& report);
nlohmann::ordered_json to_json(const TseReport& report);
nlohmann::ordered_json to_json(const LangMatchReport& report);
nlohmann::ordered_json to_json(const ScoreReport& report);

// Plain-text tables, scores x100 with two decimals.
std::string render_target_table(const TargetReport& report);
std::string render_tse_table(const TseReport& report);
std::string render_lang_match_table(const LangMatchReport& report);
std::string render_stance_table(const StanceReport& report);
std::string render_tables(const ScoreReport& report);

std::string percent(double value);

}  // namespace tsebench::metrics
