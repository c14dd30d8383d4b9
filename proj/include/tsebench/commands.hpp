#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "tsebench/config.hpp"
#include "tsebench/corpus.hpp"

namespace tsebench::commands {

// Every command returns a process exit code (see ExitCode) and reports
// errors on `err` instead of throwing.

// Loads and checks samples (and any configured pools); writes stats.json
// and stats.txt to the output dir and prints the table. The Unrelated share
// check warns by default and fails with config.strict_unrelated.
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes folds.json.
int cmd_split(const RunConfig& config, std::ostream& out, std::ostream& err);

struct MapOptions {
  std::filesystem::path predictions_path;
  corpus::PoolKind pool_kind = corpus::PoolKind::kFull;
  std::optional<std::filesystem::path> output_path;  // default <out>/mapped_<kind>.jsonl
};

int cmd_map(const RunConfig& config, const MapOptions& options, std::ostream& out,
            std::ostream& err);

struct ScoreOptions {
  std::filesystem::path mapped_path;
  std::filesystem::path stances_path;
  bool ceiling = false;
  bool exclude_unrelated_class = false;
  // Adds the language-match report.
  std::optional<std::filesystem::path> predictions_path;
  std::optional<std::filesystem::path> profiles_path;
  // Per-fold scoring aggregated per config.fold_agg.
  std::optional<std::filesystem::path> folds_path;
  std::string report_name = "report";
};

// Writes <report_name>.json and <report_name>.txt.
int cmd_score(const RunConfig& config, const ScoreOptions& options, std::ostream& out,
              std::ostream& err);

struct LangcheckOptions {
  std::filesystem::path predictions_path;
  // Trained from the benchmark texts when absent.
  std::optional<std::filesystem::path> profiles_path;
};

int cmd_langcheck(const RunConfig& config, const LangcheckOptions& options, std::ostream& out,
                  std::ostream& err);

// Trains one trigram profile per benchmark language and saves them.
int cmd_train_langid(const RunConfig& config, const std::filesystem::path& output_path,
                     std::ostream& out, std::ostream& err);

}  // namespace tsebench::commands
