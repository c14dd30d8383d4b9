// tsebench: validate -> split -> map -> score pipeline for multilingual
// target-stance extraction benchmarks.
//
// Sample usage:
//   tsebench --config run.cfg validate
//   tsebench --config run.cfg split
//   tsebench --config run.cfg map --predictions preds.jsonl --pool llm
//   tsebench --config run.cfg score --mapped out/mapped_llm.jsonl \
//       --stances stances.jsonl --predictions preds.jsonl --folds out/folds.json

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tsebench/commands.hpp"
#include "tsebench/config.hpp"
#include "tsebench/error.hpp"
#include "tsebench/provenance.hpp"

namespace fs = std::filesystem;
using namespace tsebench;

int main(int argc, char** argv) {
  CLI::App app{"Multilingual target-stance extraction benchmark harness"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  app.add_option("-c,--config", config_path, "flat key/value config file");

  // Command-line overrides, applied after the config file and environment.
  std::map<std::string, std::string> overrides;
  auto override_opt = [&](const std::string& flag, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, help);
  };
  override_opt("--samples", "samples", "benchmark samples.jsonl");
  override_opt("--pool-full", "pool_full", "full target pool file");
  override_opt("--pool-llm", "pool_llm", "LLM target pool file");
  override_opt("--pool-manual", "pool_manual", "manual target pool file");
  override_opt("--embeddings", "embeddings", "text .vec embeddings");
  override_opt("--tau", "tau", "cosine threshold (default 0.35)");
  override_opt("-k,--folds-k", "k", "number of folds (default 5)");
  override_opt("--seed", "seed", "split seed");
  override_opt("--fold-agg", "fold_agg", "mean|pool");
  override_opt("-o,--output-dir", "output_dir", "directory for outputs");
  override_opt("--threads", "threads", "mapping threads");

  auto* validate = app.add_subcommand("validate", "check samples and pools, print corpus stats");
  bool strict = false;
  validate->add_flag("--strict", strict, "fail when the Unrelated share is out of range");

  app.add_subcommand("split", "write stratified folds.json");

  auto* map = app.add_subcommand("map", "map generated targets onto a target pool");
  commands::MapOptions map_options;
  std::string pool_kind = "full";
  std::optional<std::string> map_out;
  map->add_option("--predictions", map_options.predictions_path, "predictions.jsonl")->required();
  map->add_option("--pool", pool_kind, "full|llm|manual")
      ->check(CLI::IsMember({"full", "llm", "manual"}));
  map->add_option("--out", map_out, "output path (default <output-dir>/mapped_<pool>.jsonl)");

  auto* score = app.add_subcommand("score", "compute target, stance, TSE and language scores");
  commands::ScoreOptions score_options;
  std::optional<std::string> score_predictions, score_profiles, score_folds;
  score->add_option("--mapped", score_options.mapped_path, "mapped.jsonl")->required();
  score->add_option("--stances", score_options.stances_path, "stances.jsonl")->required();
  score->add_flag("--ceiling", score_options.ceiling, "score with groundtruth targets");
  score->add_flag("--exclude-unrelated-class", score_options.exclude_unrelated_class,
                  "drop the Unrelated class from target F1");
  score->add_option("--predictions", score_predictions, "predictions.jsonl for language match");
  score->add_option("--profiles", score_profiles, "language profiles JSON");
  score->add_option("--folds", score_folds, "folds.json for per-fold scoring");
  score->add_option("--name", score_options.report_name, "report file stem (default report)");

  auto* langcheck = app.add_subcommand("langcheck", "language match rate of raw candidates");
  commands::LangcheckOptions lang_options;
  std::optional<std::string> lang_profiles;
  langcheck->add_option("--predictions", lang_options.predictions_path, "predictions.jsonl")
      ->required();
  langcheck->add_option("--profiles", lang_profiles, "language profiles JSON");

  auto* train = app.add_subcommand("train-langid", "train trigram profiles from the samples");
  std::string profiles_out = "profiles.json";
  train->add_option("--out", profiles_out, "output profiles JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors count as validation failures; --help and --version exit 0.
    return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::kValidation);
  }

  RunConfig config;
  try {
    config = load_config(config_path ? std::optional<fs::path>(*config_path) : std::nullopt,
                         process_env());
    for (const auto& [key, value] : overrides) apply_setting(config, key, value);
    if (strict) config.strict_unrelated = true;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  }

  auto opt_path = [](const std::optional<std::string>& s) {
    return s ? std::optional<fs::path>(*s) : std::nullopt;
  };

  if (*validate) return commands::cmd_validate(config, std::cout, std::cerr);
  if (app.got_subcommand("split")) return commands::cmd_split(config, std::cout, std::cerr);
  if (*map) {
    map_options.pool_kind = *corpus::parse_pool_kind(pool_kind);
    map_options.output_path = opt_path(map_out);
    return commands::cmd_map(config, map_options, std::cout, std::cerr);
  }
  if (*score) {
    score_options.predictions_path = opt_path(score_predictions);
    score_options.profiles_path = opt_path(score_profiles);
    score_options.folds_path = opt_path(score_folds);
    return commands::cmd_score(config, score_options, std::cout, std::cerr);
  }
  if (*langcheck) {
    lang_options.profiles_path = opt_path(lang_profiles);
    return commands::cmd_langcheck(config, lang_options, std::cout, std::cerr);
  }
  if (*train) return commands::cmd_train_langid(config, profiles_out, std::cout, std::cerr);
  return 0;
}
