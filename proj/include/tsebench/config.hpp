#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace tsebench {

enum class FoldAgg { kPool, kMean };

std::string_view to_string(FoldAgg agg);
std::optional<FoldAgg> parse_fold_agg(std::string_view value);

struct RunConfig {
  std::filesystem::path samples_path;
  std::filesystem::path pool_full_path;
  std::filesystem::path pool_llm_path;
  std::filesystem::path pool_manual_path;
  std::filesystem::path embeddings_path;
  double tau = 0.35;
  int k = 5;
  std::uint64_t seed = 13;
  FoldAgg fold_agg = FoldAgg::kPool;
  std::filesystem::path output_dir = ".";
  double unrelated_fraction = 0.17;
  double unrelated_tolerance = 0.03;
  bool strict_unrelated = false;
  unsigned threads = 1;

  // Digest of the fields that influence results (not output_dir/threads).
  std::string hash() const;
  std::string canonical() const;
};

inline constexpr std::string_view kEnvPrefix = "TSEBENCH_";

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Process environment via std::getenv.
EnvLookup process_env();

// Sets one field from its config-file key (e.g. "tau", "pool_llm").
// Throws ValidationError on unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

// Defaults, then the flat key/value file (if any), then TSEBENCH_<KEY>
// environment overrides.
RunConfig load_config(const std::optional<std::filesystem::path>& path, const EnvLookup& env);

// Checks tau/k ranges; throws ValidationError.
void validate_ranges(const RunConfig& config);

}  // namespace tsebench
