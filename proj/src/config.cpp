#include "tsebench/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "tsebench/error.hpp"
#include "tsebench/kvfile.hpp"
#include "tsebench/provenance.hpp"

namespace tsebench {

namespace {

constexpr const char* kKeys[] = {
    "samples",   "pool_full", "pool_llm", "pool_manual",         "embeddings",
    "tau",       "k",         "seed",     "fold_agg",            "output_dir",
    "unrelated_fraction",     "unrelated_tolerance",  "strict_unrelated", "threads"};

template <typename T>
T parse_value(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ValidationError("config: invalid value \"" + value + "\" for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ValidationError("config: invalid boolean \"" + value + "\" for " + key);
}

}  // namespace

std::string_view to_string(FoldAgg agg) { return agg == FoldAgg::kMean ? "mean" : "pool"; }

std::optional<FoldAgg> parse_fold_agg(std::string_view value) {
  if (value == "pool") return FoldAgg::kPool;
  if (value == "mean") return FoldAgg::kMean;
  return std::nullopt;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "samples") c.samples_path = value;
  else if (key == "pool_full") c.pool_full_path = value;
  else if (key == "pool_llm") c.pool_llm_path = value;
  else if (key == "pool_manual") c.pool_manual_path = value;
  else if (key == "embeddings") c.embeddings_path = value;
  else if (key == "tau") c.tau = parse_value<double>(key, value);
  else if (key == "k") c.k = parse_value<int>(key, value);
  else if (key == "seed") c.seed = parse_value<std::uint64_t>(key, value);
  else if (key == "fold_agg") {
    auto agg = parse_fold_agg(value);
    if (!agg) throw ValidationError("config: fold_agg must be mean or pool");
    c.fold_agg = *agg;
  } else if (key == "output_dir") c.output_dir = value;
  else if (key == "unrelated_fraction") c.unrelated_fraction = parse_value<double>(key, value);
  else if (key == "unrelated_tolerance") c.unrelated_tolerance = parse_value<double>(key, value);
  else if (key == "strict_unrelated") c.strict_unrelated = parse_bool(key, value);
  else if (key == "threads") c.threads = parse_value<unsigned>(key, value);
  else throw ValidationError("config: unknown key \"" + key + "\"");
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* value = std::getenv(name.c_str());
    if (value == nullptr) return std::nullopt;
    return std::string(value);
  };
}

RunConfig load_config(const std::optional<std::filesystem::path>& path, const EnvLookup& env) {
  RunConfig config;
  if (path) {
    for (const KvEntry& entry : read_kv_file(*path)) {
      try {
        apply_setting(config, entry.key, entry.value);
      } catch (const ValidationError& e) {
        throw ValidationError(located(path->string(), entry.line, e.what()));
      }
    }
  }
  for (const char* key : kKeys) {
    std::string name(kEnvPrefix);
    for (const char* p = key; *p; ++p) name.push_back(static_cast<char>(std::toupper(*p)));
    if (auto value = env(name)) apply_setting(config, key, *value);
  }
  return config;
}

void validate_ranges(const RunConfig& config) {
  if (!(config.tau > 0.0 && config.tau < 1.0)) throw ValidationError("tau must lie in (0, 1)");
  if (config.k < 2) throw ValidationError("k must be at least 2");
  if (!(config.unrelated_fraction > 0.0 && config.unrelated_fraction < 1.0)) {
    throw ValidationError("unrelated_fraction must lie in (0, 1)");
  }
  if (config.unrelated_tolerance < 0.0) throw ValidationError("unrelated_tolerance must be >= 0");
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out.precision(17);
  out << "samples=" << samples_path.generic_string() << '\n'
      << "pool_full=" << pool_full_path.generic_string() << '\n'
      << "pool_llm=" << pool_llm_path.generic_string() << '\n'
      << "pool_manual=" << pool_manual_path.generic_string() << '\n'
      << "embeddings=" << embeddings_path.generic_string() << '\n'
      << "tau=" << tau << '\n'
      << "k=" << k << '\n'
      << "seed=" << seed << '\n'
      << "fold_agg=" << to_string(fold_agg) << '\n'
      << "unrelated_fraction=" << unrelated_fraction << '\n'
      << "unrelated_tolerance=" << unrelated_tolerance << '\n'
      << "strict_unrelated=" << (strict_unrelated ? "true" : "false") << '\n';
  return out.str();
}

// output_dir and threads do not change results and stay out of the hash.
std::string RunConfig::hash() const { return "sha256:" + sha256_hex(canonical()); }

}  // namespace tsebench
