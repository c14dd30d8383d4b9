#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsebench/types.hpp"

namespace tsebench::corpus {

// Reads the benchmark JSONL (keys id/lang/text/target/stance). Every error
// names the offending line.
std::vector<Sample> load_samples(const std::filesystem::path& path);
std::vector<Sample> parse_samples(std::istream& in, const std::string& source);

void write_samples(std::ostream& out, std::span<const Sample> samples);

// (lang, target, stance): the unit of counting and of fold stratification.
struct StratumKey {
  Lang lang;
  TargetLabel target;
  Stance stance;

  auto operator<=>(const StratumKey&) const = default;
  bool operator==(const StratumKey&) const = default;
};

StratumKey stratum_of(const Sample& sample);

struct CorpusStats {
  std::map<StratumKey, std::size_t> counts;
  std::map<Lang, std::size_t> samples_per_lang;
  std::map<Lang, double> unrelated_fraction_per_lang;
  std::size_t total = 0;
};

CorpusStats corpus_stats(std::span<const Sample> samples);

inline constexpr double kDefaultUnrelatedFraction = 0.17;
inline constexpr double kDefaultUnrelatedTolerance = 0.03;

struct FractionCheck {
  Lang lang;
  double fraction = 0.0;
  bool pass = false;
};

// A language passes iff |fraction - target_fraction| <= tolerance. The
// comparison absorbs 1e-12 of rounding so that e.g. 0.20 vs 0.17 +- 0.03 is
// inside.
std::vector<FractionCheck> check_unrelated_fraction(
    const CorpusStats& stats, double target_fraction = kDefaultUnrelatedFraction,
    double tolerance = kDefaultUnrelatedTolerance);

nlohmann::ordered_json stats_to_json(const CorpusStats& stats,
                                     std::span<const FractionCheck> checks);

// Aligned text table: one block per language, Unrelated last, "--" in the
// against/favor cells of Unrelated rows.
std::string render_stats_table(const CorpusStats& stats);

enum class PoolKind { kFull, kLlm, kManual };

std::string_view to_string(PoolKind kind);
std::optional<PoolKind> parse_pool_kind(std::string_view value);

struct TargetPool {
  PoolKind kind = PoolKind::kFull;
  std::map<std::string, std::string> entries;  // label -> English verbalization
};

// Flat key/value file with a `kind` header field and one `label = "text"`
// entry per target.
TargetPool load_pool(const std::filesystem::path& path);
TargetPool parse_pool(std::istream& in, const std::string& source);

}  // namespace tsebench::corpus
