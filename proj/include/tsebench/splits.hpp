#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tsebench/corpus.hpp"

namespace tsebench::splits {

struct FoldAssignment {
  int k = 5;
  std::uint64_t seed = 0;
  std::map<std::string, int> assignment;  // sample id -> fold in [0, k)

  bool operator==(const FoldAssignment&) const = default;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// Hash of "lang\x1Ftarget\x1Fstance".
std::uint64_t stratum_hash(const corpus::StratumKey& key);

// Within each (lang, target, stance) stratum the samples, in input order,
// are Fisher-Yates shuffled with mt19937_64 seeded by seed ^ stratum_hash
// and dealt round-robin starting at fold stratum_hash % k. Per-stratum fold
// counts differ by at most one. Throws std::invalid_argument for k < 2.
FoldAssignment stratified_kfold(std::span<const Sample> samples, int k, std::uint64_t seed);

nlohmann::ordered_json to_json(const FoldAssignment& folds);
FoldAssignment from_json(const nlohmann::json& json);
FoldAssignment load_folds(const std::filesystem::path& path);

}  // namespace tsebench::splits
