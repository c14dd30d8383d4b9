#include "tsebench/splits.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include "tsebench/error.hpp"

namespace tsebench::splits {

namespace {

// Unbiased draw from [0, bound) by rejection; portable unlike
// std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t stratum_hash(const corpus::StratumKey& key) {
  std::string bytes(to_string(key.lang));
  bytes += '\x1f';
  bytes += key.target.str();
  bytes += '\x1f';
  bytes += to_string(key.stance);
  return fnv1a64(bytes);
}

FoldAssignment stratified_kfold(std::span<const Sample> samples, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  std::map<corpus::StratumKey, std::vector<const std::string*>> strata;
  for (const Sample& s : samples) strata[corpus::stratum_of(s)].push_back(&s.id);

  FoldAssignment folds;
  folds.k = k;
  folds.seed = seed;
  for (auto& [key, ids] : strata) {
    const std::uint64_t h = stratum_hash(key);
    std::mt19937_64 rng(seed ^ h);
    for (std::size_t i = ids.size(); i > 1; --i) {
      std::swap(ids[i - 1], ids[bounded(rng, i)]);
    }
    const std::uint64_t start = h % static_cast<std::uint64_t>(k);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int fold = static_cast<int>((start + i) % static_cast<std::uint64_t>(k));
      if (!folds.assignment.emplace(*ids[i], fold).second) {
        throw std::invalid_argument("duplicate sample id \"" + *ids[i] + "\"");
      }
    }
  }
  return folds;
}

nlohmann::ordered_json to_json(const FoldAssignment& folds) {
  nlohmann::ordered_json json;
  json["k"] = folds.k;
  json["seed"] = folds.seed;
  nlohmann::ordered_json assignment = nlohmann::ordered_json::object();
  for (const auto& [id, fold] : folds.assignment) assignment[id] = fold;
  json["assignment"] = std::move(assignment);
  return json;
}

FoldAssignment from_json(const nlohmann::json& json) {
  FoldAssignment folds;
  try {
    folds.k = json.at("k").get<int>();
    folds.seed = json.at("seed").get<std::uint64_t>();
    if (folds.k < 2) throw ValidationError("folds: k must be at least 2");
    for (const auto& [id, fold] : json.at("assignment").items()) {
      const int f = fold.get<int>();
      if (f < 0 || f >= folds.k) throw ValidationError("folds: fold index out of range for \"" + id + "\"");
      folds.assignment.emplace(id, f);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed folds file: ") + e.what());
  }
  return folds;
}

FoldAssignment load_folds(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace tsebench::splits
