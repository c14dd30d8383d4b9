#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tsebench/corpus.hpp"
#include "tsebench/embeddings.hpp"
#include "tsebench/types.hpp"

namespace tsebench::mapping {

// Cosine threshold a candidate must strictly exceed to map onto a pool
// target.
class Tau {
 public:
  static constexpr double kDefault = 0.35;

  Tau() = default;
  // Throws std::invalid_argument outside (0, 1).
  explicit Tau(double value);

  double value() const { return value_; }

 private:
  double value_ = kDefault;
};

struct GeneratedPrediction {
  std::string sample_id;
  std::vector<std::string> candidates_en;
  std::optional<std::vector<std::string>> candidates_raw;
  // Externally detected language per raw candidate; bypasses the built-in
  // detector when present.
  std::optional<std::vector<std::string>> detected_lang;
};

// chosen_candidate/best_similarity describe the best embeddable candidate
// and are present whenever one exists, including when it fell at or below
// tau (mapped is then Unrelated).
struct MappedTarget {
  std::string sample_id;
  TargetLabel mapped = TargetLabel::unrelated();
  std::optional<std::string> chosen_candidate;
  std::optional<double> best_similarity;

  bool operator==(const MappedTarget&) const = default;
};

// Drops exact duplicates (compared after NFC), keeping first occurrences in
// order. Returned strings are the original spellings.
std::vector<std::string> dedupe(std::span<const std::string> candidates);

// Pool verbalizations embedded once; mapping calls are const and
// thread-safe.
class TargetMapper {
 public:
  // Throws ValidationError when the pool is empty or a verbalization has no
  // in-vocabulary token.
  TargetMapper(const embeddings::EmbeddingStore& store, const corpus::TargetPool& pool);

  MappedTarget map(std::string_view sample_id, std::span<const std::string> candidates,
                   Tau tau) const;

 private:
  struct Entry {
    std::string label;
    std::vector<double> vector;
  };

  const embeddings::EmbeddingStore& store_;
  std::vector<Entry> entries_;  // sorted by label
};

MappedTarget map_candidates(const embeddings::EmbeddingStore& store,
                            const corpus::TargetPool& pool,
                            std::span<const std::string> candidates, Tau tau);

// One result per prediction, input order. `threads` > 1 splits the batch
// into contiguous chunks; output is identical for any thread count. Throws
// ContractError on duplicate sample ids.
std::vector<MappedTarget> map_all(const embeddings::EmbeddingStore& store,
                                  const corpus::TargetPool& pool,
                                  std::span<const GeneratedPrediction> predictions, Tau tau,
                                  unsigned threads = 1);

// predictions.jsonl: {"id", "candidates_en", "candidates_raw"?, "detected_lang"?}
std::vector<GeneratedPrediction> load_predictions(const std::filesystem::path& path);
std::vector<GeneratedPrediction> parse_predictions(std::istream& in, const std::string& source);
void write_predictions(std::ostream& out, std::span<const GeneratedPrediction> predictions);

// mapped.jsonl: {"id", "mapped", "chosen_candidate", "best_similarity"}
nlohmann::ordered_json to_json(const MappedTarget& mapped);
std::vector<MappedTarget> load_mapped(const std::filesystem::path& path);
std::vector<MappedTarget> parse_mapped(std::istream& in, const std::string& source);

}  // namespace tsebench::mapping
