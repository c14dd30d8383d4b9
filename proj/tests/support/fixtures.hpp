#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tsebench/corpus.hpp"
#include "tsebench/embeddings.hpp"
#include "tsebench/mapping.hpp"
#include "tsebench/types.hpp"

namespace tsebench::testing {

// Self-deleting scratch directory.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

Sample make_sample(std::string id, Lang lang, std::string target, Stance stance,
                   std::string text = "text");

// Per-(lang, target) Against/Favor/Neutral counts of the benchmark corpus,
// Unrelated rows carrying only a Neutral count.
struct BenchmarkCountRow {
  const char* lang;
  const char* target;
  std::size_t against;
  std::size_t favor;
  std::size_t neutral;
};
const std::vector<BenchmarkCountRow>& benchmark_count_rows();

// One synthetic sample per counted document, ids "<lang>-<target>-<stance>-<n>".
std::vector<Sample> benchmark_corpus();

// Benchmark verbalizations for each pool kind.
corpus::TargetPool benchmark_pool(corpus::PoolKind kind);
std::string pool_file_text(const corpus::TargetPool& pool);

// 12-d toy vectors: one axis per benchmark target plus "sport" and "weather".
embeddings::EmbeddingStore toy_embeddings();

// 60 samples, 10 per language, 2 of them Unrelated.
std::vector<Sample> smoke_corpus();

// Stub target-generator output for the smoke corpus. `perfect` makes every
// positive's first candidate name its target and every negative's candidates
// off-topic; otherwise every third positive also gets an off-topic candidate
// first and every fourth positive only off-topic ones.
std::vector<mapping::GeneratedPrediction> stub_predictions(const std::vector<Sample>& samples,
                                                           bool perfect);

// stances.jsonl content: gt stances when `perfect`, else always "against".
std::string stub_stances(const std::vector<Sample>& samples, bool perfect);

std::string samples_jsonl(const std::vector<Sample>& samples);

struct SmokeFiles {
  std::filesystem::path samples;
  std::filesystem::path pool_full;
  std::filesystem::path pool_llm;
  std::filesystem::path pool_manual;
  std::filesystem::path embeddings;
  std::filesystem::path predictions;
  std::filesystem::path stances;
  std::filesystem::path gt_stances;
};

// Writes the smoke corpus, the three pools, toy embeddings, stub
// predictions and stances under `dir`.
SmokeFiles write_smoke_inputs(const std::filesystem::path& dir, bool perfect);

}  // namespace tsebench::testing
