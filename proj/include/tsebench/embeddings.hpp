#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tsebench::embeddings {

// Word -> fixed-width vector table. Immutable once loaded; safe to share
// across threads for reading.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }

  // Inserts or overwrites. Returns false when `word` already existed.
  bool insert(std::string word, std::span<const float> vector);

  // nullopt for out-of-vocabulary words.
  std::optional<std::span<const float>> find(std::string_view word) const;

  // Words in first-insertion order.
  const std::vector<std::string>& words() const { return words_; }

  // Number of records in the source file that repeated an earlier word.
  std::size_t duplicate_count() const { return duplicates_; }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
  std::size_t duplicates_ = 0;
};

// Text .vec: header "N D", then N records "word v1 ... vD". Number parsing
// is locale-independent. Duplicate words: last record wins.
EmbeddingStore load_vec(const std::filesystem::path& path);
EmbeddingStore parse_vec(std::istream& in, const std::string& source);

// Same format, values printed with 9 significant digits.
void write_vec(std::ostream& out, const EmbeddingStore& store);

struct PhraseVector {
  std::vector<double> vector;
  std::size_t covered_tokens = 0;
};

// Whitespace split, per-token punctuation strip, lowercase.
std::vector<std::string> tokenize(std::string_view phrase);

// Unweighted mean of the in-vocabulary token vectors; nullopt when no token
// is in the vocabulary.
std::optional<PhraseVector> phrase_embedding(const EmbeddingStore& store,
                                             std::string_view phrase);

double norm(std::span<const double> v);

// Cosine similarity clamped to [-1, 1]. Throws std::invalid_argument on a
// dimension mismatch or a zero-norm input.
double cosine(std::span<const double> u, std::span<const double> v);

}  // namespace tsebench::embeddings
