#include "tsebench/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tsebench/error.hpp"
#include "tsebench/unicode.hpp"

namespace tsebench::embeddings {

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("embedding dimension must be positive");
}

bool EmbeddingStore::insert(std::string word, std::span<const float> vector) {
  if (vector.size() != dim_) throw std::invalid_argument("vector has wrong dimension");
  if (word.empty()) throw std::invalid_argument("empty word");
  if (auto it = index_.find(word); it != index_.end()) {
    std::copy(vector.begin(), vector.end(), data_.begin() + it->second * dim_);
    ++duplicates_;
    return false;
  }
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

std::optional<std::span<const float>> EmbeddingStore::find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return std::span<const float>(data_.data() + it->second * dim_, dim_);
}

namespace {

template <typename T>
bool parse_number(std::string_view text, T& value) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

// Space-separated fields; runs of spaces and a trailing '\r' are tolerated.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\r') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

}  // namespace

EmbeddingStore parse_vec(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(source + ": missing header");
  auto header = split_fields(line);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_number(header[0], count) || !parse_number(header[1], dim) ||
      dim == 0) {
    throw ValidationError(located(source, 1, "header must be \"<count> <dim>\""));
  }

  EmbeddingStore store(dim);
  std::vector<float> vector(dim);
  std::size_t records = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (records == count) {
      throw ValidationError(located(source, line_no, "more records than the header declares"));
    }
    if (fields.size() != dim + 1) {
      throw ValidationError(located(source, line_no,
                                    "expected " + std::to_string(dim) + " values, got " +
                                        std::to_string(fields.size() - 1)));
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (!parse_number(fields[d + 1], vector[d])) {
        throw ValidationError(located(source, line_no, "bad number \"" +
                                                           std::string(fields[d + 1]) + "\""));
      }
      if (!std::isfinite(vector[d])) {
        throw ValidationError(located(source, line_no, "non-finite value"));
      }
    }
    store.insert(std::string(fields[0]), vector);
    ++records;
  }
  if (records != count) {
    throw ValidationError(source + ": header declares " + std::to_string(count) +
                          " records, found " + std::to_string(records));
  }
  return store;
}

EmbeddingStore load_vec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("embeddings not found: " + path.string());
  return parse_vec(in, path.string());
}

void write_vec(std::ostream& out, const EmbeddingStore& store) {
  out << store.size() << ' ' << store.dim() << '\n';
  char buf[64];
  for (const std::string& word : store.words()) {
    out << word;
    const std::span<const float> vector = *store.find(word);
    for (float v : vector) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

std::vector<std::string> tokenize(std::string_view phrase) {
  std::vector<std::string> tokens;
  for (const std::string& piece : unicode::split_whitespace(unicode::nfc(phrase))) {
    std::string token = unicode::to_lower(unicode::strip_punctuation(piece));
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  return tokens;
}

std::optional<PhraseVector> phrase_embedding(const EmbeddingStore& store,
                                             std::string_view phrase) {
  PhraseVector result;
  result.vector.assign(store.dim(), 0.0);
  for (const std::string& token : tokenize(phrase)) {
    auto vector = store.find(token);
    if (!vector) continue;
    for (std::size_t d = 0; d < store.dim(); ++d) result.vector[d] += (*vector)[d];
    ++result.covered_tokens;
  }
  if (result.covered_tokens == 0) return std::nullopt;
  const double n = static_cast<double>(result.covered_tokens);
  for (double& v : result.vector) v /= n;
  return result;
}

double norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("cosine: dimension mismatch");
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("cosine: zero-norm vector");
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

}  // namespace tsebench::embeddings
