#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace tsebench::langid {

// Anything that can name the language of a short text.
class LanguageDetector {
 public:
  virtual ~LanguageDetector() = default;
  virtual std::string detect(std::string_view text) const = 0;
};

inline constexpr char32_t kBoundary = U'_';

// Lowercased character trigrams; every whitespace-separated word is padded
// with one boundary marker on each side ("ab" -> "_ab", "ab_").
std::vector<std::string> trigrams(std::string_view text);

struct LangProfile {
  std::string lang;
  std::map<std::string, double> ngram_freq;  // sums to 1
};

// Throws std::invalid_argument when the texts yield no trigram at all.
LangProfile train_profile(std::span<const std::string> texts, std::string lang);

// Built-in detector: texts that are at least half CJK ideographs go to "zh"
// when a zh profile exists; otherwise the profile with the highest cosine
// similarity between trigram frequency vectors wins, ties to the smaller
// code.
class TrigramDetector : public LanguageDetector {
 public:
  // Throws std::invalid_argument on an empty profile list.
  explicit TrigramDetector(std::vector<LangProfile> profiles);

  // Throws std::invalid_argument for text without any non-space character.
  std::string detect(std::string_view text) const override;

  const std::vector<LangProfile>& profiles() const { return profiles_; }

 private:
  std::vector<LangProfile> profiles_;  // sorted by code
  std::vector<double> norms_;
  bool has_zh_ = false;
};

std::string detect(std::span<const LangProfile> profiles, std::string_view text);

nlohmann::ordered_json profiles_to_json(std::span<const LangProfile> profiles);
std::vector<LangProfile> profiles_from_json(const nlohmann::json& json);
void save_profiles(const std::filesystem::path& path, std::span<const LangProfile> profiles);
std::vector<LangProfile> load_profiles(const std::filesystem::path& path);

}  // namespace tsebench::langid
