#include "tsebench/langid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "tsebench/error.hpp"
#include "tsebench/unicode.hpp"

namespace tsebench::langid {

namespace {

using Counts = std::unordered_map<std::string, double>;

Counts count_trigrams(std::string_view text) {
  Counts counts;
  for (std::string& gram : trigrams(text)) counts[std::move(gram)] += 1.0;
  return counts;
}

}  // namespace

std::vector<std::string> trigrams(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string& word : unicode::split_whitespace(unicode::to_lower(text))) {
    std::u32string padded;
    padded.push_back(kBoundary);
    padded += unicode::to_u32(word);
    padded.push_back(kBoundary);
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
      out.push_back(unicode::to_utf8(std::u32string_view(padded).substr(i, 3)));
    }
  }
  return out;
}

LangProfile train_profile(std::span<const std::string> texts, std::string lang) {
  if (lang.empty()) throw std::invalid_argument("profile language code is empty");
  Counts counts;
  double total = 0.0;
  for (const std::string& text : texts) {
    for (auto& [gram, n] : count_trigrams(text)) {
      counts[gram] += n;
      total += n;
    }
  }
  if (total == 0.0) throw std::invalid_argument("no training text for language \"" + lang + "\"");
  LangProfile profile{std::move(lang), {}};
  for (const auto& [gram, n] : counts) profile.ngram_freq.emplace(gram, n / total);
  return profile;
}

TrigramDetector::TrigramDetector(std::vector<LangProfile> profiles)
    : profiles_(std::move(profiles)) {
  if (profiles_.empty()) throw std::invalid_argument("detector needs at least one profile");
  std::sort(profiles_.begin(), profiles_.end(),
            [](const LangProfile& a, const LangProfile& b) { return a.lang < b.lang; });
  for (const LangProfile& p : profiles_) {
    double sum = 0.0;
    for (const auto& [gram, f] : p.ngram_freq) sum += f * f;
    norms_.push_back(std::sqrt(sum));
    if (p.lang == "zh") has_zh_ = true;
  }
}

std::string TrigramDetector::detect(std::string_view text) const {
  std::size_t chars = 0;
  std::size_t cjk = 0;
  for (char32_t c : unicode::to_u32(text)) {
    if (unicode::is_whitespace(c)) continue;
    ++chars;
    if (unicode::is_cjk_ideograph(c)) ++cjk;
  }
  if (chars == 0) throw std::invalid_argument("cannot detect the language of empty text");
  if (has_zh_ && 2 * cjk >= chars) return "zh";

  const Counts counts = count_trigrams(text);
  double text_norm = 0.0;
  for (const auto& [gram, n] : counts) text_norm += n * n;
  text_norm = std::sqrt(text_norm);

  std::size_t best = 0;
  double best_similarity = -1.0;
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    double dot = 0.0;
    for (const auto& [gram, n] : counts) {
      auto it = profiles_[i].ngram_freq.find(gram);
      if (it != profiles_[i].ngram_freq.end()) dot += n * it->second;
    }
    const double denom = text_norm * norms_[i];
    const double similarity = denom == 0.0 ? 0.0 : dot / denom;
    if (similarity > best_similarity) {
      best_similarity = similarity;
      best = i;
    }
  }
  return profiles_[best].lang;
}

std::string detect(std::span<const LangProfile> profiles, std::string_view text) {
  return TrigramDetector({profiles.begin(), profiles.end()}).detect(text);
}

nlohmann::ordered_json profiles_to_json(std::span<const LangProfile> profiles) {
  nlohmann::ordered_json json;
  json["format"] = "tsebench-trigram-profiles";
  json["version"] = 1;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const LangProfile& p : profiles) {
    nlohmann::ordered_json freq = nlohmann::ordered_json::object();
    for (const auto& [gram, f] : p.ngram_freq) freq[gram] = f;
    list.push_back({{"lang", p.lang}, {"ngram_freq", std::move(freq)}});
  }
  json["profiles"] = std::move(list);
  return json;
}

std::vector<LangProfile> profiles_from_json(const nlohmann::json& json) {
  std::vector<LangProfile> profiles;
  try {
    for (const auto& item : json.at("profiles")) {
      LangProfile p;
      p.lang = item.at("lang").get<std::string>();
      double sum = 0.0;
      for (const auto& [gram, f] : item.at("ngram_freq").items()) {
        const double value = f.get<double>();
        if (!(value >= 0.0)) throw ValidationError("negative trigram frequency");
        p.ngram_freq.emplace(gram, value);
        sum += value;
      }
      if (p.lang.empty() || std::fabs(sum - 1.0) > 1e-9) {
        throw ValidationError("profile \"" + p.lang + "\" is not a normalized distribution");
      }
      profiles.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed profile file: ") + e.what());
  }
  return profiles;
}

void save_profiles(const std::filesystem::path& path, std::span<const LangProfile> profiles) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << profiles_to_json(profiles).dump(1) << '\n';
}

std::vector<LangProfile> load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return profiles_from_json(json);
}

}  // namespace tsebench::langid
