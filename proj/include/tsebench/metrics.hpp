#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsebench/langid.hpp"
#include "tsebench/mapping.hpp"
#include "tsebench/types.hpp"

namespace tsebench::metrics {

template <typename T>
using IdMap = std::unordered_map<std::string, T>;

// 0/0 ratios are 0 throughout.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
  double f1() const;

  ConfusionCounts& operator+=(const ConfusionCounts& other);
  bool operator==(const ConfusionCounts&) const = default;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static Prf of(const ConfusionCounts& counts);
};

struct TargetReport {
  std::map<TargetLabel, ConfusionCounts> per_class_counts;
  std::map<TargetLabel, double> per_class_f1;
  double f_mic = 0.0;
  double f_mac = 0.0;
};

// One-vs-rest per class over the classes present in gt or pred. With
// `exclude_unrelated_class` the Unrelated class is dropped from the rows and
// from the micro pooling.
TargetReport target_f1(std::span<const TargetLabel> gt, std::span<const TargetLabel> pred,
                       bool exclude_unrelated_class = false);

struct PairKey {
  Lang lang;
  TargetLabel target;

  auto operator<=>(const PairKey&) const = default;
  bool operator==(const PairKey&) const = default;
};

std::string to_string(const PairKey& key);  // "fr-lepen"

struct StanceScores {
  double f_against = 0.0;
  double f_favor = 0.0;
  double f_avg = 0.0;
  std::size_t support = 0;
};

struct StanceReport {
  std::map<PairKey, StanceScores> per_pair;
  double f_mac_stance = 0.0;
};

// F_avg = (F_against + F_favor) / 2 per (lang, gt target) pair; Unrelated
// samples are excluded. Throws ContractError when a non-Unrelated sample
// has no prediction.
StanceReport stance_favg(std::span<const Sample> samples, const IdMap<Stance>& pred_stance);

struct TseReport {
  bool ceiling = false;
  std::map<Lang, ConfusionCounts> per_lang_counts;
  std::map<Lang, Prf> per_lang;
  ConfusionCounts global_counts;
  Prf global;
  double f_mac_tse = 0.0;
};

// TSE confusion over positives (gt target != Unrelated) and negatives.
// With `ceiling`, positives take their gt target and negatives Unrelated
// before scoring. Every sample needs a mapped entry; every positive needs a
// stance. Missing entries raise ContractError.
TseReport tse_scores(std::span<const Sample> samples, const IdMap<TargetLabel>& mapped,
                     const IdMap<Stance>& pred_stance, bool ceiling);

struct LangMatchReport {
  std::map<Lang, std::size_t> matched;
  std::map<Lang, std::size_t> candidates;
  std::map<Lang, double> per_lang_rate;
  double avg_lang = 0.0;
};

// Rate of raw candidates whose detected language equals the document's.
// Languages without any candidate are not reported.
LangMatchReport lang_match_rate(std::span<const Sample> samples,
                                std::span<const mapping::GeneratedPrediction> predictions,
                                const langid::LanguageDetector& detector);

// stances.jsonl: {"id", "stance"}
IdMap<Stance> load_stances(const std::filesystem::path& path);
IdMap<Stance> parse_stances(std::istream& in, const std::string& source);

IdMap<TargetLabel> mapped_by_id(std::span<const mapping::MappedTarget> mapped);

}  // namespace tsebench::metrics
