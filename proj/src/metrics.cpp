#include "tsebench/metrics.hpp"

#include <set>
#include <stdexcept>

#include "tsebench/error.hpp"
#include "tsebench/jsonl.hpp"

namespace tsebench::metrics {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

double ConfusionCounts::precision() const { return ratio(tp, tp + fp); }
double ConfusionCounts::recall() const { return ratio(tp, tp + fn); }
double ConfusionCounts::f1() const { return harmonic(precision(), recall()); }

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

Prf Prf::of(const ConfusionCounts& counts) {
  return Prf{counts.precision(), counts.recall(), counts.f1()};
}

TargetReport target_f1(std::span<const TargetLabel> gt, std::span<const TargetLabel> pred,
                       bool exclude_unrelated_class) {
  if (gt.size() != pred.size()) {
    throw std::invalid_argument("target_f1: gt and pred differ in length");
  }
  TargetReport report;
  auto counted = [&](const TargetLabel& label) {
    return !(exclude_unrelated_class && label.is_unrelated());
  };
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i] == pred[i]) {
      if (counted(gt[i])) ++report.per_class_counts[gt[i]].tp;
      continue;
    }
    if (counted(pred[i])) ++report.per_class_counts[pred[i]].fp;
    if (counted(gt[i])) ++report.per_class_counts[gt[i]].fn;
  }
  ConfusionCounts pooled;
  std::vector<double> f1s;
  for (const auto& [label, counts] : report.per_class_counts) {
    pooled += counts;
    report.per_class_f1[label] = counts.f1();
    f1s.push_back(counts.f1());
  }
  report.f_mic = pooled.f1();
  report.f_mac = mean(f1s);
  return report;
}

std::string to_string(const PairKey& key) {
  return std::string(tsebench::to_string(key.lang)) + "-" + key.target.str();
}

StanceReport stance_favg(std::span<const Sample> samples, const IdMap<Stance>& pred_stance) {
  // Per pair: one-vs-rest counts for against and favor.
  std::map<PairKey, std::pair<ConfusionCounts, ConfusionCounts>> pairs;
  std::map<PairKey, std::size_t> support;
  for (const Sample& s : samples) {
    if (s.target.is_unrelated()) continue;
    auto it = pred_stance.find(s.id);
    if (it == pred_stance.end()) {
      throw ContractError("no stance prediction for sample \"" + s.id + "\"");
    }
    const PairKey key{s.lang, s.target};
    auto& [against, favor] = pairs[key];
    ++support[key];
    const Stance predicted = it->second;
    for (auto [cls, counts] : {std::pair{Stance::kAgainst, &against},
                               std::pair{Stance::kFavor, &favor}}) {
      const bool is_gt = s.stance == cls;
      const bool is_pred = predicted == cls;
      if (is_gt && is_pred) ++counts->tp;
      else if (is_pred) ++counts->fp;
      else if (is_gt) ++counts->fn;
    }
  }
  StanceReport report;
  std::vector<double> favgs;
  for (const auto& [key, counts] : pairs) {
    StanceScores scores;
    scores.f_against = counts.first.f1();
    scores.f_favor = counts.second.f1();
    scores.f_avg = (scores.f_against + scores.f_favor) / 2.0;
    scores.support = support[key];
    report.per_pair.emplace(key, scores);
    favgs.push_back(scores.f_avg);
  }
  report.f_mac_stance = mean(favgs);
  return report;
}

TseReport tse_scores(std::span<const Sample> samples, const IdMap<TargetLabel>& mapped,
                     const IdMap<Stance>& pred_stance, bool ceiling) {
  TseReport report;
  report.ceiling = ceiling;
  for (const Sample& s : samples) {
    auto m = mapped.find(s.id);
    if (m == mapped.end()) throw ContractError("no mapped target for sample \"" + s.id + "\"");
    ConfusionCounts& counts = report.per_lang_counts[s.lang];
    const bool positive = !s.target.is_unrelated();
    const TargetLabel& predicted = ceiling ? s.target : m->second;

    if (!positive) {
      if (!predicted.is_unrelated()) ++counts.fp;
      continue;
    }
    auto st = pred_stance.find(s.id);
    if (st == pred_stance.end()) {
      throw ContractError("no stance prediction for sample \"" + s.id + "\"");
    }
    if (predicted.is_unrelated()) {
      ++counts.fn;
    } else if (predicted == s.target && st->second == s.stance) {
      ++counts.tp;
    } else {
      ++counts.fp;
      ++counts.fn;
    }
  }
  std::vector<double> f1s;
  for (const auto& [lang, counts] : report.per_lang_counts) {
    report.per_lang[lang] = Prf::of(counts);
    report.global_counts += counts;
    f1s.push_back(counts.f1());
  }
  report.global = Prf::of(report.global_counts);
  report.f_mac_tse = mean(f1s);
  return report;
}

LangMatchReport lang_match_rate(std::span<const Sample> samples,
                                std::span<const mapping::GeneratedPrediction> predictions,
                                const langid::LanguageDetector& detector) {
  std::unordered_map<std::string_view, Lang> lang_of;
  for (const Sample& s : samples) lang_of.emplace(s.id, s.lang);

  LangMatchReport report;
  for (const mapping::GeneratedPrediction& p : predictions) {
    auto it = lang_of.find(p.sample_id);
    if (it == lang_of.end()) {
      throw ContractError("prediction for unknown sample \"" + p.sample_id + "\"");
    }
    if (!p.candidates_raw) {
      throw ContractError("prediction \"" + p.sample_id + "\" has no candidates_raw");
    }
    const Lang lang = it->second;
    const std::string_view expected = tsebench::to_string(lang);
    for (std::size_t i = 0; i < p.candidates_raw->size(); ++i) {
      std::string detected;
      if (p.detected_lang) {
        detected = (*p.detected_lang)[i];
      } else {
        const std::string& text = (*p.candidates_raw)[i];
        // A blank candidate has no language and can never match.
        if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
          detected = detector.detect(text);
        }
      }
      ++report.candidates[lang];
      if (detected == expected) ++report.matched[lang];
    }
  }
  std::vector<double> rates;
  for (const auto& [lang, n] : report.candidates) {
    report.matched.try_emplace(lang, 0);
    const double rate = ratio(report.matched[lang], n);
    report.per_lang_rate[lang] = rate;
    rates.push_back(rate);
  }
  report.avg_lang = mean(rates);
  return report;
}

IdMap<Stance> parse_stances(std::istream& in, const std::string& source) {
  IdMap<Stance> stances;
  jsonl::for_each_object<ContractError>(in, source, [&](const nlohmann::json& object,
                                                         std::size_t line) {
    auto id = object.find("id");
    auto stance = object.find("stance");
    if (id == object.end() || !id->is_string() || id->get<std::string>().empty()) {
      throw ContractError(located(source, line, "missing or invalid \"id\""));
    }
    if (stance == object.end() || !stance->is_string()) {
      throw ContractError(located(source, line, "missing or invalid \"stance\""));
    }
    auto parsed = parse_stance(stance->get<std::string>());
    if (!parsed) {
      throw ContractError(located(source, line, "unknown stance \"" + stance->get<std::string>() + "\""));
    }
    if (!stances.emplace(id->get<std::string>(), *parsed).second) {
      throw ContractError(located(source, line, "duplicate id \"" + id->get<std::string>() + "\""));
    }
  });
  return stances;
}

IdMap<Stance> load_stances(const std::filesystem::path& path) {
  auto in = jsonl::open_input(path);
  return parse_stances(in, path.string());
}

IdMap<TargetLabel> mapped_by_id(std::span<const mapping::MappedTarget> mapped) {
  IdMap<TargetLabel> out;
  for (const auto& m : mapped) out.emplace(m.sample_id, m.mapped);
  return out;
}

}  // namespace tsebench::metrics
