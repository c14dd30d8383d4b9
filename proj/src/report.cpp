#include "tsebench/report.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace tsebench::metrics {

namespace {

template <typename Key, typename Value, typename Get>
std::map<Key, double> mean_by_key(std::span<const ScoreReport> folds, Get get) {
  std::map<Key, std::pair<double, std::size_t>> acc;
  for (const ScoreReport& fold : folds) {
    for (const auto& [key, value] : get(fold)) {
      auto& [sum, n] = acc[key];
      sum += value;
      ++n;
    }
  }
  std::map<Key, double> out;
  for (const auto& [key, sn] : acc) out[key] = sn.first / static_cast<double>(sn.second);
  return out;
}

template <typename Get>
double mean_of(std::span<const ScoreReport> folds, Get get) {
  if (folds.empty()) return 0.0;
  double sum = 0.0;
  for (const ScoreReport& fold : folds) sum += get(fold);
  return sum / static_cast<double>(folds.size());
}

nlohmann::ordered_json prf_json(const Prf& prf, const ConfusionCounts& counts) {
  return {{"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1},
          {"tp", counts.tp},           {"fp", counts.fp},       {"fn", counts.fn}};
}

// Label rows sorted with Unrelated last.
std::vector<TargetLabel> ordered_labels(const std::map<TargetLabel, double>& per_class) {
  std::vector<TargetLabel> labels;
  for (const auto& [label, f1] : per_class) {
    if (!label.is_unrelated()) labels.push_back(label);
  }
  if (per_class.contains(TargetLabel::unrelated())) labels.push_back(TargetLabel::unrelated());
  return labels;
}

std::string display(const TargetLabel& label) {
  return label.is_unrelated() ? "Unrelated" : label.str();
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void rule() { rules_.insert(rows_.size()); }

  std::string str() const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
      widths.resize(std::max(widths.size(), row.size()), 0);
      for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    std::size_t total = 0;
    for (std::size_t w : widths) total += w + 3;
    const std::string line(total > 3 ? total - 3 + 1 : 1, '-');
    std::ostringstream out;
    out << line << '\n';
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t i = 0; i < rows_[r].size(); ++i) {
        const std::string& cell = rows_[r][i];
        const std::string pad(widths[i] - cell.size(), ' ');
        if (i > 0) out << " | ";
        // First column left-aligned, numbers right-aligned.
        out << (i == 0 ? cell + pad : pad + cell);
      }
      out << '\n';
      if (r == 0 || rules_.contains(r + 1)) out << line << '\n';
    }
    if (!rules_.contains(rows_.size())) out << line << '\n';
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
  std::set<std::size_t> rules_;
};

}  // namespace

std::string percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value * 100.0);
  return buf;
}

ScoreReport mean_over_folds(std::span<const ScoreReport> folds) {
  ScoreReport out;
  if (folds.empty()) return out;

  out.target.per_class_f1 = mean_by_key<TargetLabel, double>(
      folds, [](const ScoreReport& r) -> const auto& { return r.target.per_class_f1; });
  for (const ScoreReport& f : folds) {
    for (const auto& [label, counts] : f.target.per_class_counts) {
      out.target.per_class_counts[label] += counts;
    }
  }
  out.target.f_mic = mean_of(folds, [](const ScoreReport& r) { return r.target.f_mic; });
  out.target.f_mac = mean_of(folds, [](const ScoreReport& r) { return r.target.f_mac; });

  std::map<PairKey, std::vector<StanceScores>> pairs;
  for (const ScoreReport& f : folds) {
    for (const auto& [key, scores] : f.stance.per_pair) pairs[key].push_back(scores);
  }
  for (const auto& [key, list] : pairs) {
    StanceScores avg;
    for (const StanceScores& s : list) {
      avg.f_against += s.f_against;
      avg.f_favor += s.f_favor;
      avg.f_avg += s.f_avg;
      avg.support += s.support;
    }
    const double n = static_cast<double>(list.size());
    avg.f_against /= n;
    avg.f_favor /= n;
    avg.f_avg /= n;
    out.stance.per_pair[key] = avg;
  }
  out.stance.f_mac_stance =
      mean_of(folds, [](const ScoreReport& r) { return r.stance.f_mac_stance; });

  out.tse.ceiling = folds.front().tse.ceiling;
  std::map<Lang, std::vector<Prf>> langs;
  for (const ScoreReport& f : folds) {
    for (const auto& [lang, prf] : f.tse.per_lang) langs[lang].push_back(prf);
    for (const auto& [lang, counts] : f.tse.per_lang_counts) out.tse.per_lang_counts[lang] += counts;
    out.tse.global_counts += f.tse.global_counts;
  }
  for (const auto& [lang, list] : langs) {
    Prf avg;
    for (const Prf& p : list) {
      avg.precision += p.precision;
      avg.recall += p.recall;
      avg.f1 += p.f1;
    }
    const double n = static_cast<double>(list.size());
    out.tse.per_lang[lang] = Prf{avg.precision / n, avg.recall / n, avg.f1 / n};
  }
  out.tse.global = Prf{mean_of(folds, [](const ScoreReport& r) { return r.tse.global.precision; }),
                       mean_of(folds, [](const ScoreReport& r) { return r.tse.global.recall; }),
                       mean_of(folds, [](const ScoreReport& r) { return r.tse.global.f1; })};
  out.tse.f_mac_tse = mean_of(folds, [](const ScoreReport& r) { return r.tse.f_mac_tse; });

  if (folds.front().lang_match) {
    LangMatchReport lm;
    std::vector<ScoreReport> with;
    for (const ScoreReport& f : folds) {
      if (!f.lang_match) continue;
      with.push_back(f);
      for (const auto& [lang, n] : f.lang_match->candidates) lm.candidates[lang] += n;
      for (const auto& [lang, n] : f.lang_match->matched) lm.matched[lang] += n;
    }
    lm.per_lang_rate = mean_by_key<Lang, double>(
        std::span<const ScoreReport>(with),
        [](const ScoreReport& r) -> const auto& { return r.lang_match->per_lang_rate; });
    lm.avg_lang = mean_of(std::span<const ScoreReport>(with),
                          [](const ScoreReport& r) { return r.lang_match->avg_lang; });
    out.lang_match = std::move(lm);
  }
  return out;
}

nlohmann::ordered_json to_json(const TargetReport& report) {
  nlohmann::ordered_json json;
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const TargetLabel& label : ordered_labels(report.per_class_f1)) {
    nlohmann::ordered_json row = {{"f1", report.per_class_f1.at(label)}};
    if (auto it = report.per_class_counts.find(label); it != report.per_class_counts.end()) {
      row["tp"] = it->second.tp;
      row["fp"] = it->second.fp;
      row["fn"] = it->second.fn;
    }
    classes[label.str()] = std::move(row);
  }
  json["per_class"] = std::move(classes);
  json["f_mic"] = report.f_mic;
  json["f_mac"] = report.f_mac;
  return json;
}

nlohmann::ordered_json to_json(const StanceReport& report) {
  nlohmann::ordered_json json;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::object();
  for (const auto& [key, s] : report.per_pair) {
    pairs[to_string(key)] = {{"lang", tsebench::to_string(key.lang)},
                             {"target", key.target.str()},
                             {"f_against", s.f_against},
                             {"f_favor", s.f_favor},
                             {"f_avg", s.f_avg},
                             {"support", s.support}};
  }
  json["per_pair"] = std::move(pairs);
  json["f_mac_stance"] = report.f_mac_stance;
  return json;
}

nlohmann::ordered_json to_json(const TseReport& report) {
  nlohmann::ordered_json json;
  json["ceiling"] = report.ceiling;
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (const auto& [lang, prf] : report.per_lang) {
    langs[std::string(tsebench::to_string(lang))] = prf_json(prf, report.per_lang_counts.at(lang));
  }
  json["per_lang"] = std::move(langs);
  json["global"] = prf_json(report.global, report.global_counts);
  json["f_mac_tse"] = report.f_mac_tse;
  return json;
}

nlohmann::ordered_json to_json(const LangMatchReport& report) {
  nlohmann::ordered_json json;
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (const auto& [lang, rate] : report.per_lang_rate) {
    langs[std::string(tsebench::to_string(lang))] = {
        {"rate", rate}, {"matched", report.matched.at(lang)}, {"candidates", report.candidates.at(lang)}};
  }
  json["per_lang"] = std::move(langs);
  json["avg_lang"] = report.avg_lang;
  return json;
}

nlohmann::ordered_json to_json(const ScoreReport& report) {
  nlohmann::ordered_json json;
  json["target"] = to_json(report.target);
  json["stance"] = to_json(report.stance);
  json["tse"] = to_json(report.tse);
  json["lang_match"] = report.lang_match ? to_json(*report.lang_match) : nlohmann::ordered_json();
  return json;
}

std::string render_target_table(const TargetReport& report) {
  Table table({"Target", "F1"});
  for (const TargetLabel& label : ordered_labels(report.per_class_f1)) {
    table.add({display(label), percent(report.per_class_f1.at(label))});
  }
  table.rule();
  table.add({"F_mic", percent(report.f_mic)});
  table.add({"F_mac", percent(report.f_mac)});
  return table.str();
}

std::string render_tse_table(const TseReport& report) {
  Table table({"Lang", "P", "R", report.ceiling ? "F1 (GT)" : "F1 (Mapped)"});
  for (const auto& [lang, prf] : report.per_lang) {
    table.add({std::string(tsebench::to_string(lang)), percent(prf.precision), percent(prf.recall),
               percent(prf.f1)});
  }
  table.rule();
  table.add({"All", percent(report.global.precision), percent(report.global.recall),
             percent(report.global.f1)});
  table.add({"F_mac_tse", "", "", percent(report.f_mac_tse)});
  return table.str();
}

std::string render_lang_match_table(const LangMatchReport& report) {
  std::vector<std::string> header;
  std::vector<std::string> row;
  for (const auto& [lang, rate] : report.per_lang_rate) {
    header.emplace_back(tsebench::to_string(lang));
    row.push_back(percent(rate));
  }
  header.emplace_back("Avg_lang");
  row.push_back(percent(report.avg_lang));
  Table table(std::move(header));
  table.add(std::move(row));
  return table.str();
}

std::string render_stance_table(const StanceReport& report) {
  Table table({"Lang-Target", "F_against", "F_favor", "F_avg"});
  for (const auto& [key, s] : report.per_pair) {
    table.add({to_string(key), percent(s.f_against), percent(s.f_favor), percent(s.f_avg)});
  }
  table.rule();
  table.add({"F_mac_stance", "", "", percent(report.f_mac_stance)});
  return table.str();
}

std::string render_tables(const ScoreReport& report) {
  std::ostringstream out;
  out << "Target prediction F1\n" << render_target_table(report.target) << '\n';
  out << "TSE F1\n" << render_tse_table(report.tse) << '\n';
  if (report.lang_match) {
    out << "Language match rate\n" << render_lang_match_table(*report.lang_match) << '\n';
  }
  out << "Stance F_avg\n" << render_stance_table(report.stance);
  return out.str();
}

}  // namespace tsebench::metrics
