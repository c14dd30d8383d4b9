#include "tsebench/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_set>

#include "tsebench/error.hpp"
#include "tsebench/jsonl.hpp"
#include "tsebench/kvfile.hpp"

namespace tsebench::corpus {

namespace {

std::string required_string(const nlohmann::json& object, const char* key,
                            const std::string& source, std::size_t line) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ValidationError(located(source, line, std::string("missing field \"") + key + "\""));
  }
  if (!it->is_string()) {
    throw ValidationError(located(source, line, std::string("field \"") + key + "\" must be a string"));
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<Sample> parse_samples(std::istream& in, const std::string& source) {
  std::vector<Sample> samples;
  std::unordered_set<std::string> ids;
  jsonl::for_each_object<ValidationError>(in, source, [&](const nlohmann::json& object,
                                                           std::size_t line) {
    std::string id = required_string(object, "id", source, line);
    std::string lang_code = required_string(object, "lang", source, line);
    std::string text = required_string(object, "text", source, line);
    std::string target_str = required_string(object, "target", source, line);
    std::string stance_str = required_string(object, "stance", source, line);

    if (id.empty()) throw ValidationError(located(source, line, "empty id"));
    auto lang = parse_lang(lang_code);
    if (!lang) throw ValidationError(located(source, line, "unknown lang \"" + lang_code + "\""));
    auto stance = parse_stance(stance_str);
    if (!stance) {
      throw ValidationError(located(source, line, "unknown stance \"" + stance_str + "\""));
    }
    auto target = TargetLabel::parse(target_str);
    if (!target) {
      throw ValidationError(located(source, line, "invalid target label \"" + target_str + "\""));
    }
    if (text.empty()) throw ValidationError(located(source, line, "empty text"));
    if (target->is_unrelated() && *stance != Stance::kNeutral) {
      throw ValidationError(located(source, line, "unrelated must be neutral"));
    }
    if (!ids.insert(id).second) {
      throw ValidationError(located(source, line, "duplicate id \"" + id + "\""));
    }
    samples.push_back(Sample{std::move(id), *lang, std::move(text), std::move(*target), *stance});
  });
  return samples;
}

std::vector<Sample> load_samples(const std::filesystem::path& path) {
  auto in = jsonl::open_input(path);
  return parse_samples(in, path.string());
}

void write_samples(std::ostream& out, std::span<const Sample> samples) {
  for (const Sample& s : samples) {
    nlohmann::ordered_json object;
    object["id"] = s.id;
    object["lang"] = to_string(s.lang);
    object["text"] = s.text;
    object["target"] = s.target.str();
    object["stance"] = to_string(s.stance);
    jsonl::write_line(out, object);
  }
}

StratumKey stratum_of(const Sample& sample) {
  return StratumKey{sample.lang, sample.target, sample.stance};
}

CorpusStats corpus_stats(std::span<const Sample> samples) {
  CorpusStats stats;
  std::map<Lang, std::size_t> unrelated;
  for (const Sample& s : samples) {
    ++stats.counts[stratum_of(s)];
    ++stats.samples_per_lang[s.lang];
    if (s.target.is_unrelated()) ++unrelated[s.lang];
    ++stats.total;
  }
  for (const auto& [lang, n] : stats.samples_per_lang) {
    stats.unrelated_fraction_per_lang[lang] =
        static_cast<double>(unrelated[lang]) / static_cast<double>(n);
  }
  return stats;
}

std::vector<FractionCheck> check_unrelated_fraction(const CorpusStats& stats,
                                                    double target_fraction, double tolerance) {
  if (!(target_fraction > 0.0 && target_fraction < 1.0)) {
    throw std::invalid_argument("target_fraction must lie in (0, 1)");
  }
  constexpr double kSlack = 1e-12;
  std::vector<FractionCheck> checks;
  for (const auto& [lang, fraction] : stats.unrelated_fraction_per_lang) {
    checks.push_back(
        {lang, fraction, std::fabs(fraction - target_fraction) <= tolerance + kSlack});
  }
  return checks;
}

nlohmann::ordered_json stats_to_json(const CorpusStats& stats,
                                     std::span<const FractionCheck> checks) {
  nlohmann::ordered_json json;
  json["total"] = stats.total;
  nlohmann::ordered_json counts = nlohmann::ordered_json::array();
  for (const auto& [key, n] : stats.counts) {
    counts.push_back({{"lang", to_string(key.lang)},
                      {"target", key.target.str()},
                      {"stance", to_string(key.stance)},
                      {"count", n}});
  }
  json["counts"] = std::move(counts);
  nlohmann::ordered_json per_lang = nlohmann::ordered_json::object();
  for (const auto& [lang, n] : stats.samples_per_lang) {
    per_lang[std::string(to_string(lang))] = {
        {"samples", n}, {"unrelated_fraction", stats.unrelated_fraction_per_lang.at(lang)}};
  }
  for (const FractionCheck& check : checks) {
    per_lang[std::string(to_string(check.lang))]["unrelated_check"] =
        check.pass ? "pass" : "fail";
  }
  json["languages"] = std::move(per_lang);
  return json;
}

std::string render_stats_table(const CorpusStats& stats) {
  struct Row {
    std::string lang;
    std::string target;
    std::string cells[3];
  };
  std::vector<Row> rows;
  std::vector<std::size_t> block_ends;

  for (const auto& [lang, total] : stats.samples_per_lang) {
    std::set<TargetLabel> targets;
    for (const auto& [key, n] : stats.counts) {
      if (key.lang == lang && !key.target.is_unrelated()) targets.insert(key.target);
    }
    auto count_of = [&](const TargetLabel& t, Stance s) {
      auto it = stats.counts.find(StratumKey{lang, t, s});
      return it == stats.counts.end() ? std::size_t{0} : it->second;
    };
    bool first = true;
    for (const TargetLabel& t : targets) {
      Row row{first ? std::string(to_string(lang)) : "", t.str(), {}};
      for (int i = 0; i < 3; ++i) row.cells[i] = std::to_string(count_of(t, kAllStances[i]));
      rows.push_back(std::move(row));
      first = false;
    }
    const TargetLabel unrelated = TargetLabel::unrelated();
    if (stats.counts.contains(StratumKey{lang, unrelated, Stance::kNeutral})) {
      rows.push_back(Row{first ? std::string(to_string(lang)) : "", "Unrelated",
                         {"--", "--", std::to_string(count_of(unrelated, Stance::kNeutral))}});
    }
    block_ends.push_back(rows.size());
  }

  std::size_t target_width = 6;
  std::size_t num_width = 7;
  for (const Row& r : rows) {
    target_width = std::max(target_width, r.target.size());
    for (const auto& c : r.cells) num_width = std::max(num_width, c.size());
  }

  std::ostringstream out;
  auto rule = [&] {
    out << std::string(4 + 3 + target_width + 3 * (3 + num_width), '-') << '\n';
  };
  auto line = [&](const std::string& lang, const std::string& target, const std::string* cells) {
    char buf[32];
    out << lang << std::string(4 - std::min<std::size_t>(4, lang.size()), ' ') << " | " << target
        << std::string(target_width - target.size(), ' ');
    for (int i = 0; i < 3; ++i) {
      std::snprintf(buf, sizeof buf, "%*s", static_cast<int>(num_width), cells[i].c_str());
      out << " | " << buf;
    }
    out << '\n';
  };
  const std::string header[3] = {"Against", "Favor", "Neutral"};
  rule();
  line("Lang", "Target", header);
  rule();
  std::size_t block = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    line(rows[i].lang, rows[i].target, rows[i].cells);
    if (block < block_ends.size() && i + 1 == block_ends[block]) {
      rule();
      ++block;
    }
  }
  return out.str();
}

std::string_view to_string(PoolKind kind) {
  switch (kind) {
    case PoolKind::kFull: return "full";
    case PoolKind::kLlm: return "llm";
    case PoolKind::kManual: return "manual";
  }
  return "?";
}

std::optional<PoolKind> parse_pool_kind(std::string_view value) {
  for (PoolKind kind : {PoolKind::kFull, PoolKind::kLlm, PoolKind::kManual}) {
    if (to_string(kind) == value) return kind;
  }
  return std::nullopt;
}

TargetPool parse_pool(std::istream& in, const std::string& source) {
  TargetPool pool;
  bool have_kind = false;
  for (const KvEntry& entry : parse_kv(in, source)) {
    if (entry.key == "kind") {
      if (have_kind) throw ValidationError(located(source, entry.line, "duplicate kind field"));
      auto kind = parse_pool_kind(entry.value);
      if (!kind) {
        throw ValidationError(located(source, entry.line, "unknown pool kind \"" + entry.value + "\""));
      }
      pool.kind = *kind;
      have_kind = true;
      continue;
    }
    if (entry.key == TargetLabel::kUnrelatedSpelling) {
      throw ValidationError(located(source, entry.line, "\"unrelated\" is reserved"));
    }
    if (!TargetLabel::is_valid_pool_label(entry.key)) {
      throw ValidationError(located(source, entry.line, "invalid target label \"" + entry.key + "\""));
    }
    if (entry.value.empty()) {
      throw ValidationError(located(source, entry.line, "empty verbalization for \"" + entry.key + "\""));
    }
    if (!pool.entries.emplace(entry.key, entry.value).second) {
      throw ValidationError(located(source, entry.line, "duplicate label \"" + entry.key + "\""));
    }
  }
  if (!have_kind) throw ValidationError(source + ": missing kind field");
  return pool;
}

TargetPool load_pool(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_pool(in, path.string());
}

}  // namespace tsebench::corpus
