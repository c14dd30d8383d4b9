#include "tsebench/commands.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <functional>
#include <unordered_set>

#include "tsebench/corpus.hpp"
#include "tsebench/embeddings.hpp"
#include "tsebench/error.hpp"
#include "tsebench/jsonl.hpp"
#include "tsebench/langid.hpp"
#include "tsebench/mapping.hpp"
#include "tsebench/metrics.hpp"
#include "tsebench/provenance.hpp"
#include "tsebench/report.hpp"
#include "tsebench/splits.hpp"

namespace fs = std::filesystem;

namespace tsebench::commands {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kValidation);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kIo);
  }
}

Provenance provenance_for(const RunConfig& config) {
  Provenance p;
  p.config_hash = config.hash();
  return p;
}

std::vector<Sample> require_samples(const RunConfig& config, Provenance& provenance) {
  if (config.samples_path.empty()) throw ValidationError("no samples file configured");
  auto samples = corpus::load_samples(config.samples_path);
  provenance.add_input("samples", config.samples_path);
  return samples;
}

const fs::path& pool_path(const RunConfig& config, corpus::PoolKind kind) {
  switch (kind) {
    case corpus::PoolKind::kLlm: return config.pool_llm_path;
    case corpus::PoolKind::kManual: return config.pool_manual_path;
    case corpus::PoolKind::kFull: break;
  }
  return config.pool_full_path;
}

corpus::TargetPool require_pool(const RunConfig& config, corpus::PoolKind kind,
                                Provenance& provenance) {
  const fs::path& path = pool_path(config, kind);
  if (path.empty()) {
    throw ValidationError("no pool file configured for kind \"" +
                          std::string(corpus::to_string(kind)) + "\"");
  }
  corpus::TargetPool pool = corpus::load_pool(path);
  if (pool.kind != kind) {
    throw ValidationError(path.string() + ": declares kind \"" +
                          std::string(corpus::to_string(pool.kind)) + "\", expected \"" +
                          std::string(corpus::to_string(kind)) + "\"");
  }
  provenance.add_input("pool_" + std::string(corpus::to_string(kind)), path);
  return pool;
}

void write_json(const fs::path& path, const nlohmann::ordered_json& json) {
  auto out = jsonl::open_output(path);
  out << json.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = jsonl::open_output(path);
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<langid::LangProfile> train_profiles(std::span<const Sample> samples) {
  std::map<Lang, std::vector<std::string>> texts;
  for (const Sample& s : samples) texts[s.lang].push_back(s.text);
  std::vector<langid::LangProfile> profiles;
  for (const auto& [lang, list] : texts) {
    profiles.push_back(langid::train_profile(list, std::string(to_string(lang))));
  }
  return profiles;
}

langid::TrigramDetector make_detector(std::span<const Sample> samples,
                                      const std::optional<fs::path>& profiles_path,
                                      Provenance& provenance) {
  if (profiles_path) {
    auto profiles = langid::load_profiles(*profiles_path);
    provenance.add_input("langid_profiles", *profiles_path);
    return langid::TrigramDetector(std::move(profiles));
  }
  if (samples.empty()) throw ValidationError("cannot train language profiles on an empty corpus");
  return langid::TrigramDetector(train_profiles(samples));
}

// Every id of a prediction-side file must name a benchmark sample.
template <typename Ids>
void check_known_ids(const std::unordered_set<std::string_view>& known, const Ids& ids,
                     const std::string& what) {
  for (const auto& id : ids) {
    if (!known.contains(id)) {
      throw ContractError(what + " refers to unknown sample \"" + std::string(id) + "\"");
    }
  }
}

std::unordered_set<std::string_view> id_set(std::span<const Sample> samples) {
  std::unordered_set<std::string_view> ids;
  for (const Sample& s : samples) ids.insert(s.id);
  return ids;
}

}  // namespace

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_ranges(config);
    Provenance provenance = provenance_for(config);
    const auto samples = require_samples(config, provenance);

    std::set<std::string> sample_targets;
    for (const Sample& s : samples) {
      if (!s.target.is_unrelated()) sample_targets.insert(s.target.str());
    }
    for (auto kind : {corpus::PoolKind::kFull, corpus::PoolKind::kLlm, corpus::PoolKind::kManual}) {
      if (pool_path(config, kind).empty()) continue;
      const auto pool = require_pool(config, kind, provenance);
      for (const std::string& target : sample_targets) {
        if (!pool.entries.contains(target)) {
          throw ValidationError(pool_path(config, kind).string() + ": no entry for target \"" +
                                target + "\" used by the samples");
        }
      }
      out << "pool " << corpus::to_string(kind) << ": " << pool.entries.size() << " targets\n";
    }

    const auto stats = corpus::corpus_stats(samples);
    const auto checks = corpus::check_unrelated_fraction(stats, config.unrelated_fraction,
                                                         config.unrelated_tolerance);
    const std::string table = corpus::render_stats_table(stats);

    nlohmann::ordered_json json;
    json["meta"] = provenance.to_json();
    json["stats"] = corpus::stats_to_json(stats, checks);
    write_json(config.output_dir / "stats.json", json);
    write_text(config.output_dir / "stats.txt", provenance.to_text_header() + table);

    out << table;
    out << "samples: " << stats.total << '\n';
    bool all_pass = true;
    for (const auto& check : checks) {
      char line[128];
      std::snprintf(line, sizeof line, "unrelated share %s: %.2f%% (target %.2f%% +- %.2f) %s\n",
                    std::string(to_string(check.lang)).c_str(), check.fraction * 100.0,
                    config.unrelated_fraction * 100.0, config.unrelated_tolerance * 100.0,
                    check.pass ? "ok" : "OUT OF RANGE");
      out << line;
      all_pass = all_pass && check.pass;
    }
    if (!all_pass) {
      err << (config.strict_unrelated ? "error" : "warning")
          << ": unrelated share outside the tolerated range\n";
      if (config.strict_unrelated) return static_cast<int>(ExitCode::kValidation);
    }
    return static_cast<int>(ExitCode::kOk);
  });
}

int cmd_split(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_ranges(config);
    Provenance provenance = provenance_for(config);
    const auto samples = require_samples(config, provenance);
    const auto folds = splits::stratified_kfold(samples, config.k, config.seed);

    nlohmann::ordered_json json = splits::to_json(folds);
    json["meta"] = provenance.to_json();
    write_json(config.output_dir / "folds.json", json);

    std::vector<std::size_t> sizes(static_cast<std::size_t>(folds.k), 0);
    for (const auto& [id, fold] : folds.assignment) ++sizes[static_cast<std::size_t>(fold)];
    for (std::size_t f = 0; f < sizes.size(); ++f) {
      out << "fold " << f << ": " << sizes[f] << " samples\n";
    }
    return static_cast<int>(ExitCode::kOk);
  });
}

int cmd_map(const RunConfig& config, const MapOptions& options, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    validate_ranges(config);
    Provenance provenance = provenance_for(config);
    if (config.embeddings_path.empty() || !fs::exists(config.embeddings_path)) {
      throw IoError("embeddings not found: " + config.embeddings_path.string());
    }
    const auto pool = require_pool(config, options.pool_kind, provenance);
    const auto store = embeddings::load_vec(config.embeddings_path);
    provenance.add_input("embeddings", config.embeddings_path);
    const auto predictions = mapping::load_predictions(options.predictions_path);
    provenance.add_input("predictions", options.predictions_path);

    if (!config.samples_path.empty()) {
      const auto samples = require_samples(config, provenance);
      std::vector<std::string_view> ids;
      for (const auto& p : predictions) ids.push_back(p.sample_id);
      check_known_ids(id_set(samples), ids, options.predictions_path.string());
    }

    const auto mapped = mapping::map_all(store, pool, predictions, mapping::Tau(config.tau),
                                         config.threads);

    const fs::path path = options.output_path.value_or(
        config.output_dir / ("mapped_" + std::string(corpus::to_string(options.pool_kind)) + ".jsonl"));
    auto file = jsonl::open_output(path);
    nlohmann::ordered_json header;
    header[jsonl::kMetaKey] = provenance.to_json();
    header[jsonl::kMetaKey]["pool_kind"] = corpus::to_string(options.pool_kind);
    header[jsonl::kMetaKey]["tau"] = config.tau;
    jsonl::write_line(file, header);
    std::size_t unrelated = 0;
    for (const auto& m : mapped) {
      jsonl::write_line(file, mapping::to_json(m));
      if (m.mapped.is_unrelated()) ++unrelated;
    }
    if (!file) throw IoError("failed writing " + path.string());
    if (store.duplicate_count() > 0) {
      err << "warning: " << store.duplicate_count() << " duplicate words in "
          << config.embeddings_path.string() << " (last occurrence kept)\n";
    }
    out << "mapped " << mapped.size() << " predictions (" << unrelated << " unrelated) -> "
        << path.string() << '\n';
    return static_cast<int>(ExitCode::kOk);
  });
}

namespace {

struct ScoreInputs {
  std::span<const Sample> samples;
  const metrics::IdMap<TargetLabel>* mapped;
  const metrics::IdMap<Stance>* stances;
  const std::vector<mapping::GeneratedPrediction>* predictions;  // may be null
  const langid::LanguageDetector* detector;
  bool ceiling;
  bool exclude_unrelated_class;
};

metrics::ScoreReport score_subset(const ScoreInputs& in, std::span<const Sample> samples) {
  metrics::ScoreReport report;
  std::vector<TargetLabel> gt;
  std::vector<TargetLabel> pred;
  for (const Sample& s : samples) {
    auto it = in.mapped->find(s.id);
    if (it == in.mapped->end()) throw ContractError("no mapped target for sample \"" + s.id + "\"");
    gt.push_back(s.target);
    pred.push_back(it->second);
  }
  report.target = metrics::target_f1(gt, pred, in.exclude_unrelated_class);
  report.stance = metrics::stance_favg(samples, *in.stances);
  report.tse = metrics::tse_scores(samples, *in.mapped, *in.stances, in.ceiling);
  if (in.predictions != nullptr) {
    std::unordered_set<std::string_view> ids = id_set(samples);
    std::vector<mapping::GeneratedPrediction> subset;
    for (const auto& p : *in.predictions) {
      if (ids.contains(p.sample_id)) subset.push_back(p);
    }
    report.lang_match = metrics::lang_match_rate(samples, subset, *in.detector);
  }
  return report;
}

}  // namespace


int cmd_score(const RunConfig& config, const ScoreOptions& options, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    validate_ranges(config);
    Provenance provenance = provenance_for(config);
    const auto samples = require_samples(config, provenance);
    const auto known = id_set(samples);

    const auto mapped_list = mapping::load_mapped(options.mapped_path);
    provenance.add_input("mapped", options.mapped_path);
    std::vector<std::string_view> mapped_ids;
    for (const auto& m : mapped_list) mapped_ids.push_back(m.sample_id);
    check_known_ids(known, mapped_ids, options.mapped_path.string());
    const auto mapped = metrics::mapped_by_id(mapped_list);

    const auto stances = metrics::load_stances(options.stances_path);
    provenance.add_input("stances", options.stances_path);
    std::vector<std::string_view> stance_ids;
    for (const auto& [id, s] : stances) stance_ids.push_back(id);
    check_known_ids(known, stance_ids, options.stances_path.string());

    std::optional<std::vector<mapping::GeneratedPrediction>> predictions;
    std::optional<langid::TrigramDetector> detector;
    if (options.predictions_path) {
      predictions = mapping::load_predictions(*options.predictions_path);
      provenance.add_input("predictions", *options.predictions_path);
      detector.emplace(make_detector(samples, options.profiles_path, provenance));
    }

    ScoreInputs inputs{samples,
                       &mapped,
                       &stances,
                       predictions ? &*predictions : nullptr,
                       detector ? &*detector : nullptr,
                       options.ceiling,
                       options.exclude_unrelated_class};

    nlohmann::ordered_json json;
    metrics::ScoreReport report;
    std::optional<splits::FoldAssignment> folds;
    if (options.folds_path) {
      folds = splits::load_folds(*options.folds_path);
      provenance.add_input("folds", *options.folds_path);
      if (folds->assignment.size() != samples.size()) {
        throw ValidationError("folds file does not cover the samples exactly");
      }
      for (const Sample& s : samples) {
        if (!folds->assignment.contains(s.id)) {
          throw ValidationError("sample \"" + s.id + "\" has no fold");
        }
      }
    }

    json["meta"] = provenance.to_json();
    json["aggregation"] = folds ? to_string(config.fold_agg) : "pool";
    json["folds"] = folds ? nlohmann::ordered_json(folds->k) : nlohmann::ordered_json();
    json["exclude_unrelated_class"] = options.exclude_unrelated_class;

    if (folds && config.fold_agg == FoldAgg::kMean) {
      std::vector<metrics::ScoreReport> per_fold;
      nlohmann::ordered_json fold_json = nlohmann::ordered_json::array();
      for (int f = 0; f < folds->k; ++f) {
        std::vector<Sample> subset;
        for (const Sample& s : samples) {
          if (folds->assignment.at(s.id) == f) subset.push_back(s);
        }
        per_fold.push_back(score_subset(inputs, subset));
        fold_json.push_back(metrics::to_json(per_fold.back()));
      }
      report = metrics::mean_over_folds(per_fold);
      const auto body = metrics::to_json(report);
      for (const auto& [key, value] : body.items()) json[key] = value;
      json["per_fold"] = std::move(fold_json);
    } else {
      report = score_subset(inputs, samples);
      const auto body = metrics::to_json(report);
      for (const auto& [key, value] : body.items()) json[key] = value;
    }

    const std::string name = options.report_name;
    write_json(config.output_dir / (name + ".json"), json);
    const std::string tables = metrics::render_tables(report);
    write_text(config.output_dir / (name + ".txt"), provenance.to_text_header() + tables);
    out << tables;
    return static_cast<int>(ExitCode::kOk);
  });
}

int cmd_langcheck(const RunConfig& config, const LangcheckOptions& options, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    Provenance provenance = provenance_for(config);
    const auto samples = require_samples(config, provenance);
    const auto predictions = mapping::load_predictions(options.predictions_path);
    provenance.add_input("predictions", options.predictions_path);
    const auto detector = make_detector(samples, options.profiles_path, provenance);
    const auto report = metrics::lang_match_rate(samples, predictions, detector);

    nlohmann::ordered_json json;
    json["meta"] = provenance.to_json();
    json["lang_match"] = metrics::to_json(report);
    write_json(config.output_dir / "langmatch.json", json);
    out << metrics::render_lang_match_table(report);
    return static_cast<int>(ExitCode::kOk);
  });
}

int cmd_train_langid(const RunConfig& config, const fs::path& output_path, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    Provenance provenance = provenance_for(config);
    const auto samples = require_samples(config, provenance);
    if (samples.empty()) throw ValidationError("cannot train language profiles on an empty corpus");
    const auto profiles = train_profiles(samples);
    langid::save_profiles(output_path, profiles);
    for (const auto& p : profiles) {
      out << p.lang << ": " << p.ngram_freq.size() << " trigrams\n";
    }
    return static_cast<int>(ExitCode::kOk);
  });
}

}  // namespace tsebench::commands
