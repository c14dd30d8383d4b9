#include "tsebench/mapping.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "tsebench/error.hpp"
#include "tsebench/jsonl.hpp"
#include "tsebench/unicode.hpp"

namespace tsebench::mapping {

Tau::Tau(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) throw std::invalid_argument("tau must lie in (0, 1)");
}

std::vector<std::string> dedupe(std::span<const std::string> candidates) {
  std::vector<std::string> unique;
  std::unordered_set<std::string> seen;
  for (const std::string& candidate : candidates) {
    if (seen.insert(unicode::nfc(candidate)).second) unique.push_back(candidate);
  }
  return unique;
}

TargetMapper::TargetMapper(const embeddings::EmbeddingStore& store,
                           const corpus::TargetPool& pool)
    : store_(store) {
  if (pool.entries.empty()) throw ValidationError("target pool is empty");
  for (const auto& [label, verbalization] : pool.entries) {
    auto phrase = embeddings::phrase_embedding(store, verbalization);
    if (!phrase || embeddings::norm(phrase->vector) == 0.0) {
      throw ValidationError("verbalization of \"" + label + "\" (\"" + verbalization +
                            "\") has no usable embedding");
    }
    entries_.push_back(Entry{label, std::move(phrase->vector)});
  }
}

MappedTarget TargetMapper::map(std::string_view sample_id,
                               std::span<const std::string> candidates, Tau tau) const {
  MappedTarget result;
  result.sample_id = std::string(sample_id);

  const Entry* best_entry = nullptr;
  double best = 0.0;
  // Strict improvement only: ties keep the earlier candidate, then the
  // lexicographically smaller label (entries_ is label-sorted).
  for (const std::string& candidate : dedupe(candidates)) {
    auto phrase = embeddings::phrase_embedding(store_, candidate);
    if (!phrase || embeddings::norm(phrase->vector) == 0.0) continue;
    for (const Entry& entry : entries_) {
      const double s = embeddings::cosine(phrase->vector, entry.vector);
      if (best_entry == nullptr || s > best) {
        best_entry = &entry;
        best = s;
        result.chosen_candidate = candidate;
      }
    }
  }
  if (best_entry == nullptr) return result;
  result.best_similarity = best;
  if (best > tau.value()) result.mapped = *TargetLabel::parse(best_entry->label);
  return result;
}

MappedTarget map_candidates(const embeddings::EmbeddingStore& store,
                            const corpus::TargetPool& pool,
                            std::span<const std::string> candidates, Tau tau) {
  return TargetMapper(store, pool).map("", candidates, tau);
}

std::vector<MappedTarget> map_all(const embeddings::EmbeddingStore& store,
                                  const corpus::TargetPool& pool,
                                  std::span<const GeneratedPrediction> predictions, Tau tau,
                                  unsigned threads) {
  std::unordered_set<std::string_view> ids;
  for (const GeneratedPrediction& p : predictions) {
    if (!ids.insert(p.sample_id).second) {
      throw ContractError("duplicate prediction id \"" + p.sample_id + "\"");
    }
  }

  const TargetMapper mapper(store, pool);
  std::vector<MappedTarget> results(predictions.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      results[i] = mapper.map(predictions[i].sample_id, predictions[i].candidates_en, tau);
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(predictions.size())));
  if (threads <= 1) {
    work(0, predictions.size());
    return results;
  }
  std::vector<std::jthread> workers;
  const std::size_t chunk = (predictions.size() + threads - 1) / threads;
  for (std::size_t begin = 0; begin < predictions.size(); begin += chunk) {
    workers.emplace_back(work, begin, std::min(predictions.size(), begin + chunk));
  }
  workers.clear();
  return results;
}

namespace {

std::vector<std::string> string_array(const nlohmann::json& object, const char* key,
                                      const std::string& source, std::size_t line) {
  const auto& value = object.at(key);
  if (!value.is_array()) {
    throw ContractError(located(source, line, std::string("\"") + key + "\" must be an array"));
  }
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw ContractError(located(source, line, std::string("\"") + key + "\" must hold strings"));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string id_of(const nlohmann::json& object, const std::string& source, std::size_t line) {
  auto it = object.find("id");
  if (it == object.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw ContractError(located(source, line, "missing or invalid \"id\""));
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<GeneratedPrediction> parse_predictions(std::istream& in, const std::string& source) {
  std::vector<GeneratedPrediction> predictions;
  std::unordered_set<std::string> ids;
  jsonl::for_each_object<ContractError>(in, source, [&](const nlohmann::json& object,
                                                         std::size_t line) {
    GeneratedPrediction p;
    p.sample_id = id_of(object, source, line);
    if (!object.contains("candidates_en")) {
      throw ContractError(located(source, line, "missing \"candidates_en\""));
    }
    p.candidates_en = string_array(object, "candidates_en", source, line);
    if (object.contains("candidates_raw") && !object["candidates_raw"].is_null()) {
      p.candidates_raw = string_array(object, "candidates_raw", source, line);
      if (p.candidates_raw->size() != p.candidates_en.size()) {
        throw ContractError(located(source, line, "candidates_raw and candidates_en differ in length"));
      }
    }
    if (object.contains("detected_lang") && !object["detected_lang"].is_null()) {
      p.detected_lang = string_array(object, "detected_lang", source, line);
      if (!p.candidates_raw || p.detected_lang->size() != p.candidates_raw->size()) {
        throw ContractError(located(source, line, "detected_lang must parallel candidates_raw"));
      }
    }
    if (!ids.insert(p.sample_id).second) {
      throw ContractError(located(source, line, "duplicate id \"" + p.sample_id + "\""));
    }
    predictions.push_back(std::move(p));
  });
  return predictions;
}

std::vector<GeneratedPrediction> load_predictions(const std::filesystem::path& path) {
  auto in = jsonl::open_input(path);
  return parse_predictions(in, path.string());
}

void write_predictions(std::ostream& out, std::span<const GeneratedPrediction> predictions) {
  for (const GeneratedPrediction& p : predictions) {
    nlohmann::ordered_json object;
    object["id"] = p.sample_id;
    object["candidates_en"] = p.candidates_en;
    if (p.candidates_raw) object["candidates_raw"] = *p.candidates_raw;
    if (p.detected_lang) object["detected_lang"] = *p.detected_lang;
    jsonl::write_line(out, object);
  }
}

nlohmann::ordered_json to_json(const MappedTarget& mapped) {
  nlohmann::ordered_json object;
  object["id"] = mapped.sample_id;
  object["mapped"] = mapped.mapped.str();
  object["chosen_candidate"] =
      mapped.chosen_candidate ? nlohmann::ordered_json(*mapped.chosen_candidate) : nullptr;
  object["best_similarity"] =
      mapped.best_similarity ? nlohmann::ordered_json(*mapped.best_similarity) : nullptr;
  return object;
}

std::vector<MappedTarget> parse_mapped(std::istream& in, const std::string& source) {
  std::vector<MappedTarget> mapped;
  std::unordered_set<std::string> ids;
  jsonl::for_each_object<ContractError>(in, source, [&](const nlohmann::json& object,
                                                         std::size_t line) {
    MappedTarget m;
    m.sample_id = id_of(object, source, line);
    auto label = object.find("mapped");
    if (label == object.end() || !label->is_string()) {
      throw ContractError(located(source, line, "missing or invalid \"mapped\""));
    }
    auto parsed = TargetLabel::parse(label->get<std::string>());
    if (!parsed) {
      throw ContractError(located(source, line, "invalid target label \"" +
                                                    label->get<std::string>() + "\""));
    }
    m.mapped = *parsed;
    if (auto c = object.find("chosen_candidate"); c != object.end() && !c->is_null()) {
      if (!c->is_string()) throw ContractError(located(source, line, "chosen_candidate must be a string"));
      m.chosen_candidate = c->get<std::string>();
    }
    if (auto s = object.find("best_similarity"); s != object.end() && !s->is_null()) {
      if (!s->is_number()) throw ContractError(located(source, line, "best_similarity must be a number"));
      m.best_similarity = s->get<double>();
    }
    if (!ids.insert(m.sample_id).second) {
      throw ContractError(located(source, line, "duplicate id \"" + m.sample_id + "\""));
    }
    mapped.push_back(std::move(m));
  });
  return mapped;
}

std::vector<MappedTarget> load_mapped(const std::filesystem::path& path) {
  auto in = jsonl::open_input(path);
  return parse_mapped(in, path.string());
}

}  // namespace tsebench::mapping
