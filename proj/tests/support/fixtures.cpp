#include "fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tsebench/kvfile.hpp"
#include "tsebench/jsonl.hpp"

namespace tsebench::testing {

TempDir::TempDir() {
  std::string pattern = (std::filesystem::temp_directory_path() / "tsebench-test-XXXXXX").string();
  if (mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

Sample make_sample(std::string id, Lang lang, std::string target, Stance stance,
                   std::string text) {
  return Sample{std::move(id), lang, std::move(text), *TargetLabel::parse(target), stance};
}

const std::vector<BenchmarkCountRow>& benchmark_count_rows() {
  static const std::vector<BenchmarkCountRow> rows = {
      {"ca", "catalonia", 3988, 3902, 2158},  {"ca", "unrelated", 0, 0, 2087},
      {"es", "catalonia", 4105, 4104, 1868},  {"es", "unrelated", 0, 0, 2093},
      {"et", "immigration", 1175, 489, 1597}, {"et", "unrelated", 0, 0, 677},
      {"fr", "macron", 308, 91, 131},         {"fr", "lepen", 466, 65, 55},
      {"fr", "unrelated", 0, 0, 231},         {"it", "sardinia", 1770, 785, 687},
      {"it", "unrelated", 0, 0, 673},         {"zh", "firecracker", 250, 250, 100},
      {"zh", "iphone", 209, 245, 146},        {"zh", "russia", 250, 250, 100},
      {"zh", "secondbirth", 200, 260, 140},   {"zh", "shenzhen", 300, 160, 126},
      {"zh", "unrelated", 0, 0, 620},
  };
  return rows;
}

std::vector<Sample> benchmark_corpus() {
  std::vector<Sample> samples;
  for (const BenchmarkCountRow& row : benchmark_count_rows()) {
    const Lang lang = *parse_lang(row.lang);
    const std::size_t counts[3] = {row.against, row.favor, row.neutral};
    for (int s = 0; s < 3; ++s) {
      const Stance stance = kAllStances[static_cast<std::size_t>(s)];
      for (std::size_t n = 0; n < counts[s]; ++n) {
        std::string id = std::string(row.lang) + "-" + row.target + "-" +
                         std::string(to_string(stance)) + "-" + std::to_string(n);
        samples.push_back(make_sample(id, lang, row.target, stance, "document " + id));
      }
    }
  }
  return samples;
}

corpus::TargetPool benchmark_pool(corpus::PoolKind kind) {
  corpus::TargetPool pool;
  pool.kind = kind;
  pool.entries = {
      {"catalonia", "Catalonian Independence"},
      {"immigration", "Immigration"},
      {"lepen", "Marine LePen"},
      {"macron", "Emmanuel Macron"},
      {"sardinia", "Sardinian Independence"},
      {"firecracker", "Setting off firecrackers during the Spring Festival"},
      {"iphone", "IphoneSE"},
      {"russia", "Russia's counter-terrorism operations in Syria"},
      {"secondbirth", "Allowing second births"},
      {"shenzhen", "Shenzhen bans motorcyles and imposes electricity restrictions"},
  };
  if (kind == corpus::PoolKind::kLlm) {
    pool.entries["firecracker"] = "Firecracker Spring Festival";
    pool.entries["iphone"] = "iPhone SE";
    pool.entries["russia"] = "Russian counterterrorism in Syria";
    pool.entries["shenzhen"] = "Shenzhen motorcycle electricity";
  } else if (kind == corpus::PoolKind::kManual) {
    pool.entries["firecracker"] = "Firecrackers";
    pool.entries["russia"] = "Russia";
    pool.entries["shenzhen"] = "Shenzhen Laws";
  }
  return pool;
}

std::string pool_file_text(const corpus::TargetPool& pool) {
  std::string out = "kind = " + std::string(corpus::to_string(pool.kind)) + "\n";
  for (const auto& [label, text] : pool.entries) out += label + " = " + quote_kv_value(text) + "\n";
  return out;
}

embeddings::EmbeddingStore toy_embeddings() {
  enum Axis { kCat, kImm, kLep, kMac, kSar, kFire, kIph, kRus, kBirth, kShen, kSport, kWeather };
  const std::vector<std::pair<std::string, std::map<int, float>>> words = {
      {"catalonian", {{kCat, 1.0f}}},
      {"catalonia", {{kCat, 1.0f}}},
      {"independence", {{kCat, 0.5f}, {kSar, 0.5f}}},
      {"immigration", {{kImm, 1.0f}}},
      {"migration", {{kImm, 0.9f}, {kWeather, 0.1f}}},
      {"crisis", {{kImm, 0.3f}, {kWeather, 0.2f}}},
      {"marine", {{kLep, 1.0f}}},
      {"lepen", {{kLep, 1.0f}}},
      {"le", {{kLep, 0.6f}}},
      {"pen", {{kLep, 0.6f}}},
      {"emmanuel", {{kMac, 1.0f}}},
      {"macron", {{kMac, 1.0f}}},
      {"sardinian", {{kSar, 1.0f}}},
      {"sardinia", {{kSar, 1.0f}}},
      {"firecrackers", {{kFire, 1.0f}}},
      {"firecracker", {{kFire, 1.0f}}},
      {"spring", {{kFire, 0.7f}, {kWeather, 0.3f}}},
      {"festival", {{kFire, 0.8f}}},
      {"iphonese", {{kIph, 1.0f}}},
      {"iphone", {{kIph, 1.0f}}},
      {"se", {{kIph, 0.5f}}},
      {"russia", {{kRus, 1.0f}}},
      {"russian", {{kRus, 1.0f}}},
      {"syria", {{kRus, 0.8f}}},
      {"counterterrorism", {{kRus, 0.7f}}},
      {"second", {{kBirth, 0.6f}}},
      {"births", {{kBirth, 1.0f}}},
      {"shenzhen", {{kShen, 1.0f}}},
      {"motorcycle", {{kShen, 0.7f}}},
      {"electricity", {{kShen, 0.6f}}},
      {"laws", {{kShen, 0.4f}, {kMac, 0.1f}}},
      {"football", {{kSport, 1.0f}}},
      {"sport", {{kSport, 1.0f}}},
      {"weather", {{kWeather, 1.0f}}},
  };
  embeddings::EmbeddingStore store(12);
  for (const auto& [word, axes] : words) {
    std::vector<float> v(12, 0.0f);
    for (const auto& [axis, value] : axes) v[static_cast<std::size_t>(axis)] = value;
    store.insert(word, v);
  }
  return store;
}

namespace {

struct LangFixture {
  Lang lang;
  std::vector<std::string> targets;
  std::vector<std::string> sentences;
  std::string unrelated_sentence;
  std::string raw_offtopic;
};

const std::vector<LangFixture>& lang_fixtures() {
  static const std::vector<LangFixture> fixtures = {
      {Lang::kCa,
       {"catalonia"},
       {"La independència de Catalunya és el tema del dia al Parlament.",
        "Els ciutadans d'aquesta ciutat volen votar el referèndum aviat."},
       "El temps d'aquesta setmana serà assolellat amb algunes pluges.",
       "el futbol d'aquesta nit"},
      {Lang::kEs,
       {"catalonia"},
       {"La independencia de Cataluña divide a los ciudadanos de España.",
        "Los políticos del gobierno hablan de elecciones y del referéndum."},
       "El tiempo de esta semana será soleado con algunas lluvias.",
       "el fútbol de esta noche"},
      {Lang::kEt,
       {"immigration"},
       {"Sisseränne Eestisse on viimastel aastatel kiiresti kasvanud.",
        "Migrandid otsivad tööd ja paremat elu Euroopa riikides."},
       "Ilm on sel nädalal päikeseline ja soe.",
       "jalgpall ja ilm täna õhtul"},
      {Lang::kFr,
       {"lepen", "macron"},
       {"Marine Le Pen a parlé de la sécurité pendant le débat télévisé.",
        "Emmanuel Macron présente son programme pour les élections."},
       "Le temps de cette semaine sera ensoleillé avec quelques averses.",
       "le football de ce soir"},
      {Lang::kIt,
       {"sardinia"},
       {"L'indipendenza della Sardegna è tornata al centro del dibattito politico.",
        "I cittadini della regione chiedono più autonomia dallo stato."},
       "Il tempo di questa settimana sarà soleggiato con qualche pioggia.",
       "il calcio di questa sera"},
      {Lang::kZh,
       {"firecracker", "iphone", "russia", "secondbirth", "shenzhen"},
       {"春节期间燃放烟花爆竹的问题又引起了讨论。", "中俄战略伙伴关系不是少数人所能离间分化的。"},
       "今天的天气很好，适合出去散步。",
       "足球比赛"},
  };
  return fixtures;
}

const std::map<std::string, std::pair<std::string, std::string>>& on_topic_candidates() {
  // target -> (English candidate, original-language candidate)
  static const std::map<std::string, std::pair<std::string, std::string>> candidates = {
      {"catalonia", {"catalonian independence", "independència de catalunya"}},
      {"immigration", {"immigration crisis", "sisseränne eestisse"}},
      {"lepen", {"marine le pen", "marine le pen"}},
      {"macron", {"emmanuel macron", "emmanuel macron"}},
      {"sardinia", {"sardinian independence", "indipendenza della sardegna"}},
      {"firecracker", {"spring festival firecrackers", "春节烟花爆竹"}},
      {"iphone", {"iphone se", "苹果手机"}},
      {"russia", {"russia syria", "中俄战略伙伴关系"}},
      {"secondbirth", {"second births", "二胎政策"}},
      {"shenzhen", {"shenzhen motorcycle", "深圳禁摩限电"}},
  };
  return candidates;
}

}  // namespace

std::vector<Sample> smoke_corpus() {
  std::vector<Sample> samples;
  const Stance cycle[3] = {Stance::kAgainst, Stance::kFavor, Stance::kNeutral};
  for (const LangFixture& f : lang_fixtures()) {
    const std::string code(to_string(f.lang));
    for (int i = 0; i < 8; ++i) {
      const std::string& target = f.targets[static_cast<std::size_t>(i) % f.targets.size()];
      const std::string& sentence = f.sentences[static_cast<std::size_t>(i) % f.sentences.size()];
      samples.push_back(make_sample(code + "-" + std::to_string(i), f.lang, target, cycle[i % 3],
                                    sentence));
    }
    for (int i = 8; i < 10; ++i) {
      samples.push_back(make_sample(code + "-" + std::to_string(i), f.lang, "unrelated",
                                    Stance::kNeutral, f.unrelated_sentence));
    }
  }
  return samples;
}

std::vector<mapping::GeneratedPrediction> stub_predictions(const std::vector<Sample>& samples,
                                                           bool perfect) {
  std::map<Lang, std::string> offtopic_raw;
  for (const LangFixture& f : lang_fixtures()) offtopic_raw[f.lang] = f.raw_offtopic;

  std::vector<mapping::GeneratedPrediction> predictions;
  std::size_t positive_index = 0;
  for (const Sample& s : samples) {
    mapping::GeneratedPrediction p;
    p.sample_id = s.id;
    p.candidates_raw.emplace();
    auto add = [&](const std::string& en, const std::string& raw) {
      p.candidates_en.push_back(en);
      p.candidates_raw->push_back(raw);
    };
    if (s.target.is_unrelated()) {
      add("football match", offtopic_raw[s.lang]);
      add("weather", offtopic_raw[s.lang]);
    } else {
      const auto& [en, raw] = on_topic_candidates().at(s.target.str());
      ++positive_index;
      if (perfect) {
        add(en, raw);
        add(en, raw);
      } else if (positive_index % 4 == 0) {
        add("football match", offtopic_raw[s.lang]);
      } else {
        if (positive_index % 3 == 0) add("sport", offtopic_raw[s.lang]);
        add(en, raw);
      }
    }
    predictions.push_back(std::move(p));
  }
  return predictions;
}

std::string stub_stances(const std::vector<Sample>& samples, bool perfect) {
  std::ostringstream out;
  for (const Sample& s : samples) {
    nlohmann::ordered_json line;
    line["id"] = s.id;
    line["stance"] = perfect ? to_string(s.stance) : to_string(Stance::kAgainst);
    jsonl::write_line(out, line);
  }
  return out.str();
}

std::string samples_jsonl(const std::vector<Sample>& samples) {
  std::ostringstream out;
  corpus::write_samples(out, samples);
  return out.str();
}

SmokeFiles write_smoke_inputs(const std::filesystem::path& dir, bool perfect) {
  SmokeFiles files{dir / "samples.jsonl",  dir / "pool_full.cfg",   dir / "pool_llm.cfg",
                   dir / "pool_manual.cfg", dir / "toy.vec",        dir / "predictions.jsonl",
                   dir / "stances.jsonl",   dir / "gt_stances.jsonl"};
  std::filesystem::create_directories(dir);
  const auto samples = smoke_corpus();
  write_file(files.samples, samples_jsonl(samples));
  write_file(files.pool_full, pool_file_text(benchmark_pool(corpus::PoolKind::kFull)));
  write_file(files.pool_llm, pool_file_text(benchmark_pool(corpus::PoolKind::kLlm)));
  write_file(files.pool_manual, pool_file_text(benchmark_pool(corpus::PoolKind::kManual)));
  {
    std::ofstream out(files.embeddings, std::ios::binary);
    embeddings::write_vec(out, toy_embeddings());
  }
  {
    std::ofstream out(files.predictions, std::ios::binary);
    const auto predictions = stub_predictions(samples, perfect);
    mapping::write_predictions(out, predictions);
  }
  write_file(files.stances, stub_stances(samples, perfect));
  write_file(files.gt_stances, stub_stances(samples, true));
  return files;
}

}  // namespace tsebench::testing
