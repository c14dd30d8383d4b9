#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tsebench/config.hpp"
#include "tsebench/error.hpp"
#include "tsebench/kvfile.hpp"

namespace tsebench {
namespace {

EnvLookup fake_env(std::map<std::string, std::string> vars) {
  return [vars = std::move(vars)](const std::string& name) -> std::optional<std::string> {
    auto it = vars.find(name);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

TEST(KvFile, ParsesCommentsQuotesAndBlankLines) {
  std::istringstream in(
      "# run config\n"
      "\n"
      "tau = 0.5\n"
      "  samples=data/samples.jsonl  \n"
      "output_dir = \"out dir/\\\"x\\\"\"\n");
  auto entries = parse_kv(in, "run.cfg");
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].key, "tau");
  EXPECT_EQ(entries[0].value, "0.5");
  EXPECT_EQ(entries[0].line, 3u);
  EXPECT_EQ(entries[1].value, "data/samples.jsonl");
  EXPECT_EQ(entries[2].value, "out dir/\"x\"");
}

TEST(KvFile, ErrorsCiteTheLine) {
  std::istringstream no_eq("tau = 1\njunk\n");
  try {
    parse_kv(no_eq, "run.cfg");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("run.cfg:2:"), std::string::npos);
  }
  std::istringstream unterminated("a = \"open\n");
  EXPECT_THROW(parse_kv(unterminated, "run.cfg"), ValidationError);
  std::istringstream empty_key(" = 1\n");
  EXPECT_THROW(parse_kv(empty_key, "run.cfg"), ValidationError);
}

TEST(KvFile, QuoteRoundTrip) {
  for (std::string value : {"", "plain", "with \"quotes\"", "back\\slash", "tab\there"}) {
    std::istringstream in("k = " + quote_kv_value(value) + "\n");
    EXPECT_EQ(parse_kv(in, "x").at(0).value, value);
  }
}

TEST(Config, DefaultsWithoutFileOrEnv) {
  auto c = load_config(std::nullopt, fake_env({}));
  EXPECT_EQ(c.tau, 0.35);
  EXPECT_EQ(c.k, 5);
  EXPECT_EQ(c.seed, 13u);
  EXPECT_EQ(c.fold_agg, FoldAgg::kPool);
  EXPECT_EQ(c.unrelated_fraction, 0.17);
  EXPECT_EQ(c.unrelated_tolerance, 0.03);
  EXPECT_FALSE(c.strict_unrelated);
  EXPECT_NO_THROW(validate_ranges(c));
}

TEST(Config, FileThenEnvironment) {
  testing::TempDir dir;
  testing::write_file(dir / "run.cfg",
                      "tau = 0.5\nk = 10\nfold_agg = mean\nstrict_unrelated = true\n"
                      "samples = s.jsonl\n");
  auto c = load_config(dir / "run.cfg", fake_env({{"TSEBENCH_TAU", "0.6"},
                                                   {"TSEBENCH_POOL_LLM", "llm.cfg"}}));
  EXPECT_EQ(c.tau, 0.6);
  EXPECT_EQ(c.k, 10);
  EXPECT_EQ(c.fold_agg, FoldAgg::kMean);
  EXPECT_TRUE(c.strict_unrelated);
  EXPECT_EQ(c.samples_path, "s.jsonl");
  EXPECT_EQ(c.pool_llm_path, "llm.cfg");
}

TEST(Config, BadValuesAreValidationErrors) {
  testing::TempDir dir;
  testing::write_file(dir / "bad.cfg", "seed = 1\ntau = abc\n");
  try {
    load_config(dir / "bad.cfg", fake_env({}));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.cfg:2:"), std::string::npos) << e.what();
  }
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "colour", "blue"), ValidationError);
  EXPECT_THROW(apply_setting(c, "fold_agg", "median"), ValidationError);
  EXPECT_THROW(apply_setting(c, "strict_unrelated", "maybe"), ValidationError);
  EXPECT_THROW(apply_setting(c, "k", "5x"), ValidationError);
  EXPECT_THROW(load_config(std::nullopt, fake_env({{"TSEBENCH_K", "-"}})), ValidationError);
  EXPECT_THROW(load_config(dir / "missing.cfg", fake_env({})), IoError);
}

TEST(Config, RangeChecks) {
  RunConfig c;
  c.tau = 1.0;
  EXPECT_THROW(validate_ranges(c), ValidationError);
  c = RunConfig{};
  c.k = 1;
  EXPECT_THROW(validate_ranges(c), ValidationError);
  c = RunConfig{};
  c.unrelated_fraction = 0.0;
  EXPECT_THROW(validate_ranges(c), ValidationError);
}

TEST(Config, HashIgnoresOutputDirAndThreads) {
  RunConfig a;
  RunConfig b = a;
  b.output_dir = "elsewhere";
  b.threads = 8;
  EXPECT_EQ(a.hash(), b.hash());
  b.tau = 0.4;
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_EQ(a.hash().rfind("sha256:", 0), 0u);
  EXPECT_EQ(a.hash().size(), 7u + 64u);
}

}  // namespace
}  // namespace tsebench
