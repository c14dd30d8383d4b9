#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tsebench/splits.hpp"

namespace tsebench::splits {
namespace {

using testing::make_sample;

std::vector<Sample> one_stratum(std::size_t n) {
  std::vector<Sample> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(make_sample("s" + std::to_string(i), Lang::kCa, "catalonia", Stance::kFavor));
  }
  return out;
}

std::vector<std::size_t> fold_sizes(const FoldAssignment& f) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(f.k), 0);
  for (const auto& [id, fold] : f.assignment) ++sizes[static_cast<std::size_t>(fold)];
  return sizes;
}

TEST(Fnv1a64, KnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(StratifiedKfold, EvenStratum) {
  auto f = stratified_kfold(one_stratum(10), 5, 13);
  EXPECT_EQ(fold_sizes(f), (std::vector<std::size_t>(5, 2)));
}

TEST(StratifiedKfold, UnevenStratumStartsAtHashedFold) {
  auto samples = one_stratum(7);
  auto f = stratified_kfold(samples, 5, 13);
  auto sizes = fold_sizes(f);
  const auto start = stratum_hash(corpus::stratum_of(samples[0])) % 5;
  std::vector<std::size_t> expected(5, 1);
  expected[start] = 2;
  expected[(start + 1) % 5] = 2;
  EXPECT_EQ(sizes, expected);
}

TEST(StratifiedKfold, Errors) {
  EXPECT_THROW(stratified_kfold(one_stratum(3), 1, 0), std::invalid_argument);
  EXPECT_THROW(stratified_kfold(one_stratum(3), 0, 0), std::invalid_argument);
  EXPECT_TRUE(stratified_kfold({}, 5, 0).assignment.empty());
}

std::vector<Sample> random_corpus(std::mt19937_64& rng, std::size_t n) {
  const char* targets[] = {"a", "b", "c"};
  std::vector<Sample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool negative = rng() % 5 == 0;
    out.push_back(make_sample("id" + std::to_string(i), kAllLangs[rng() % 6],
                              negative ? "unrelated" : targets[rng() % 3],
                              negative ? Stance::kNeutral : kAllStances[rng() % 3]));
  }
  return out;
}

TEST(StratifiedKfold, PartitionAndBalancePerStratum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto samples = random_corpus(rng, 50 + rng() % 400);
    const int k = 2 + static_cast<int>(rng() % 9);
    auto f = stratified_kfold(samples, k, rng());
    ASSERT_EQ(f.assignment.size(), samples.size());
    std::map<corpus::StratumKey, std::vector<std::size_t>> per;
    for (const Sample& s : samples) {
      const int fold = f.assignment.at(s.id);
      ASSERT_GE(fold, 0);
      ASSERT_LT(fold, k);
      auto& counts = per[corpus::stratum_of(s)];
      counts.resize(static_cast<std::size_t>(k));
      ++counts[static_cast<std::size_t>(fold)];
    }
    for (const auto& [key, counts] : per) {
      auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
      EXPECT_LE(*hi - *lo, 1u);
    }
  }
}

TEST(StratifiedKfold, DeterministicAndOrderOfOtherStrataIrrelevant) {
  std::mt19937_64 rng(8);
  auto samples = random_corpus(rng, 300);
  EXPECT_EQ(stratified_kfold(samples, 5, 42), stratified_kfold(samples, 5, 42));

  // Samples are grouped by stratum, keeping their relative order, so
  // interleaving strata differently gives the same assignment.
  auto grouped = samples;
  std::stable_sort(grouped.begin(), grouped.end(), [](const Sample& a, const Sample& b) {
    return corpus::stratum_of(a) < corpus::stratum_of(b);
  });
  EXPECT_EQ(stratified_kfold(grouped, 5, 42).assignment, stratified_kfold(samples, 5, 42).assignment);
}

TEST(StratifiedKfold, SeedChangesMembersNotSizes) {
  std::mt19937_64 rng(9);
  auto samples = random_corpus(rng, 300);
  auto a = stratified_kfold(samples, 5, 1);
  auto b = stratified_kfold(samples, 5, 2);
  EXPECT_NE(a.assignment, b.assignment);
  EXPECT_EQ(fold_sizes(a), fold_sizes(b));
}

TEST(FoldAssignment, JsonRoundTrip) {
  std::mt19937_64 rng(10);
  auto f = stratified_kfold(random_corpus(rng, 100), 4, 0xFFFFFFFFFFFFFFFFULL);
  EXPECT_EQ(from_json(nlohmann::json::parse(to_json(f).dump())), f);
  EXPECT_ANY_THROW(from_json(nlohmann::json::parse(R"({"k":2,"seed":1,"assignment":{"x":2}})")));
}

}  // namespace
}  // namespace tsebench::splits
