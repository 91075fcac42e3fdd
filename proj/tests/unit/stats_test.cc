#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>

#include "oracles.h"
#include "typogen/error.h"
#include "typogen/mining.h"
#include "typogen/stats.h"
#include "typogen/utf8.h"

using namespace typogen;

namespace {

std::vector<TypoPair> random_single_edit_pairs(oracle::Gen& gen, std::size_t n) {
  const std::u32string alphabet = U"abcdeqw";
  std::vector<TypoPair> pairs;
  while (pairs.size() < n) {
    auto s = gen.string(alphabet, 2, 9);
    auto edits = oracle::single_edits(s, alphabet);
    const auto& e = edits[gen.below(edits.size())];
    pairs.push_back({to_utf8(e.result), to_utf8(s)});
  }
  return pairs;
}

TypoStats with_cdf(const std::array<double, kPercentiles>& cdf) {
  TypoStats s = uniform_stats(U"ab");
  s.position_cdf = cdf;
  return s;
}

// Mass of (lo, hi] under the piecewise-linear CDF, computed by midpoint
// integration of the step density.
double mass_by_integration(const TypoStats& s, double lo, double hi) {
  const int steps = 200000;
  double total = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double x = lo + (hi - lo) * (k + 0.5) / steps;
    const auto bin = std::min<std::size_t>(static_cast<std::size_t>(x * 100), 99);
    const double density = (s.position_cdf[bin] - (bin ? s.position_cdf[bin - 1] : 0.0)) * 100;
    total += density * (hi - lo) / steps;
  }
  return total;
}

}  // namespace

TEST(ExtractStats, OneOfEachKindIsUniform) {
  std::vector<TypoPair> pairs{{"jacck", "jack"}, {"jsck", "jack"}, {"jak", "jack"}, {"jakc", "jack"}};
  auto s = extract_stats(pairs);
  for (double f : s.type_freq) EXPECT_DOUBLE_EQ(f, 0.25);
  EXPECT_EQ(s.sample_count, 4u);
}

TEST(ExtractStats, ConfusionRowFromSubstitutions) {
  std::vector<TypoPair> pairs{{"aueen", "queen"}, {"auit", "quit"}, {"aatar", "qatar"}, {"wuiz", "quiz"},
                              {"jak", "jack"}};
  auto s = extract_stats(pairs);
  ASSERT_EQ(s.confusion.size(), 1u);
  EXPECT_DOUBLE_EQ(s.confusion_probability(U'q', U'a'), 0.75);
  EXPECT_DOUBLE_EQ(s.confusion_probability(U'q', U'w'), 0.25);
}

TEST(ExtractStats, PositionBins) {
  EXPECT_EQ(position_bin(0, 4), 0u);
  EXPECT_EQ(position_bin(1, 3), 33u);
  EXPECT_EQ(position_bin(2, 3), 66u);
  EXPECT_EQ(position_bin(3, 3), 99u);  // appended character
  auto s = extract_stats(std::vector<TypoPair>{{"cats", "cat"}});
  EXPECT_DOUBLE_EQ(s.position_cdf[98], 0.0);
  EXPECT_DOUBLE_EQ(s.position_cdf[99], 1.0);
}

TEST(ExtractStats, Rejections) {
  EXPECT_THROW(extract_stats(std::vector<TypoPair>{}), Error);
  EXPECT_THROW(extract_stats(std::vector<TypoPair>{{"jcka", "jack"}}), Error);
  EXPECT_THROW(extract_stats(std::vector<TypoPair>{{"jack", "jack"}}), Error);
}

TEST(ExtractStats, PermutationInvariantAndValid) {
  oracle::Gen gen{31};
  auto pairs = random_single_edit_pairs(gen, 500);
  auto a = extract_stats(pairs);
  std::reverse(pairs.begin(), pairs.end());
  std::rotate(pairs.begin(), pairs.begin() + 123, pairs.end());
  auto b = extract_stats(pairs);
  EXPECT_EQ(count_pairs(pairs), count_pairs(pairs));
  EXPECT_EQ(a.type_freq, b.type_freq);
  EXPECT_EQ(a.confusion, b.confusion);
  EXPECT_EQ(a.position_cdf, b.position_cdf);
  EXPECT_NO_THROW(a.validate());
}

TEST(MergeStats, IdentityCommutativityAndShardEquivalence) {
  oracle::Gen gen{32};
  auto pairs = random_single_edit_pairs(gen, 1000);
  std::vector<TypoPair> first(pairs.begin(), pairs.begin() + 400), second(pairs.begin() + 400, pairs.end());
  const auto a = count_pairs(first), b = count_pairs(second);
  EXPECT_EQ(merge_stats(a, StatsCounts{}), a);
  EXPECT_EQ(merge_stats(a, b), merge_stats(b, a));
  const auto c = count_pairs(std::vector<TypoPair>(pairs.begin(), pairs.begin() + 100));
  EXPECT_EQ(merge_stats(merge_stats(a, b), c), merge_stats(a, merge_stats(b, c)));

  const auto merged = normalize(merge_stats(a, b));
  const auto single = extract_stats(pairs);
  EXPECT_EQ(merged.type_freq, single.type_freq);
  EXPECT_EQ(merged.confusion, single.confusion);
  EXPECT_EQ(merged.position_cdf, single.position_cdf);
}

TEST(MergeStats, VersionMismatch) {
  StatsCounts a, b;
  b.version = a.version + 1;
  EXPECT_THROW(merge_stats(a, b), Error);
}

TEST(PositionPmf, Examples) {
  std::array<double, kPercentiles> uniform{};
  for (std::size_t i = 0; i < kPercentiles; ++i) uniform[i] = (i + 1) / 100.0;
  auto pmf = position_pmf_for_length(with_cdf(uniform), 4);
  for (double p : pmf) EXPECT_NEAR(p, 0.25, 1e-12);

  EXPECT_EQ(position_pmf_for_length(with_cdf(uniform), 1), std::vector<double>{1.0});

  std::array<double, kPercentiles> last{};
  last[99] = 1.0;
  pmf = position_pmf_for_length(with_cdf(last), 10);
  EXPECT_NEAR(pmf[9], 1.0, 1e-12);
  EXPECT_NEAR(std::accumulate(pmf.begin(), pmf.begin() + 9, 0.0), 0.0, 1e-12);

  EXPECT_THROW(position_pmf_for_length(with_cdf(uniform), 0), Error);
}

TEST(PositionPmf, MatchesNumericIntegrationOfTheCdf) {
  oracle::Gen gen{33};
  for (int round = 0; round < 5; ++round) {
    std::array<double, kPercentiles> cdf{};
    double running = 0.0;
    for (auto& v : cdf) v = (running += gen.unit() * (gen.below(3) == 0 ? 0.0 : 1.0));
    for (auto& v : cdf) v /= running;
    const auto s = with_cdf(cdf);
    for (std::size_t length : {1u, 3u, 7u, 13u}) {
      const auto pmf = position_pmf_for_length(s, length);
      double sum = 0.0;
      for (std::size_t i = 0; i < length; ++i) {
        sum += pmf[i];
        EXPECT_NEAR(pmf[i], mass_by_integration(s, double(i) / length, double(i + 1) / length), 1e-4);
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(TypoStatsValidate, RejectsMalformed) {
  auto good = uniform_stats(U"abc");
  EXPECT_NO_THROW(good.validate());

  auto bad = good;
  bad.type_freq[0] += 0.01;
  EXPECT_THROW(bad.validate(), Error);

  bad = good;
  bad.confusion[U'a'][U'b'] += 1e-6;
  EXPECT_THROW(bad.validate(), Error);

  bad = good;
  bad.confusion[U'a'][U'a'] = 0.0;
  EXPECT_THROW(bad.validate(), Error);

  bad = good;
  std::swap(bad.position_cdf[10], bad.position_cdf[11]);
  EXPECT_THROW(bad.validate(), Error);

  bad = good;
  bad.position_cdf[99] = 0.99;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(StatsJson, RoundTrip) {
  oracle::Gen gen{34};
  auto s = extract_stats(random_single_edit_pairs(gen, 300));
  auto back = stats_from_json(to_json(s));
  EXPECT_EQ(back.type_freq, s.type_freq);
  EXPECT_EQ(back.confusion, s.confusion);
  EXPECT_EQ(back.position_cdf, s.position_cdf);
  EXPECT_EQ(back.sample_count, s.sample_count);

  auto counts = count_pairs(random_single_edit_pairs(gen, 50));
  EXPECT_EQ(counts_from_json(to_json(counts)), counts);
}

TEST(StatsJson, LoadRejectsInvalid) {
  auto j = to_json(uniform_stats(U"abc"));
  auto broken = j;
  broken["confusion"]["a"]["b"] = 0.9;
  EXPECT_THROW(stats_from_json(broken), Error);
  broken = j;
  broken["position_cdf"].erase(0);
  EXPECT_THROW(stats_from_json(broken), Error);
  broken = j;
  broken["version"] = 99;
  EXPECT_THROW(stats_from_json(broken), Error);
  broken = j;
  broken["confusion"]["ab"] = {{"c", 1.0}};
  EXPECT_THROW(stats_from_json(broken), Error);
}

TEST(BundledStats, ValidAndRightSkewed) {
  auto s = load_stats(std::string(TYPOGEN_SOURCE_DIR) + "/stats/english-default.json");
  EXPECT_GT(mean_normalized_position(s), 0.5);
  EXPECT_NEAR(s.type_probability(EditKind::Insertion), 0.3274, 1e-4);
  EXPECT_NEAR(s.type_probability(EditKind::Substitution), 0.3880, 1e-4);
  EXPECT_NEAR(s.type_probability(EditKind::Deletion), 0.1767, 1e-4);
  EXPECT_NEAR(s.type_probability(EditKind::Transposition), 0.1079, 1e-4);
  for (char32_t c = U'a'; c <= U'z'; ++c) EXPECT_TRUE(s.confusion.contains(c));
}

TEST(UniformStats, Shape) {
  auto s = uniform_stats(U"abcd");
  EXPECT_DOUBLE_EQ(s.confusion_probability(U'a', U'b'), 1.0 / 3);
  EXPECT_DOUBLE_EQ(s.confusion_probability(U'a', U'a'), 0.0);
  EXPECT_DOUBLE_EQ(mean_normalized_position(s), 0.5);
  EXPECT_THROW(uniform_stats(U"a"), Error);
}
