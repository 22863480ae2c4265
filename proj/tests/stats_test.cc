#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aligneval/error.h"
#include "aligneval/stats.h"

using namespace aligneval;

namespace {

ScoreMatrix matrix(const std::string& name,
                   const std::vector<std::tuple<std::string, std::string, double>>& cells) {
  ScoreMatrix m(name);
  for (const auto& [s, i, v] : cells) m.insert(s, i, v);
  return m;
}

}  // namespace

TEST(Pearson, HandComputed) {
  std::vector<double> xs = {1, 2, 3}, ys = {2, 2, 4};
  EXPECT_NEAR(pearson(xs, ys), std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(pearson(xs, ys), 0.866025, 1e-6);
}

TEST(Pearson, SelfAndSignFlip) {
  std::vector<double> xs = {0.3, -1.2, 5.0, 2.2};
  std::vector<double> neg = {-0.3, 1.2, -5.0, -2.2};
  EXPECT_EQ(pearson(xs, xs), 1.0);
  EXPECT_EQ(pearson(xs, neg), -1.0);
}

TEST(Pearson, ErrorsOnDegenerateInput) {
  std::vector<double> xs = {1, 2, 3}, flat = {2, 2, 2};
  EXPECT_THROW(pearson(xs, flat), DegenerateError);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
  EXPECT_THROW(pearson(xs, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Spearman, AverageRanksForTies) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 20, 30}),
            (std::vector<double>{1, 2.5, 2.5, 4}));
  EXPECT_EQ(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 4, 9}), 1.0);
}

TEST(Correlation, AffineAndMonotoneInvariance) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(20), ys(20), affine(20), mono(20);
    for (int i = 0; i < 20; ++i) {
      xs[i] = g(rng);
      ys[i] = xs[i] + g(rng);
      affine[i] = 3.5 * xs[i] - 2.0;
      mono[i] = std::exp(xs[i]);
    }
    EXPECT_NEAR(pearson(affine, ys), pearson(xs, ys), 1e-12);
    EXPECT_NEAR(spearman(mono, ys), spearman(xs, ys), 1e-12);
    EXPECT_NEAR(pearson(xs, xs), 1.0, 1e-12);
    EXPECT_NEAR(spearman(xs, ys), spearman(ys, xs), 1e-12);
  }
}

TEST(Correlate, SystemLevelUsesMeans) {
  auto a = matrix("a", {{"A", "d1", 0}, {"A", "d2", 2}, {"B", "d1", 2}, {"B", "d2", 2},
                        {"C", "d1", 1}, {"C", "d2", 5}});
  auto b = matrix("b", {{"A", "d1", 2}, {"A", "d2", 2}, {"B", "d1", 2}, {"B", "d2", 2},
                        {"C", "d1", 4}, {"C", "d2", 4}});
  auto rep = correlate(a, b, Level::System, Coefficient::Pearson);
  EXPECT_NEAR(rep.value, std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_EQ(rep.n, 3);
}

TEST(Correlate, SummaryLevelSkipsDegenerateInstances) {
  auto a = matrix("a", {{"A", "d1", 1}, {"B", "d1", 2}, {"C", "d1", 3},
                        {"A", "d2", 1}, {"B", "d2", 1}, {"C", "d2", 1}});
  auto b = matrix("b", {{"A", "d1", 1}, {"B", "d1", 2}, {"C", "d1", 4},
                        {"A", "d2", 3}, {"B", "d2", 2}, {"C", "d2", 1}});
  auto rep = correlate(a, b, Level::Summary, Coefficient::Spearman);
  EXPECT_EQ(rep.value, 1.0);
  EXPECT_EQ(rep.n, 1);
  EXPECT_EQ(rep.skipped, 1);

  auto pooled = correlate(a, b, Level::Summary, Coefficient::Pearson, SummaryMode::Pooled);
  EXPECT_EQ(pooled.n, 6);
}

TEST(Correlate, Errors) {
  auto a = matrix("a", {{"A", "d1", 1}, {"B", "d1", 1}});
  auto b = matrix("b", {{"A", "d1", 1}, {"B", "d1", 2}});
  EXPECT_THROW(correlate(a, b, Level::Summary, Coefficient::Pearson), DegenerateError);
  auto rep = correlate_report(a, b, Level::Summary, Coefficient::Pearson);
  EXPECT_FALSE(rep.defined);
  EXPECT_EQ(rep.skipped, 1);
  auto lonely = matrix("c", {{"A", "d1", 1}});
  EXPECT_THROW(correlate(a, lonely, Level::System, Coefficient::Pearson), ValidationError);
}

TEST(DeltaTable, AnchorsFirstThenSorted) {
  std::map<std::string, ScoreMatrix> ms;
  ms["rouge"] = matrix("rouge", {{"A", "d", 1}, {"B", "d", 2}, {"C", "d", 3}});
  ms["pyr"] = matrix("pyr", {{"A", "d", 1}, {"B", "d", 3}, {"C", "d", 2}});
  ms["zeta"] = matrix("zeta", {{"A", "d", 2}, {"B", "d", 4}, {"C", "d", 6}});
  ms["flat"] = matrix("flat", {{"A", "d", 1}, {"B", "d", 1}, {"C", "d", 1}});
  auto rows = delta_table(ms, "rouge", "pyr");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].metric, "rouge");
  EXPECT_EQ(rows[1].metric, "pyr");
  EXPECT_EQ(rows[2].metric, "flat");
  EXPECT_EQ(rows[3].metric, "zeta");
  EXPECT_EQ(*rows[0].corr_a, 1.0);
  EXPECT_FALSE(rows[0].delta);
  EXPECT_FALSE(rows[2].corr_a);
  EXPECT_FALSE(rows[2].delta);
  EXPECT_DOUBLE_EQ(*rows[3].delta, 1.0 - 0.5);
  EXPECT_THROW(delta_table(ms, "rouge", "missing"), ValidationError);
}
