#include <gtest/gtest.h>

#include <cmath>

#include "latrec/rng.hpp"
#include "latrec/stats.hpp"

namespace latrec {
namespace {

TEST(ChatterjeeXi, ClosedFormsForMonotoneData) {
  // Monotone with distinct values: xi = 1 - 3/(n+1).
  EXPECT_DOUBLE_EQ(chatterjee_xi({1, 2, 3, 4}, {1, 2, 3, 4}), 0.4);
  std::vector<double> x, y;
  for (int i = 0; i < 100; ++i) {
    x.push_back(i);
    y.push_back(2.0 * i + 1.0);
  }
  EXPECT_NEAR(chatterjee_xi(x, y), 1.0 - 3.0 / 101.0, 1e-12);
  EXPECT_THROW(chatterjee_xi({1, 2}, {1, 2, 3}), InputError);
  EXPECT_THROW(chatterjee_xi({1}, {2}), InputError);
}

TEST(ChatterjeeXi, NullIsSmallAndQuadraticIsLarge) {
  Rng rng(17, {});
  const int n = 10000;
  std::vector<double> x(n), y(n), y2(n);
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = rng.normal();
    y[static_cast<std::size_t>(i)] = rng.normal();
    y2[static_cast<std::size_t>(i)] =
        x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] + 0.1 * rng.normal();
  }
  EXPECT_LT(std::abs(chatterjee_xi(x, y)), 0.05);
  const double cutoff = chatterjee_cutoff(n);
  EXPECT_GT(chatterjee_sym(x, y2), cutoff);
  // Identical columns are maximally dependent.
  EXPECT_GT(chatterjee_sym(x, x), cutoff);
}

TEST(ChatterjeeCutoff, MatchesNullQuantileScale) {
  // Null sd is about sqrt(2/5n); the 5% cutoff of the symmetrized max should
  // land within a few sd of zero, positive.
  const double cutoff = chatterjee_cutoff(10000);
  EXPECT_GT(cutoff, 0.0);
  EXPECT_LT(cutoff, 5.0 * std::sqrt(2.0 / (5.0 * 10000)));
  // Deterministic for a fixed seed.
  EXPECT_DOUBLE_EQ(cutoff, chatterjee_cutoff(10000));
}

TEST(ChatterjeeCutoff, RejectsAtNominalLevelUnderTheNull) {
  const int n = 500;
  const double cutoff = chatterjee_cutoff(n);
  Rng rng(23, {});
  int rejections = 0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = rng.normal();
      y[static_cast<std::size_t>(i)] = rng.normal();
    }
    if (chatterjee_sym(x, y) > cutoff) ++rejections;
  }
  const double rate = static_cast<double>(rejections) / trials;
  EXPECT_LT(rate, 0.10);
  EXPECT_GT(rate, 0.005);
}

TEST(UdgFromSamples, DependenceAndDegeneracy) {
  Rng rng(29, {});
  const int n = 3000;
  SampleMatrix data;
  data.cols.resize(4);
  for (int i = 0; i < n; ++i) {
    const double a = rng.normal();
    data.cols[0].push_back(a);
    data.cols[1].push_back(a * a + 0.1 * rng.normal());  // dependent on 0
    data.cols[2].push_back(rng.normal());                // independent
    data.cols[3].push_back(7.0);                         // degenerate
  }
  const auto res = udg_from_samples(data, chatterjee_cutoff(n));
  EXPECT_TRUE(res.udg.has_edge(0, 1));
  EXPECT_FALSE(res.udg.has_edge(0, 2));
  EXPECT_FALSE(res.udg.has_edge(3, 0));
  EXPECT_FALSE(res.udg.has_edge(3, 1));
  EXPECT_EQ(res.degenerate_columns, (std::vector<int>{3}));
  EXPECT_THROW(udg_from_samples(SampleMatrix{{{1.0, 2.0}}}, 0.1), InputError);
}

}  // namespace
}  // namespace latrec
