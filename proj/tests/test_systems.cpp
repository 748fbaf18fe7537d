#include <gtest/gtest.h>

#include <cmath>

#include "aging/systems.hpp"
#include "oracles.hpp"
#include "random_models.hpp"

using aging::HazardModel;

TEST(Series, CompositeHazard) {
  const auto sys = aging::series({HazardModel::exponential(1), HazardModel::exponential(4)});
  for (double t : {0.1, 1.0, 7.0}) EXPECT_NEAR(sys.composite.hazard(t), 5.0, 1e-15);
  const double grid[] = {0.5, 2};
  for (const auto& row : aging::profile(sys.composite, grid).rows) {
    EXPECT_NEAR(row.afr, 5.0, 1e-12);
    EXPECT_NEAR(row.hfr, 5.0, 1e-12);
  }
  EXPECT_NEAR(aging::series({HazardModel::rayleigh(1, 1), HazardModel::rayleigh(0.5, 2)}).composite.hazard(1),
              4.5, 1e-15);
  const auto u = aging::series({HazardModel::uniform(0, 2), HazardModel::exponential(1)});
  EXPECT_EQ(u.composite.support_left(), 0.0);
  EXPECT_EQ(u.composite.support_right(), 2.0);
}

TEST(Series, Errors) {
  try {
    aging::series({HazardModel::exponential(1), HazardModel::pareto(1, 2)});
    FAIL();
  } catch (const aging::Error& e) {
    EXPECT_EQ(e.code(), aging::ErrorCode::MixedSupports);
  }
  EXPECT_THROW(aging::series({}), aging::Error);
}

TEST(Series, RayleighPlusExponentialBounds) {
  const auto sys = aging::series({HazardModel::rayleigh(1, 1), HazardModel::exponential(1)});
  const double grid[] = {0.5, 1, 2};
  const auto rep = aging::verify_series_bounds(sys, grid);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_FALSE(rep.harmonic_skipped());
  for (const auto& row : rep.rows) {
    EXPECT_TRUE(row.gai_upper && row.gfr_lower && row.hfr_lower && row.chain && row.superadditive &&
                row.mediant);
    // System means against brute-force quadrature of r_sys = 2 + t.
    const auto ref = oracle::numeric_means([](double u) { return 2 + u; }, 0, row.t);
    EXPECT_NEAR(row.a_sys, ref.a, 1e-10);
    EXPECT_NEAR(row.g_sys, ref.g, 1e-10);
    EXPECT_NEAR(row.h_sys, ref.h, 1e-10);
    EXPECT_NEAR(row.a_sum, row.a_sys, 1e-10);
  }
}

TEST(Series, IdenticalComponentsGiveEquality) {
  const auto c = HazardModel::weibull(0.7, 1.4);
  const auto sys = aging::series({c, c, c});
  const auto grid = testing_support::linear_grid(0.1, 3, 16);
  const auto rep = aging::verify_series_bounds(sys, grid);
  EXPECT_TRUE(rep.all_hold());
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(row.g_sys, row.g_dgm, 1e-9 * row.g_sys);
    EXPECT_NEAR(row.h_sys, row.h_dhm, 1e-9 * row.h_sys);
  }
}

TEST(Series, RandomSystemsHoldBounds) {
  testing_support::ModelSampler rng(2024);
  for (int i = 0; i < 25; ++i) {
    std::vector<HazardModel> parts;
    const std::size_t n = 2 + rng.index(4);
    for (std::size_t k = 0; k < n; ++k) parts.push_back(rng.zero_left());
    const auto sys = aging::series(parts);
    const auto grid = testing_support::linear_grid(0.05, testing_support::horizon(sys.composite), 16);
    const auto rep = aging::verify_series_bounds(sys, grid);
    EXPECT_TRUE(rep.all_hold()) << sys.composite.describe();
  }
}

TEST(Series, DivergentComponentSkipsHarmonicChecks) {
  const auto sys = aging::series({HazardModel::erlang_like(1), HazardModel::weibull(1, 2)});
  const double grid[] = {0.5, 1, 2};
  const auto rep = aging::verify_series_bounds(sys, grid);
  EXPECT_TRUE(rep.harmonic_skipped());
  EXPECT_TRUE(rep.all_hold());
}
