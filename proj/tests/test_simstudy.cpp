#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aging/simstudy.hpp"
#include "oracles.hpp"

using aging::SimFunctional;

TEST(SampleWeibull, ExponentialMean) {
  const std::size_t n = 10000;
  const auto t = aging::sample_weibull(1.0, 1.0, n, 42);
  ASSERT_EQ(t.size(), n);
  const double mean = std::accumulate(t.begin(), t.end(), 0.0) / n;
  // sd of Exponential(1) is 1.
  EXPECT_NEAR(mean, 1.0, 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST(SampleWeibull, Deterministic) {
  EXPECT_EQ(aging::sample_weibull(0.5, 1.5, 1000, 9), aging::sample_weibull(0.5, 1.5, 1000, 9));
  EXPECT_NE(aging::sample_weibull(0.5, 1.5, 1000, 9), aging::sample_weibull(0.5, 1.5, 1000, 10));
  EXPECT_THROW(aging::sample_weibull(0.0, 1.5, 10, 1), aging::Error);
  EXPECT_THROW(aging::sample_weibull(0.5, -1.0, 10, 1), aging::Error);
}

TEST(SampleWeibull, KolmogorovSmirnov) {
  const std::size_t n = 10000;
  auto t = aging::sample_weibull(0.5, 1.5, n, 20240611);
  std::sort(t.begin(), t.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = 1.0 - std::exp(-0.5 * std::pow(t[i], 1.5));
    d = std::max({d, (i + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  EXPECT_LT(d, 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST(Truth, MatchesNumericMeans) {
  const double alpha = 0.5;
  const double beta = 1.5;
  const auto pts = aging::quantile_grid(alpha, beta, 8);
  // Quantiles at probabilities 0.1 and 0.9.
  EXPECT_NEAR(1 - std::exp(-alpha * std::pow(pts.front(), beta)), 0.1, 1e-12);
  EXPECT_NEAR(1 - std::exp(-alpha * std::pow(pts.back(), beta)), 0.9, 1e-12);
  const auto truth = aging::weibull_truth(alpha, beta, pts);
  const auto r = [&](double u) { return alpha * beta * std::pow(u, beta - 1); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto m = oracle::numeric_means(r, 0.0, pts[i]);
    const auto at = [&](SimFunctional f) { return truth[static_cast<std::size_t>(f)][i]; };
    EXPECT_NEAR(at(SimFunctional::HR), m.r, 1e-10 * m.r);
    EXPECT_NEAR(at(SimFunctional::AFR), m.a, 1e-8 * m.a);
    EXPECT_NEAR(at(SimFunctional::GFR), m.g, 1e-8 * m.g);
    EXPECT_NEAR(at(SimFunctional::HFR), m.h, 1e-8 * m.h);
    EXPECT_NEAR(at(SimFunctional::AI), 1.5, 1e-8);
    EXPECT_NEAR(at(SimFunctional::GAI), std::exp(0.5), 1e-8);
    EXPECT_NEAR(at(SimFunctional::HAI), 2.0, 1e-8);
  }
}

TEST(Config, Parses) {
  const auto c = aging::parse_sim_config(
      "# study\nalpha = 0.5\nbeta=1.5\nsample_sizes=1000:3000:1000\nreplications=7\n"
      "base_seed=99\nbandwidth=auto\n");
  EXPECT_EQ(c.sample_sizes, (std::vector<std::size_t>{1000, 2000, 3000}));
  EXPECT_EQ(c.replications, 7u);
  EXPECT_EQ(c.base_seed, 99u);
  EXPECT_FALSE(c.bandwidth.has_value());
  const auto d = aging::parse_sim_config("sample_sizes=100,200\nbandwidth=0.3", 5);
  EXPECT_EQ(d.base_seed, 5u);
  EXPECT_EQ(d.sample_sizes, (std::vector<std::size_t>{100, 200}));
  EXPECT_DOUBLE_EQ(*d.bandwidth, 0.3);
}

TEST(Config, Rejects) {
  for (const char* text : {"alpha=0.5", "sample_sizes=100\ncolour=red", "sample_sizes=10",
                           "sample_sizes=100\nreplications=0", "sample_sizes=100\nalpha=-1",
                           "sample_sizes=100\nbeta=x", "sample_sizes=300:100:100", "garbage"}) {
    try {
      aging::parse_sim_config(text);
      ADD_FAILURE() << text;
    } catch (const aging::Error& e) {
      EXPECT_EQ(e.code(), aging::ErrorCode::InvalidConfig) << text;
    }
  }
}

TEST(Study, SmokeAndSerialisation) {
  auto cfg = aging::parse_sim_config("sample_sizes=100\nreplications=2\nbase_seed=3");
  const auto rep = aging::run_study(cfg);
  EXPECT_EQ(rep.cells.size(), aging::kSimFunctionals);
  ASSERT_EQ(rep.failures.size(), 1u);
  EXPECT_FALSE(rep.failures.front().flagged);
  const auto j = rep.to_json();
  EXPECT_EQ(j.at("seeds"), (nlohmann::json{3, 4}));
  EXPECT_EQ(j.at("bias_order").size(), aging::kSimFunctionals);
  const auto csv = rep.to_csv();
  EXPECT_EQ(csv.rfind("functional,n,bias,mse\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8);
  for (const auto& c : rep.cells) {
    EXPECT_TRUE(std::isfinite(c.bias));
    EXPECT_GE(c.mse, c.bias * c.bias * (1 - 1e-12));
  }
}

TEST(Study, ParallelMatchesSerialBytes) {
  const auto cfg = aging::parse_sim_config("sample_sizes=200,400\nreplications=6\nbase_seed=12");
  const auto a = aging::run_study(cfg).to_json().dump();
  const auto b = aging::run_study_serial(cfg).to_json().dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, aging::run_study(cfg).to_json().dump());
}

TEST(Study, HarmonicIntensityExcludedAtShapeTwo) {
  const auto rep = aging::run_study(aging::parse_sim_config("beta=2\nsample_sizes=100\nreplications=1"));
  EXPECT_FALSE(rep.cell(SimFunctional::HAI, 100).has_value());
  EXPECT_TRUE(rep.cell(SimFunctional::GAI, 100).has_value());
  EXPECT_FALSE(rep.notices.empty());
}

TEST(Study, ReplicationSeedsAreIndexed) {
  auto cfg = aging::parse_sim_config("sample_sizes=150\nreplications=3\nbase_seed=50");
  const auto eval = aging::quantile_grid(cfg.alpha, cfg.beta, cfg.eval_points);
  const auto truth = aging::weibull_truth(cfg.alpha, cfg.beta, eval);
  const auto r2 = aging::run_replication(cfg, 150, 2, eval, truth);
  cfg.base_seed = 51;
  const auto r1 = aging::run_replication(cfg, 150, 1, eval, truth);
  ASSERT_TRUE(r1.ok && r2.ok);
  EXPECT_EQ(r1.bias, r2.bias);
  EXPECT_EQ(r1.sq_error, r2.sq_error);
}
